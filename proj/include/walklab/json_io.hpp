#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace walklab {

/// Deterministic JSON serialization with floating-point values at 17
/// significant digits (doubles round-trip exactly). Object keys come out
/// sorted because nlohmann::json already stores them ordered.
inline void dump_json_17(const nlohmann::json& j, std::string& out, int indent, int depth) {
    auto pad = [&](int d) { out.append(static_cast<std::size_t>(d) * indent, ' '); };
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                pad(depth + 1);
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                dump_json_17(it.value(), out, indent, depth + 1);
            }
            out += "\n";
            pad(depth);
            out += "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                pad(depth + 1);
                dump_json_17(v, out, indent, depth + 1);
            }
            out += "\n";
            pad(depth);
            out += "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

inline std::string dump_json_17(const nlohmann::json& j, int indent = 2) {
    std::string out;
    dump_json_17(j, out, indent, 0);
    out += "\n";
    return out;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string digest_hex(const nlohmann::json& j) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(dump_json_17(j, 0))));
    return buf;
}

} // namespace walklab
