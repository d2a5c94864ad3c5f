#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "walklab/claims.hpp"
#include "walklab/json_io.hpp"
#include "walklab/walk.hpp"

namespace {

using nlohmann::json;
using namespace walklab;

// accepts a path or, when the argument starts with '{', inline JSON
json load_json_file(const std::string& path_or_json) {
    if (!path_or_json.empty() && path_or_json.front() == '{') {
        try {
            return json::parse(path_or_json);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("inline config: ") + e.what());
        }
    }
    std::ifstream in(path_or_json);
    if (!in) throw std::invalid_argument("cannot open " + path_or_json);
    json j;
    in >> j;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

LabeledExpander build_graph(const FiniteGroup& g, const json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "cayley")
        return build_cayley(g, spec.at("generators").get<std::vector<int>>(),
                            spec.value("allow_self_loops", false));
    if (kind == "complete_power") return build_complete_power(g, spec.at("r").get<int>());
    if (kind == "file") return graph_from_json(load_json_file(spec.at("path").get<std::string>()));
    throw std::invalid_argument("unknown graph kind: " + kind);
}

std::vector<cdouble> parse_outer_function(const FiniteGroup& g, const json& spec) {
    std::vector<cdouble> h(g.order(), cdouble(0, 0));
    if (spec.contains("kind") && spec.at("kind") == "indicator") {
        h[spec.at("target").get<int>()] = 1.0;
        return h;
    }
    auto re = spec.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (spec.contains("im")) im = spec.at("im").get<std::vector<double>>();
    if (re.size() != static_cast<std::size_t>(g.order()))
        throw std::invalid_argument("outer function must have |G| values");
    for (std::size_t i = 0; i < re.size(); ++i) h[i] = cdouble(re[i], im[i]);
    return h;
}

struct BiasRecord {
    std::string function_tag;
    bool exact = true;
    cdouble value;
    double stderr_est = 0;
    bool has_stderr = false;
};

int cmd_inspect(const std::string& target, const json& spec, const std::string& out_dir) {
    if (target == "group") {
        auto g = construct_group(spec);
        auto part = conjugacy_classes(g);
        auto axioms = verify_group_axioms(g);
        std::cout << "group " << g.family_tag() << ": order " << g.order() << ", "
                  << part.classes.size() << " conjugacy classes (sizes";
        for (const auto& c : part.classes) std::cout << " " << c.size();
        std::cout << ")\n";
        std::cout << "axioms: " << (axioms.valid ? "valid" : axioms.violation)
                  << (axioms.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
        if (!out_dir.empty()) write_file(out_dir + "/group.json", dump_json_17(group_to_json(g)));
        return axioms.valid ? 0 : 1;
    }
    if (target == "reps") {
        auto g = construct_group(spec);
        auto table = character_table(g);
        std::cout << "irreps of " << g.family_tag() << ": dims";
        for (int d : table.dims) std::cout << " " << d;
        std::cout << "\n";
        try {
            std::cout << "quasirandomness degree D = " << quasirandomness_degree(table) << "\n";
        } catch (const std::exception&) {
            std::cout << "quasirandomness degree undefined (trivial group)\n";
        }
        if (!out_dir.empty())
            write_file(out_dir + "/character_table.csv", character_table_csv(table));
        return 0;
    }
    if (target == "graph") {
        auto g = construct_group(spec.at("group"));
        auto x = build_graph(g, spec.at("graph"));
        std::cout << "graph " << x.tag() << ": N=" << x.size() << ", lambda=" << x.lambda()
                  << "\n";
        auto unbiased = check_unbiased(x, g);
        std::cout << "unbiased labeling: " << (unbiased.pass ? "PASS" : "FAIL " + unbiased.reason)
                  << "\n";
        try {
            auto irreps = irreps_of(g);
            auto pc = check_pseudo_cayley(x, g, irreps);
            std::cout << "pseudo-Cayley: " << (pc.pass ? "PASS" : "FAIL " + pc.failure) << "\n";
            if (pc.pass) {
                std::cout << "per-irrep eigenvalues:";
                for (std::size_t r = 0; r < irreps.size(); ++r)
                    std::cout << " " << irreps[r].name << "=" << pc.lambda_by_irrep[r];
                std::cout << "\n";
            }
        } catch (const std::exception& e) {
            std::cout << "pseudo-Cayley: unavailable (" << e.what() << ")\n";
        }
        if (!out_dir.empty()) {
            write_file(out_dir + "/graph.json", dump_json_17(graph_to_json(x)));
            write_file(out_dir + "/spectrum.csv", spectrum_csv(x));
        }
        return 0;
    }
    std::cerr << "unknown inspect target: " << target << " (use group|graph|reps)\n";
    return 2;
}

int cmd_bias(const json& config, const std::string& out_dir, bool exact_only, long samples_flag) {
    auto g = construct_group(config.at("group"));
    auto x = build_graph(g, config.at("graph"));
    const int n = config.at("n").get<int>();
    const std::uint64_t seed = config.value("seed", 1ull);
    long samples = samples_flag > 0 ? samples_flag : config.value("samples", 0l);
    if (exact_only) samples = 0;

    std::vector<BiasRecord> records;
    int findex = -1;
    for (const auto& fspec : config.at("functions")) {
        ++findex;
        const std::string kind = fspec.at("kind").get<std::string>();
        if (kind == "threshold" || kind == "symmetric_table") {
            SymmetricFunction f =
                kind == "threshold"
                    ? make_threshold(g, fspec.at("A").get<std::vector<int>>(),
                                     fspec.at("t").get<int>(), n)
                    : symmetric_from_table(
                          g, n,
                          [&] {
                              auto re = fspec.at("values").get<std::vector<double>>();
                              return std::vector<cdouble>(re.begin(), re.end());
                          }());
            bool feasible = n <= 1000;  // histogram DP ceiling
            if (!feasible && samples <= 0)
                throw std::invalid_argument(
                    "exact path infeasible for " + f.tag + " and sampling not requested");
            if (feasible) records.push_back({f.tag, true, bias_histogram(x, g, f), 0, false});
            if (samples > 0) {
                std::vector<double> p(f.q, 0.0);
                for (int v = 0; v < x.size(); ++v) p[f.letter_of[x.label(v)]] += 1.0 / x.size();
                auto sampled = sample_bias(
                    x,
                    [&](const std::vector<int>& labels) { return f.eval_elements(labels); }, n,
                    samples, seed, symmetric_mean(f, p));
                records.push_back({f.tag, false, sampled.estimate, sampled.stderr_est, true});
            }
            if (fspec.value("level_csv", false) && !out_dir.empty()) {
                auto tf = tensor_fourier(g, irreps_of(g), raw_from_symmetric(g, f));
                write_file(out_dir + "/levels_" + std::to_string(findex) + ".csv",
                           level_coefficients_csv(irreps_of(g), tf));
            }
        } else if (kind == "word" || kind == "group_product") {
            WordFunction f =
                kind == "word"
                    ? make_word_function(g, fspec.at("indices").get<std::vector<int>>(),
                                         fspec.at("exponents").get<std::vector<int>>(),
                                         parse_outer_function(g, fspec.at("h")), n)
                    : make_group_product(g, fspec.at("k").get<int>(),
                                         fspec.at("target").get<int>(), n);
            records.push_back({f.tag, true, bias_word(x, g, f), 0, false});
            if (fspec.value("level_csv", false) && !out_dir.empty()) {
                auto tf = tensor_fourier(g, irreps_of(g), raw_from_word(g, f));
                write_file(out_dir + "/levels_" + std::to_string(findex) + ".csv",
                           level_coefficients_csv(irreps_of(g), tf));
            }
        } else {
            throw std::invalid_argument("unknown function kind: " + kind);
        }
    }

    json out_records = json::array();
    std::string csv = "function_tag,n,mode,value_re,value_im,stderr\n";
    char buf[256];
    for (const auto& rec : records) {
        json r = {{"graph_tag", x.tag()},
                  {"function_tag", rec.function_tag},
                  {"n", n},
                  {"exact", rec.exact},
                  {"value_re", rec.value.real()},
                  {"value_im", rec.value.imag()}};
        if (!rec.exact) {
            r["stderr"] = rec.stderr_est;
            r["seed"] = seed;
        }
        out_records.push_back(std::move(r));
        std::snprintf(buf, sizeof buf, "%s,%d,%s,%.17g,%.17g,%s\n", rec.function_tag.c_str(), n,
                      rec.exact ? "exact" : "sampled", rec.value.real(), rec.value.imag(),
                      rec.has_stderr ? std::to_string(rec.stderr_est).c_str() : "");
        csv += buf;
        std::cout << rec.function_tag << " n=" << n << " "
                  << (rec.exact ? "exact" : "sampled") << " bias = " << rec.value.real();
        if (std::abs(rec.value.imag()) > 0) std::cout << " + " << rec.value.imag() << "i";
        if (rec.has_stderr) std::cout << " (stderr " << rec.stderr_est << ")";
        std::cout << "\n";
    }
    json payload = {{"config_digest", digest_hex(config)}, {"records", out_records}};
    if (!out_dir.empty()) {
        write_file(out_dir + "/bias.json", dump_json_17(payload));
        write_file(out_dir + "/results.csv", csv);
    }
    return 0;
}

int cmd_verify(const json& config, const std::string& out_dir) {
    auto cfg = suite_config_from_json(config);
    auto start = std::chrono::system_clock::now();
    auto report = run_suite(cfg);
    std::cout << report_table(report);
    if (!out_dir.empty()) {
        write_file(out_dir + "/report.json", dump_json_17(report_to_json(report)));
        auto meta = report_metadata(report);
        meta["generated_at_unix"] =
            std::chrono::duration_cast<std::chrono::seconds>(start.time_since_epoch()).count();
        write_file(out_dir + "/report_meta.json", dump_json_17(meta));
    }
    return report.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"walklab: expander-walk bias computations and bound verification over finite groups"};
    app.require_subcommand(1);

    std::string spec_str, config_path, out_dir, claims_list, target, sweep_claim = "T16";
    std::uint64_t seed = 0;
    bool have_seed = false, exact_only = false, quick = false;
    long samples = 0;

    auto* inspect = app.add_subcommand("inspect", "summarize a group, graph or irrep set");
    inspect->add_option("target", target, "group|graph|reps")->required();
    inspect->add_option("--spec", spec_str, "inline JSON spec");
    inspect->add_option("--config", config_path, "JSON spec file");
    inspect->add_option("--out", out_dir, "export directory");

    auto* bias = app.add_subcommand("bias", "exact (and optionally sampled) walk biases");
    bias->add_option("--config", config_path, "experiment config")->required();
    bias->add_option("--out", out_dir, "output directory");
    bias->add_option("--samples", samples, "Monte Carlo sample count");
    bias->add_flag("--exact-only", exact_only, "refuse sampled estimates");

    auto* verify = app.add_subcommand("verify", "run the claim-verification suite");
    verify->add_option("--config", config_path, "suite config");
    verify->add_option("--claims", claims_list, "comma-separated claim ids");
    verify->add_option("--seed", seed, "suite seed")->capture_default_str();
    verify->add_flag("--quick", quick, "trimmed instance grids");
    verify->add_option("--out", out_dir, "output directory");

    auto* sweep = app.add_subcommand("sweep", "bias/bound series across an expansion grid");
    sweep->add_option("--claim", sweep_claim, "T6|T15|T16");
    sweep->add_option("--config", config_path, "sweep config {group, r_min, r_max, n}");
    sweep->add_option("--seed", seed, "seed");
    sweep->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);
    have_seed = verify->count("--seed") > 0 || sweep->count("--seed") > 0;

    try {
        if (app.got_subcommand(inspect)) {
            json spec;
            if (!spec_str.empty()) spec = json::parse(spec_str);
            else if (!config_path.empty()) spec = load_json_file(config_path);
            else throw std::invalid_argument("inspect needs --spec or --config");
            return cmd_inspect(target, spec, out_dir);
        }
        if (app.got_subcommand(bias))
            return cmd_bias(load_json_file(config_path), out_dir, exact_only, samples);
        if (app.got_subcommand(verify)) {
            json cfg = config_path.empty() ? json::object() : load_json_file(config_path);
            if (!claims_list.empty()) {
                std::vector<std::string> ids;
                std::stringstream ss(claims_list);
                std::string id;
                while (std::getline(ss, id, ',')) ids.push_back(id);
                cfg["claims"] = ids;
            }
            if (have_seed) cfg["seed"] = seed;
            if (quick) cfg["quick"] = true;
            return cmd_verify(cfg, out_dir);
        }
        if (app.got_subcommand(sweep)) {
            json cfg = config_path.empty()
                           ? json{{"group", {{"family", "cyclic"}, {"n", 2}}},
                                  {"r_min", 2}, {"r_max", 4}, {"n", 16}}
                           : load_json_file(config_path);
            auto csv = sweep_lambda_csv(sweep_claim, cfg.at("group"), cfg.value("r_min", 2),
                                        cfg.value("r_max", 4), cfg.value("n", 16),
                                        have_seed ? seed : cfg.value("seed", 1ull));
            std::cout << csv;
            if (!out_dir.empty()) write_file(out_dir + "/sweep.csv", csv);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
