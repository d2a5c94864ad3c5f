#include "walklab/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "walklab/rng.hpp"

namespace walklab {

void FiniteGroup::finish() {
    order_ = static_cast<int>(labels_.size());
    if (order_ <= 0) throw std::invalid_argument("group must be non-empty");
    if (mul_.size() != static_cast<std::size_t>(order_) * order_)
        throw std::invalid_argument("mul table has wrong size");
    for (int g = 0; g < order_; ++g)
        if (mul(0, g) != g || mul(g, 0) != g)
            throw std::invalid_argument("element 0 is not a two-sided identity");
    inv_.assign(order_, -1);
    for (int g = 0; g < order_; ++g) {
        for (int h = 0; h < order_; ++h) {
            if (mul(g, h) == 0 && mul(h, g) == 0) {
                inv_[g] = h;
                break;
            }
        }
        if (inv_[g] < 0) throw std::invalid_argument("element without two-sided inverse");
    }
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic(n) needs n >= 1");
    FiniteGroup g;
    g.tag_ = "cyclic(" + std::to_string(n) + ")";
    g.spec_ = {{"family", "cyclic"}, {"n", n}};
    g.labels_.resize(n);
    g.mul_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        g.labels_[i] = std::to_string(i);
        for (int j = 0; j < n; ++j) g.mul_[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
    }
    g.finish();
    return g;
}

// Elements are s^j r^i, j in {0,1}, i in {0..n-1}, index j*n + i,
// with relations r^n = s^2 = 1 and s r s = r^{-1}.
FiniteGroup FiniteGroup::dihedral(int n) {
    if (n < 3) throw std::invalid_argument("dihedral(n) needs n >= 3");
    int order = 2 * n;
    FiniteGroup g;
    g.tag_ = "dihedral(" + std::to_string(n) + ")";
    g.spec_ = {{"family", "dihedral"}, {"n", n}};
    g.labels_.resize(order);
    g.mul_.resize(static_cast<std::size_t>(order) * order);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < n; ++i)
            g.labels_[j * n + i] = (j ? "sr" : "r") + std::to_string(i);
    auto idx = [n](int j, int i) { return j * n + ((i % n) + n) % n; };
    for (int j1 = 0; j1 < 2; ++j1)
        for (int i1 = 0; i1 < n; ++i1)
            for (int j2 = 0; j2 < 2; ++j2)
                for (int i2 = 0; i2 < n; ++i2) {
                    // (s^j1 r^i1)(s^j2 r^i2) = s^(j1^j2) r^(i2 + i1 or i2 - i1)
                    int i = j2 ? i2 - i1 : i2 + i1;
                    g.mul_[static_cast<std::size_t>(idx(j1, i1)) * order + idx(j2, i2)] =
                        idx(j1 ^ j2, i);
                }
    g.finish();
    return g;
}

namespace {

std::vector<std::vector<int>> permutations_lex(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return all;
}

} // namespace

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("symmetric(n) supports 1 <= n <= 6");
    auto perms = permutations_lex(n);
    int order = static_cast<int>(perms.size());
    // rank of a permutation = position in lexicographic one-line order
    auto rank = [&](const std::vector<int>& p) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
    };
    FiniteGroup g;
    g.tag_ = "symmetric(" + std::to_string(n) + ")";
    g.spec_ = {{"family", "symmetric"}, {"n", n}};
    g.labels_.resize(order);
    g.mul_.resize(static_cast<std::size_t>(order) * order);
    for (int a = 0; a < order; ++a) {
        std::string lab;
        for (int x : perms[a]) lab += std::to_string(x + 1);
        g.labels_[a] = lab;
        for (int b = 0; b < order; ++b) {
            std::vector<int> c(n);  // composition (p_a . p_b)(x) = p_a(p_b(x))
            for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
            g.mul_[static_cast<std::size_t>(a) * order + b] = rank(c);
        }
    }
    g.finish();
    return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
    int na = a.order(), nb = b.order(), order = na * nb;
    FiniteGroup g;
    g.tag_ = "product(" + a.family_tag() + "," + b.family_tag() + ")";
    g.spec_ = {{"family", "product"}, {"a", a.family_spec()}, {"b", b.family_spec()}};
    g.labels_.resize(order);
    g.mul_.resize(static_cast<std::size_t>(order) * order);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            g.labels_[i * nb + j] = "(" + a.label(i) + "," + b.label(j) + ")";
    for (int i1 = 0; i1 < na; ++i1)
        for (int j1 = 0; j1 < nb; ++j1)
            for (int i2 = 0; i2 < na; ++i2)
                for (int j2 = 0; j2 < nb; ++j2)
                    g.mul_[static_cast<std::size_t>(i1 * nb + j1) * order + (i2 * nb + j2)] =
                        a.mul(i1, i2) * nb + b.mul(j1, j2);
    g.finish();
    return g;
}

FiniteGroup FiniteGroup::custom(std::vector<int> mul, std::vector<std::string> labels,
                                std::string tag) {
    FiniteGroup g;
    g.tag_ = std::move(tag);
    g.spec_ = {{"family", "custom"}};
    g.mul_ = std::move(mul);
    g.labels_ = std::move(labels);
    g.finish();
    return g;
}

FiniteGroup construct_group(const nlohmann::json& spec) {
    const std::string family = spec.at("family").get<std::string>();
    if (family == "cyclic") return FiniteGroup::cyclic(spec.at("n").get<int>());
    if (family == "dihedral") return FiniteGroup::dihedral(spec.at("n").get<int>());
    if (family == "symmetric") return FiniteGroup::symmetric(spec.at("n").get<int>());
    if (family == "product")
        return FiniteGroup::product(construct_group(spec.at("a")), construct_group(spec.at("b")));
    if (family == "custom") return group_from_json(spec);
    throw std::invalid_argument("unsupported group family: " + family);
}

ConjugacyPartition conjugacy_classes(const FiniteGroup& g) {
    const int n = g.order();
    ConjugacyPartition part;
    part.class_of.assign(n, -1);
    for (int x = 0; x < n; ++x) {
        if (part.class_of[x] >= 0) continue;
        std::vector<int> cls;
        for (int h = 0; h < n; ++h) {
            int y = g.mul(g.mul(h, x), g.inv(h));
            if (part.class_of[y] == -1) {
                part.class_of[y] = -2;  // seen in this orbit
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        for (int y : cls) part.class_of[y] = static_cast<int>(part.classes.size());
        part.classes.push_back(std::move(cls));
    }
    std::stable_sort(part.classes.begin(), part.classes.end(),
                     [](const auto& a, const auto& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a.front() < b.front();
                     });
    for (std::size_t c = 0; c < part.classes.size(); ++c)
        for (int y : part.classes[c]) part.class_of[y] = static_cast<int>(c);
    return part;
}

AxiomReport verify_group_axioms(const FiniteGroup& g, std::uint64_t seed) {
    AxiomReport rep;
    const int n = g.order();
    auto fail = [&rep](std::string msg) {
        rep.valid = false;
        rep.violation = std::move(msg);
        return rep;
    };
    for (int x = 0; x < n; ++x) {
        if (g.mul(0, x) != x || g.mul(x, 0) != x)
            return fail("identity fails at element " + std::to_string(x));
        if (g.mul(x, g.inv(x)) != 0 || g.mul(g.inv(x), x) != 0)
            return fail("inverse fails at element " + std::to_string(x));
    }
    // Latin square: each row and column is a permutation.
    std::vector<char> seen(n);
    for (int x = 0; x < n; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int y = 0; y < n; ++y) {
            int z = g.mul(x, y);
            if (z < 0 || z >= n || seen[z])
                return fail("row " + std::to_string(x) + " is not a permutation");
            seen[z] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (int y = 0; y < n; ++y) {
            int z = g.mul(y, x);
            if (z < 0 || z >= n || seen[z])
                return fail("column " + std::to_string(x) + " is not a permutation");
            seen[z] = 1;
        }
    }
    auto check_triple = [&](int a, int b, int c) {
        return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c));
    };
    if (n <= 200) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!check_triple(a, b, c))
                        return fail("associativity fails at (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");
    } else {
        rep.exhaustive = false;
        Philox rng(seed, /*stream=*/0x61786d73u);
        for (int i = 0; i < 10000; ++i) {
            int a = static_cast<int>(rng.next_index(n));
            int b = static_cast<int>(rng.next_index(n));
            int c = static_cast<int>(rng.next_index(n));
            if (!check_triple(a, b, c))
                return fail("associativity fails at (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
        }
    }
    return rep;
}

nlohmann::json group_to_json(const FiniteGroup& g) {
    nlohmann::json j;
    j["order"] = g.order();
    j["family_tag"] = g.family_tag();
    std::vector<int> mul;
    mul.reserve(static_cast<std::size_t>(g.order()) * g.order());
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) mul.push_back(g.mul(a, b));
    j["mul"] = mul;
    j["labels"] = g.labels();
    return j;
}

namespace {

// "product(cyclic(2),dihedral(3))" -> structured spec; {"family":"custom"} if unparseable.
nlohmann::json parse_family_tag(const std::string& tag) {
    auto open = tag.find('(');
    if (open == std::string::npos || tag.back() != ')') return {{"family", "custom"}};
    std::string name = tag.substr(0, open);
    std::string args = tag.substr(open + 1, tag.size() - open - 2);
    if (name == "cyclic" || name == "dihedral" || name == "symmetric") {
        try {
            return {{"family", name}, {"n", std::stoi(args)}};
        } catch (...) {
            return {{"family", "custom"}};
        }
    }
    if (name == "product") {
        int depth = 0;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == '(') ++depth;
            else if (args[i] == ')') --depth;
            else if (args[i] == ',' && depth == 0) {
                auto a = parse_family_tag(args.substr(0, i));
                auto b = parse_family_tag(args.substr(i + 1));
                if (a.at("family") == "custom" || b.at("family") == "custom")
                    return {{"family", "custom"}};
                return {{"family", "product"}, {"a", a}, {"b", b}};
            }
        }
    }
    return {{"family", "custom"}};
}

} // namespace

FiniteGroup group_from_json(const nlohmann::json& j) {
    auto mul = j.at("mul").get<std::vector<int>>();
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto tag = j.value("family_tag", std::string("custom"));
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(labels.size()))
        throw std::invalid_argument("group json: order does not match labels");
    auto spec = parse_family_tag(tag);
    if (spec.at("family") != "custom") {
        // tag names a supported family: rebuild through the constructor so
        // irrep machinery stays available, but require identical tables
        FiniteGroup rebuilt = construct_group(spec);
        bool same = rebuilt.order() == static_cast<int>(labels.size());
        if (same)
            for (int a = 0; same && a < rebuilt.order(); ++a)
                for (int b = 0; same && b < rebuilt.order(); ++b)
                    same = rebuilt.mul(a, b) ==
                           mul[static_cast<std::size_t>(a) * rebuilt.order() + b];
        if (same) return rebuilt;
    }
    return FiniteGroup::custom(std::move(mul), std::move(labels), std::move(tag));
}

} // namespace walklab
