#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "walklab/functions.hpp"
#include "walklab/rng.hpp"

using namespace walklab;

namespace {

std::vector<int> tuple_of(long idx, int n, int q) {
    std::vector<int> x(n);
    for (int i = n - 1; i >= 0; --i) {
        x[i] = static_cast<int>(idx % q);
        idx /= q;
    }
    return x;
}

// rebuild the level-k table from symmetric components: sum over position
// subsets of the component evaluated on the selected letters
RawFunction raw_level_from_components(const FiniteGroup& g, const SymmetricFunction& f,
                                      const SymmetricLevels& lv, int k) {
    RawFunction out;
    out.n = f.n;
    out.group_order = g.order();
    long size = 1;
    for (int i = 0; i < f.n; ++i) size *= g.order();
    out.table.assign(size, cdouble(0, 0));
    HistogramIndexer idx(k, f.q);
    SubsetIterator subsets(f.n, k);
    std::vector<int> sel;
    bool more = subsets.first(sel);
    while (more) {
        for (long xi = 0; xi < size; ++xi) {
            auto x = tuple_of(xi, f.n, g.order());
            std::vector<int> h(f.q, 0);
            for (int pos : sel) ++h[f.letter_of[x[pos - 1]]];
            out.table[xi] += lv.component[k][idx.rank(h)];
        }
        more = subsets.next(sel);
    }
    return out;
}

} // namespace

TEST_CASE("threshold basics") {
    auto g = FiniteGroup::cyclic(2);
    auto always = make_threshold(g, {1}, 0, 3);
    auto never = make_threshold(g, {1}, 4, 3);
    HistogramIndexer idx(3, 2);
    std::vector<int> h;
    idx.first(h);
    do {
        CHECK(always.eval_hist(h) == cdouble(1, 0));
        CHECK(never.eval_hist(h) == cdouble(0, 0));
    } while (idx.next(h));

    auto maj = make_threshold(g, {1}, 2, 3);
    CHECK(std::abs(symmetric_l2_norm(maj) - std::sqrt(0.5)) < 1e-12);
    CHECK_THROWS_AS(make_threshold(g, {0, 1}, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_threshold(g, {}, 1, 3), std::invalid_argument);
}

TEST_CASE("norms and means of symmetric functions") {
    auto g = FiniteGroup::symmetric(3);
    HistogramIndexer idx(2, 6);
    std::vector<cdouble> ones(idx.size(), 1.0);
    auto f = symmetric_from_table(g, 2, ones, "const");
    CHECK(std::abs(symmetric_l2_norm(f) - 1.0) < 1e-12);
    CHECK(std::abs(symmetric_mean(f, f.uniform_letter_probs()) - 1.0) < 1e-12);

    std::vector<int> h0 = {1, 1, 0, 0, 0, 0};
    auto ind = histogram_indicator(g, h0, 2);
    double w = multinomial_weight(2, h0, ind.uniform_letter_probs());
    CHECK(std::abs(symmetric_l2_norm(ind) - std::sqrt(w)) < 1e-12);
}

TEST_CASE("symmetric evaluation is permutation invariant") {
    auto g = FiniteGroup::symmetric(3);
    auto f = make_threshold(g, {1, 3}, 2, 5);
    Philox rng(5, 0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<int> x(5);
        for (auto& v : x) v = static_cast<int>(rng.next_index(6));
        auto y = x;
        for (int j = 4; j > 0; --j) std::swap(y[j], y[rng.next_index(j + 1)]);
        CHECK(f.eval_elements(x) == f.eval_elements(y));
    }
}

TEST_CASE("level components by brute fourier") {
    auto z2 = FiniteGroup::cyclic(2);
    auto irreps = irreps_of(z2);

    // level 0 of anything is the mean
    {
        Philox rng(9, 1);
        RawFunction f;
        f.n = 3;
        f.group_order = 2;
        f.table.resize(8);
        for (auto& v : f.table) v = cdouble(rng.next_normal(), rng.next_normal());
        auto f0 = level_component(z2, irreps, f, 0);
        auto mean = raw_mean(f);
        for (const auto& v : f0.table) CHECK(std::abs(v - mean) < 1e-10);

        // levels sum back to f and are mutually orthogonal
        std::vector<RawFunction> levels;
        for (int k = 0; k <= 3; ++k) levels.push_back(level_component(z2, irreps, f, k));
        for (long xi = 0; xi < 8; ++xi) {
            cdouble acc = 0;
            for (const auto& lk : levels) acc += lk.table[xi];
            CHECK(std::abs(acc - f.table[xi]) < 1e-9);
        }
        for (int k1 = 0; k1 <= 3; ++k1)
            for (int k2 = k1 + 1; k2 <= 3; ++k2) {
                cdouble ip = 0;
                for (long xi = 0; xi < 8; ++xi)
                    ip += levels[k1].table[xi] * std::conj(levels[k2].table[xi]);
                CHECK(std::abs(ip) / 8 < 1e-9);
            }
    }

    // parity on two bits lives at level 2
    {
        RawFunction parity;
        parity.n = 2;
        parity.group_order = 2;
        parity.table = {1.0, -1.0, -1.0, 1.0};
        for (int k = 0; k <= 1; ++k) {
            auto lk = level_component(z2, irreps, parity, k);
            for (const auto& v : lk.table) CHECK(std::abs(v) < 1e-10);
        }
        auto l2 = level_component(z2, irreps, parity, 2);
        for (long xi = 0; xi < 4; ++xi) CHECK(std::abs(l2.table[xi] - parity.table[xi]) < 1e-10);
    }

    // majority on three bits has no level-2 mass
    {
        auto maj = raw_from_symmetric(z2, make_threshold(z2, {1}, 2, 3));
        auto l2 = level_component(z2, irreps, maj, 2);
        for (const auto& v : l2.table) CHECK(std::abs(v) < 1e-10);
        auto l1 = level_component(z2, irreps, maj, 1);
        auto l3 = level_component(z2, irreps, maj, 3);
        CHECK(raw_l2_norm(l1) > 1e-3);
        CHECK(raw_l2_norm(l3) > 1e-3);
    }
}

TEST_CASE("histogram level decomposition matches brute fourier") {
    struct Case {
        FiniteGroup g;
        int n;
    };
    std::vector<Case> cases;
    cases.push_back({FiniteGroup::cyclic(2), 4});
    cases.push_back({FiniteGroup::symmetric(3), 3});
    for (const auto& [g, n] : cases) {
        auto irreps = irreps_of(g);
        HistogramIndexer idx(n, g.order());
        Philox rng(21, g.order());
        std::vector<cdouble> vals(idx.size());
        for (auto& v : vals) v = cdouble(rng.next_normal(), rng.next_normal());
        auto f = symmetric_from_table(g, n, vals, "random");
        auto raw = raw_from_symmetric(g, f);
        auto lv = symmetric_levels(f);
        for (int k = 0; k <= n; ++k) {
            auto brute = level_component(g, irreps, raw, k);
            auto rebuilt = raw_level_from_components(g, f, lv, k);
            double err = 0, norm_sq = 0;
            for (std::size_t xi = 0; xi < brute.table.size(); ++xi) {
                err = std::max(err, std::abs(brute.table[xi] - rebuilt.table[xi]));
                norm_sq += std::norm(brute.table[xi]);
            }
            CHECK(err < 1e-9);
            CHECK(std::abs(lv.level_norm_sq[k] - norm_sq / brute.table.size()) < 1e-9);
        }
    }
}

TEST_CASE("threshold level-2 coefficient closed form") {
    auto z2 = FiniteGroup::cyclic(2);
    auto irreps = irreps_of(z2);

    // majority has no level-2 mass
    auto maj = threshold_level2_coefficient(z2, irreps, {1}, 2, 3, 1, 1, 2);
    CHECK(maj.cwiseAbs().maxCoeff() < 1e-12);

    // t=1 on three bits: -1/8
    auto orr = threshold_level2_coefficient(z2, irreps, {1}, 1, 3, 1, 1, 2);
    CHECK(std::abs(orr(0, 0) - cdouble(-0.125, 0)) < 1e-12);

    // t=0 is constant: zero coefficient
    auto cst = threshold_level2_coefficient(z2, irreps, {1}, 0, 3, 1, 1, 2);
    CHECK(cst.cwiseAbs().maxCoeff() < 1e-12);

    // against the brute tensor transform, all (i,j) placements
    for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)}) {
        auto ir = irreps_of(g);
        int n = g.order() > 2 ? 3 : 4;
        for (int t = 1; t <= n; ++t) {
            std::vector<int> a_set;
            for (int e = 1; e <= g.order() / 2; ++e) a_set.push_back(e);
            auto raw = raw_from_symmetric(g, make_threshold(g, a_set, t, n));
            auto tf = tensor_fourier(g, ir, raw);
            for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
                const auto& tuple = tf.tuples[ti];
                // pick out level-2 tuples of the form (alpha at i, alpha* at j)
                std::vector<int> support;
                for (int pos = 0; pos < n; ++pos)
                    if (!ir[tuple[pos]].is_trivial) support.push_back(pos);
                if (support.size() != 2) continue;
                int a = tuple[support[0]], b = tuple[support[1]];
                if (dual_index(ir, a) != b) continue;
                auto closed = threshold_level2_coefficient(g, ir, a_set, t, n, a,
                                                           support[0] + 1, support[1] + 1);
                CHECK((tf.coeffs[ti] - closed).cwiseAbs().maxCoeff() < 1e-9);
            }
        }
    }
}

TEST_CASE("lower bound constant") {
    auto z2 = FiniteGroup::cyclic(2);
    CHECK(std::abs(lower_bound_constant(z2, {1}, 16, 7) - 1001.0 / 16384) < 1e-15);
    CHECK(std::abs(lower_bound_constant(z2, {1}, 4, 2) - 0.25) < 1e-15);
    // exact center: consecutive binomials equalize, still nonnegative
    CHECK(lower_bound_constant(z2, {1}, 10, 5) >= 0.0);
    auto s3 = FiniteGroup::symmetric(3);
    CHECK_THROWS_AS(lower_bound_constant(s3, {1}, 8, 3), std::invalid_argument);
}

TEST_CASE("word functions and group products") {
    auto s3 = FiniteGroup::symmetric(3);
    auto f = make_group_product(s3, 3, 0, 4);
    CHECK(f.degree() == 3);
    auto raw = raw_from_word(s3, f);
    CHECK(std::abs(raw_l2_norm(raw) - 1.0 / std::sqrt(6.0)) < 1e-12);

    // k=1 product is a single-coordinate indicator
    auto single = make_group_product(s3, 1, 2, 3);
    std::vector<int> x = {2, 0, 1};
    CHECK(single.eval(s3, x) == cdouble(1, 0));
    x[0] = 1;
    CHECK(single.eval(s3, x) == cdouble(0, 0));

    // word value only depends on the selected coordinates
    auto z3 = FiniteGroup::cyclic(3);
    std::vector<cdouble> h(3);
    h[0] = 1.0;
    h[1] = cdouble(0, 1);
    h[2] = -2.0;
    auto w = make_word_function(z3, {2, 4}, {1, -1}, h, 5);
    Philox rng(3, 3);
    for (int rep = 0; rep < 30; ++rep) {
        std::vector<int> a(5), b(5);
        for (int i = 0; i < 5; ++i) a[i] = static_cast<int>(rng.next_index(3));
        b = a;
        b[0] = static_cast<int>(rng.next_index(3));
        b[2] = static_cast<int>(rng.next_index(3));
        b[4] = static_cast<int>(rng.next_index(3));
        CHECK(w.eval(z3, a) == w.eval(z3, b));
    }
    CHECK_THROWS_AS(make_word_function(z3, {1, 1}, {1, 1}, h, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_word_function(z3, {1, 2}, {1, 2}, h, 4), std::invalid_argument);
}

TEST_CASE("word fourier support") {
    auto s3 = FiniteGroup::symmetric(3);
    auto ir3 = irreps_of(s3);
    {
        // 1[x1 x2 = e] has coefficients only at matched (rho, rho*) pairs
        std::vector<cdouble> h(6, cdouble(0, 0));
        h[0] = 1.0;
        auto f = make_word_function(s3, {1, 2}, {1, 1}, h, 2);
        auto rep = word_support_check(s3, ir3, f);
        CHECK(rep.pass);
        CHECK(rep.max_off_support < 1e-12);
    }
    {
        // constant outer function: only the trivial coefficient
        std::vector<cdouble> h(6, 0.7);
        auto f = make_word_function(s3, {1, 2}, {1, -1}, h, 3);
        auto raw = raw_from_word(s3, f);
        auto tf = tensor_fourier(s3, ir3, raw);
        for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
            bool trivial = true;
            for (int r : tf.tuples[ti]) trivial = trivial && ir3[r].is_trivial;
            if (!trivial) CHECK(tf.coeffs[ti].norm() < 1e-12);
        }
        CHECK(word_support_check(s3, ir3, f).pass);
    }
    {
        // z3: w = x1 x2^{-1} with h = chi1 leaves a single matched coefficient
        auto z3 = FiniteGroup::cyclic(3);
        auto irz = irreps_of(z3);
        std::vector<cdouble> h(3);
        for (int e = 0; e < 3; ++e) h[e] = irz[1].chars[e];
        auto f = make_word_function(z3, {1, 2}, {1, -1}, h, 2);
        CHECK(word_support_check(z3, irz, f).pass);
        auto tf = tensor_fourier(z3, irz, raw_from_word(z3, f));
        int nonzero = 0;
        for (const auto& c : tf.coeffs)
            if (c.norm() > 1e-12) ++nonzero;
        CHECK(nonzero == 1);
    }
}

TEST_CASE("diagonal projection") {
    auto z2 = FiniteGroup::cyclic(2);
    RawFunction andf;
    andf.n = 2;
    andf.group_order = 2;
    andf.table = {0.0, 0.0, 0.0, 1.0};  // AND(x1,x2)
    auto p = project_diagonal(z2, andf);
    CHECK(std::abs(p.table[0] - 0.5) < 1e-12);  // (0,0)
    CHECK(std::abs(p.table[3] - 0.5) < 1e-12);  // (1,1)
    CHECK(std::abs(p.table[1]) < 1e-12);
    CHECK(std::abs(p.table[2]) < 1e-12);
    CHECK(std::abs(raw_mean(p) - raw_mean(andf)) < 1e-12);

    // idempotent
    auto pp = project_diagonal(z2, p);
    for (std::size_t i = 0; i < p.table.size(); ++i)
        CHECK(std::abs(pp.table[i] - p.table[i]) < 1e-12);

    // point indicator on G^1 flattens to the constant 1/|G|
    auto s3 = FiniteGroup::symmetric(3);
    RawFunction point;
    point.n = 1;
    point.group_order = 6;
    point.table.assign(6, cdouble(0, 0));
    point.table[4] = 1.0;
    auto flat = project_diagonal(s3, point);
    for (const auto& v : flat.table) CHECK(std::abs(v - 1.0 / 6) < 1e-12);
}

TEST_CASE("class functions") {
    auto s3 = FiniteGroup::symmetric(3);
    auto irreps = irreps_of(s3);

    // abelian: everything is a class function
    auto z4 = FiniteGroup::cyclic(4);
    Philox rng(8, 0);
    std::vector<cdouble> anyf(4);
    for (auto& v : anyf) v = cdouble(rng.next_normal(), rng.next_normal());
    CHECK(is_class_function(z4, anyf));

    // the standard character is one; coefficient is I/2
    std::vector<cdouble> chi(s3.order());
    for (int e = 0; e < 6; ++e) chi[e] = irreps[2].chars[e];
    REQUIRE(is_class_function(s3, chi));
    auto cs = class_fourier(s3, irreps, chi);
    CHECK(std::abs(cs[2] - cdouble(0.5, 0)) < 1e-10);
    CHECK(std::abs(cs[0]) < 1e-10);
    CHECK(std::abs(cs[1]) < 1e-10);
    // ||f||^2 = sum d^2 |c|^2
    double norm_sq = 0;
    for (int e = 0; e < 6; ++e) norm_sq += std::norm(chi[e]);
    norm_sq /= 6;
    double sum = 0;
    for (std::size_t r = 0; r < irreps.size(); ++r)
        sum += std::pow(irreps[r].dim, 2) * std::norm(cs[r]);
    CHECK(std::abs(sum - norm_sq) < 1e-9);

    // a single transposition's indicator is not a class function
    std::vector<cdouble> ind(6, cdouble(0, 0));
    int swap = -1;
    for (int e = 1; e < 6; ++e)
        if (s3.inv(e) == e) {
            swap = e;
            break;
        }
    ind[swap] = 1.0;
    CHECK_FALSE(is_class_function(s3, ind));
    CHECK_THROWS_AS(class_fourier(s3, irreps, ind), std::invalid_argument);
}

TEST_CASE("placement invariance of symmetric coefficients") {
    for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)}) {
        auto irreps = irreps_of(g);
        int n = g.order() > 2 ? 3 : 4;
        HistogramIndexer idx(n, g.order());
        Philox rng(31, g.order());
        std::vector<cdouble> vals(idx.size());
        for (auto& v : vals) v = cdouble(rng.next_normal(), rng.next_normal());
        auto raw = raw_from_symmetric(g, symmetric_from_table(g, n, vals, "random"));
        auto tf = tensor_fourier(g, irreps, raw);
        // group tuples by the multiset of irreps; equal coefficients entrywise
        std::map<std::vector<int>, Matrix> rep_of;
        for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
            auto key = tf.tuples[ti];
            std::sort(key.begin(), key.end());
            auto it = rep_of.find(key);
            if (it == rep_of.end()) rep_of.emplace(key, tf.coeffs[ti]);
            else if (it->second.rows() == tf.coeffs[ti].rows())
                CHECK((it->second - tf.coeffs[ti]).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("central weight indicator norm") {
    // indicator of the balanced histogram: ||f||_2 = sqrt(C(n, n/2)/2^n),
    // the same n^{-1/4} scale as the nominal weight-indicator rate
    auto z2 = FiniteGroup::cyclic(2);
    int n = 16;
    auto f = histogram_indicator(z2, {8, 8}, n);
    double measured = symmetric_l2_norm(f);
    double exact = std::sqrt(binom(n, n / 2) / std::pow(2.0, n));
    CHECK(std::abs(measured - exact) < 1e-12);
    double rate = std::pow(n, -0.25);
    CHECK(measured < rate);
    CHECK(measured > 0.5 * rate);
}

TEST_CASE("trace-norm lemma on seeded symmetric instances") {
    for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)}) {
        int n = 4;
        auto irreps = irreps_of(g);
        HistogramIndexer idx(n, g.order());
        Philox rng(77, g.order());
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<cdouble> vals(idx.size());
            for (auto& v : vals) v = cdouble(rng.next_normal(), rng.next_normal());
            auto f = symmetric_from_table(g, n, vals, "random");
            auto raw = raw_from_symmetric(g, f);
            auto tf = tensor_fourier(g, irreps, raw);
            auto lv = symmetric_levels(f);
            for (int k = 1; k <= n; ++k) {
                // leading placement: non-trivial exactly on the first k slots
                double lhs = 0;
                for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
                    bool leading = true;
                    int dim = 1;
                    for (int pos = 0; pos < n; ++pos) {
                        bool triv = irreps[tf.tuples[ti][pos]].is_trivial;
                        leading = leading && (pos < k ? !triv : triv);
                        dim *= irreps[tf.tuples[ti][pos]].dim;
                    }
                    if (leading) lhs += dim * trace_norm(tf.coeffs[ti]);
                }
                double rhs = std::pow(g.order(), k / 2.0) / std::sqrt(binom(n, k)) *
                             std::sqrt(lv.level_norm_sq[k]);
                CHECK(lhs <= rhs + 1e-9);
            }
        }
    }
}
