#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walklab/graph.hpp"
#include "walklab/rng.hpp"

using namespace walklab;

TEST_CASE("cayley of Z3 with both generators") {
    auto g = FiniteGroup::cyclic(3);
    auto x = build_cayley(g, {1, 2});
    CHECK(x.size() == 3);
    CHECK(std::abs(x.lambda() - 0.5) < 1e-10);
    CHECK(std::abs(x.spectrum().eigenvalues(0) - 1.0) < 1e-10);
    CHECK(std::abs(x.spectrum().eigenvalues(1) + 0.5) < 1e-10);
    CHECK(std::abs(x.spectrum().eigenvalues(2) + 0.5) < 1e-10);
}

TEST_CASE("two-cycle is constructible but not an expander") {
    auto x = build_cayley(FiniteGroup::cyclic(2), {1});
    CHECK(std::abs(x.lambda() - 1.0) < 1e-10);
    CHECK(std::abs(x.spectrum().eigenvalues(1) + 1.0) < 1e-10);
}

TEST_CASE("cayley input validation") {
    auto g = FiniteGroup::cyclic(4);
    CHECK_THROWS_AS(build_cayley(g, {1}), std::invalid_argument);      // 1^-1 = 3 missing
    CHECK_THROWS_AS(build_cayley(g, {0, 1, 3}), std::invalid_argument);  // identity
    CHECK_NOTHROW(build_cayley(g, {0, 1, 3}, true));                   // explicit opt-in
    CHECK_NOTHROW(build_cayley(g, {2}));                               // self-inverse
    CHECK_NOTHROW(build_cayley(g, {1, 1, 3, 3}));                      // multiset weights
}

TEST_CASE("cayley over S3 with the transposition class") {
    auto g = FiniteGroup::symmetric(3);
    auto part = conjugacy_classes(g);
    std::vector<int> gens;
    for (const auto& cls : part.classes)
        if (cls.size() == 3) gens = cls;
    REQUIRE(gens.size() == 3);
    auto x = build_cayley(g, gens);
    auto irreps = irreps_of(g);
    auto pc = check_pseudo_cayley(x, g, irreps);
    REQUIRE(pc.pass);
    // character-formula eigenvalues: triv 1, sign -1, std 0
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        cdouble acc = 0;
        for (int s : gens) acc += irreps[r].chars[s];
        double expect = acc.real() / (3.0 * irreps[r].dim);
        CHECK(std::abs(pc.lambda_by_irrep[r] - expect) < 1e-9);
    }
    // cross-check the full spectrum against the eigensolver
    RealVector ev = x.spectrum().eigenvalues;
    CHECK(std::abs(ev(0) - 1.0) < 1e-10);
    CHECK(std::abs(ev(5) + 1.0) < 1e-10);
    for (int i = 1; i <= 4; ++i) CHECK(std::abs(ev(i)) < 1e-10);
}

TEST_CASE("complete powers") {
    auto z2 = FiniteGroup::cyclic(2);
    auto x = build_complete_power(z2, 2);
    CHECK(x.size() == 4);
    CHECK(std::abs(x.lambda() - 1.0 / 3) < 1e-12);
    CHECK(check_unbiased(x, z2).pass);

    auto deg = build_complete_power(z2, 1);  // degenerate two-vertex case
    CHECK(std::abs(deg.lambda() - 1.0) < 1e-12);

    auto s3 = FiniteGroup::symmetric(3);
    auto y = build_complete_power(s3, 1);
    CHECK(y.size() == 6);
    CHECK(std::abs(y.lambda() - 0.2) < 1e-12);
    CHECK(check_unbiased(y, s3).pass);

    // lambda (N-1) = 1 exactly
    for (int r : {1, 2, 3}) {
        auto cp = build_complete_power(z2, r);
        CHECK(std::abs(cp.lambda() * (cp.size() - 1) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(build_complete_power(s3, 6), std::invalid_argument);
}

TEST_CASE("unbiased check diagnostics") {
    auto g = FiniteGroup::cyclic(2);
    auto x = build_complete_power(g, 2);
    auto rep = check_unbiased(x, g);
    CHECK(rep.pass);
    CHECK(rep.counts == std::vector<int>{2, 2});

    // adversarial labeling: everything maps to the identity
    auto bad =
        LabeledExpander::from_matrix(x.walk_matrix(), std::vector<int>{0, 0, 0, 0}, "adversarial");
    auto rep2 = check_unbiased(bad, g);
    CHECK_FALSE(rep2.pass);
    CHECK_FALSE(rep2.reason.empty());

    // N not divisible by |G|
    auto z3 = FiniteGroup::cyclic(3);
    auto rep3 = check_unbiased(x, z3);
    CHECK_FALSE(rep3.pass);
}

TEST_CASE("pseudo-cayley detection") {
    // abelian Cayley graphs always qualify
    for (int n : {3, 4, 5, 6}) {
        auto g = FiniteGroup::cyclic(n);
        std::vector<int> gens = {1, n - 1};
        auto x = build_cayley(g, gens);
        auto irreps = irreps_of(g);
        auto pc = check_pseudo_cayley(x, g, irreps);
        REQUIRE(pc.pass);
        for (std::size_t r = 0; r < irreps.size(); ++r) {
            cdouble acc = 0;
            for (int s : gens) acc += irreps[r].chars[s];
            CHECK(std::abs(pc.lambda_by_irrep[r] - acc.real() / 2.0) < 1e-9);
        }
    }
    // complete power with projection labeling: all non-trivial eigenvalues equal
    auto s3 = FiniteGroup::symmetric(3);
    auto x = build_complete_power(s3, 1);
    auto irreps = irreps_of(s3);
    auto pc = check_pseudo_cayley(x, s3, irreps);
    REQUIRE(pc.pass);
    for (std::size_t r = 0; r < irreps.size(); ++r)
        if (!irreps[r].is_trivial)
            CHECK(std::abs(pc.lambda_by_irrep[r] + 1.0 / (x.size() - 1)) < 1e-9);

    // a single transposition does not span a conjugation-closed set:
    // matrix-entry functions of the 2-dim irrep fail the eigenvector test
    auto g = FiniteGroup::symmetric(3);
    int swap = -1;
    for (int e = 1; e < g.order(); ++e)
        if (g.inv(e) == e && g.label(e) != g.label(0)) {
            swap = e;
            break;
        }
    REQUIRE(swap > 0);
    auto bad = build_cayley(g, {swap});
    auto rep = check_pseudo_cayley(bad, g, irreps);
    CHECK_FALSE(rep.pass);
    CHECK(rep.failure.find("residual") != std::string::npos);
}

TEST_CASE("power graph") {
    auto g = FiniteGroup::cyclic(3);
    auto x = build_cayley(g, {1, 2});
    auto x1 = power_graph(x, 1);
    CHECK((x1.walk_matrix() - x.walk_matrix()).cwiseAbs().maxCoeff() == 0.0);

    auto x2 = power_graph(x, 2);
    CHECK(std::abs(x2.spectrum().eigenvalues(0) - 1.0) < 1e-10);
    CHECK(std::abs(x2.spectrum().eigenvalues(1) - 0.25) < 1e-10);
    CHECK(std::abs(x2.spectrum().eigenvalues(2) - 0.25) < 1e-10);

    // spectra of powers are elementwise powers
    auto s3 = FiniteGroup::symmetric(3);
    auto y = build_complete_power(s3, 1);
    for (int k : {2, 3}) {
        auto yk = power_graph(y, k);
        for (int i = 0; i < y.size(); ++i)
            CHECK(std::abs(yk.spectrum().eigenvalues(i) -
                           std::pow(y.spectrum().eigenvalues(i), k)) < 1e-9);
    }

    // complete graph with self-loops is a projection: unchanged by powers
    int n = 5;
    RealMatrix j = RealMatrix::Constant(n, n, 1.0 / n);
    auto proj = LabeledExpander::from_matrix(j, std::vector<int>(n, 0), "J/N");
    CHECK(std::abs(proj.lambda()) < 1e-10);
    auto proj3 = power_graph(proj, 3);
    CHECK((proj3.walk_matrix() - proj.walk_matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("expander mixing lemma checks") {
    auto g = FiniteGroup::cyclic(3);
    auto x = build_cayley(g, {1, 2});

    // constant functions: both sides vanish
    std::vector<Vector> cf(3, Vector::Constant(2, cdouble(1.0, 0)));
    auto rep = eml_check(x, cf, cf);
    CHECK(rep.pass);
    CHECK(rep.lhs < 1e-12);

    // a non-trivial character is tight: |lhs| = lambda
    auto irreps = irreps_of(g);
    std::vector<Vector> chi(3, Vector(1));
    for (int v = 0; v < 3; ++v) chi[v](0) = irreps[1].chars[v];
    auto tight = eml_check(x, chi, chi);
    CHECK(tight.pass);
    CHECK(std::abs(tight.lhs - 0.5) < 1e-10);
    CHECK(std::abs(tight.bound - 0.5) < 1e-10);

    // seeded mean-zero functions on a complete power
    auto z2 = FiniteGroup::cyclic(2);
    auto cp = build_complete_power(z2, 3);
    Philox rng(11, 0);
    for (int i = 0; i < 100; ++i) {
        std::vector<Vector> f(cp.size(), Vector(2)), h(cp.size(), Vector(2));
        Vector mf = Vector::Zero(2), mh = Vector::Zero(2);
        for (int v = 0; v < cp.size(); ++v) {
            for (int d = 0; d < 2; ++d) {
                f[v](d) = cdouble(rng.next_normal(), rng.next_normal());
                h[v](d) = cdouble(rng.next_normal(), rng.next_normal());
            }
            mf += f[v] / static_cast<double>(cp.size());
            mh += h[v] / static_cast<double>(cp.size());
        }
        for (int v = 0; v < cp.size(); ++v) {
            f[v] -= mf;
            h[v] -= mh;
        }
        CHECK(eml_check(cp, f, h).pass);
    }
}

TEST_CASE("label chain lumping") {
    auto z2 = FiniteGroup::cyclic(2);
    auto cp = build_complete_power(z2, 2);
    auto chain = label_chain(cp, 2);
    REQUIRE(chain.has_value());
    // from a vertex with label g: 1/3 to the other same-label vertex, 2/3 across
    CHECK(std::abs((*chain)(0, 0) - 1.0 / 3) < 1e-12);
    CHECK(std::abs((*chain)(0, 1) - 2.0 / 3) < 1e-12);

    // identity labeling lumping is the walk matrix itself
    auto z3 = FiniteGroup::cyclic(3);
    auto cay = build_cayley(z3, {1, 2});
    auto chain3 = label_chain(cay, 3);
    REQUIRE(chain3.has_value());
    CHECK((*chain3 - cay.walk_matrix()).cwiseAbs().maxCoeff() < 1e-12);

    // 4-cycle with an uneven labeling does not project
    RealMatrix c4 = RealMatrix::Zero(4, 4);
    c4(0, 1) = c4(1, 0) = c4(1, 2) = c4(2, 1) = c4(2, 3) = c4(3, 2) = c4(3, 0) = c4(0, 3) = 0.5;
    auto odd = LabeledExpander::from_matrix(c4, std::vector<int>{0, 0, 0, 1}, "uneven");
    CHECK_FALSE(label_chain(odd, 2).has_value());
}

TEST_CASE("graph json round trip and spectrum csv") {
    auto g = FiniteGroup::cyclic(3);
    auto x = build_cayley(g, {1, 2});
    auto j = graph_to_json(x);
    auto y = graph_from_json(j);
    CHECK(y.size() == x.size());
    CHECK((y.walk_matrix() - x.walk_matrix()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(y.labels() == x.labels());

    auto csv = spectrum_csv(x);
    CHECK(csv.rfind("index,eigenvalue\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("matrix validation") {
    RealMatrix bad = RealMatrix::Zero(2, 2);
    bad(0, 0) = 1.0;
    bad(1, 0) = 0.5;
    bad(1, 1) = 0.5;  // asymmetric
    CHECK_THROWS_AS(LabeledExpander::from_matrix(bad, {0, 0}, "bad"), std::invalid_argument);

    RealMatrix rows = RealMatrix::Constant(2, 2, 0.4);  // rows sum to 0.8
    CHECK_THROWS_AS(LabeledExpander::from_matrix(rows, {0, 0}, "bad"), std::invalid_argument);
}
