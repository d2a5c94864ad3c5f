// The OpenMP kernels must reproduce the serial reference bit for bit: every
// parallel loop writes disjoint slots and keeps the per-slot summation order.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walklab/walk.hpp"

using namespace walklab;

TEST_CASE("tensor mean: parallel == serial") {
    auto g = FiniteGroup::symmetric(3);
    auto x = build_complete_power(g, 2);
    for (int i = 0; i < 5; ++i) {
        Philox rng(404, i);
        int k = 2 + static_cast<int>(rng.next_index(3));
        std::vector<int> idx(k);
        idx[0] = 1;
        for (int j = 1; j < k; ++j) idx[j] = idx[j - 1] + 1 + static_cast<int>(rng.next_index(3));
        IndexSet s(idx.back(), idx);
        std::vector<VertexMatrixFunction> fs;
        for (int j = 0; j < k; ++j) fs.push_back(random_contraction(x, 2, 505, i * 10 + j));
        auto par = exact_tensor_mean(x, s, fs);
        auto ser = exact_tensor_mean_serial(x, s, fs);
        CHECK((par - ser).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("histogram bias: parallel == serial") {
    auto g = FiniteGroup::symmetric(3);
    auto x = build_complete_power(g, 2);
    for (int a_size : {1, 3, 5}) {
        std::vector<int> a_set;
        for (int e = 1; e <= a_size; ++e) a_set.push_back(e);
        for (int t : {2, 5, 9}) {
            auto f = make_threshold(g, a_set, t, 12);
            CHECK(std::abs(bias_histogram(x, g, f) - bias_histogram_serial(x, g, f)) == 0.0);
        }
    }
    // also on a graph without a lumpable labeling (vertex-level DP)
    RealMatrix c4 = RealMatrix::Zero(4, 4);
    c4(0, 1) = c4(1, 0) = c4(1, 2) = c4(2, 1) = c4(2, 3) = c4(3, 2) = c4(3, 0) = c4(0, 3) = 0.5;
    auto odd = LabeledExpander::from_matrix(c4, std::vector<int>{0, 0, 0, 1}, "uneven");
    auto z2 = FiniteGroup::cyclic(2);
    auto f = make_threshold(z2, {1}, 2, 6);
    CHECK(std::abs(bias_histogram(odd, z2, f) - bias_histogram_serial(odd, z2, f)) == 0.0);
}

TEST_CASE("level bias: parallel == serial") {
    auto g = FiniteGroup::symmetric(3);
    auto x = build_complete_power(g, 2);
    HistogramIndexer idx(8, 6);
    Philox rng(77, 1);
    std::vector<cdouble> vals(idx.size());
    for (auto& v : vals) v = cdouble(rng.next_normal(), rng.next_normal());
    auto f = symmetric_from_table(g, 8, vals, "random");
    auto par = level_bias_all(x, g, f);
    auto ser = level_bias_all_serial(x, g, f);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) CHECK(std::abs(par[k] - ser[k]) == 0.0);
}

TEST_CASE("sampling is shard-deterministic") {
    auto g = FiniteGroup::cyclic(2);
    auto x = build_complete_power(g, 3);
    auto f = make_threshold(g, {1}, 3, 6);
    auto probs = f.uniform_letter_probs();
    auto uni = symmetric_mean(f, probs);
    auto eval = [&](const std::vector<int>& labels) { return f.eval_elements(labels); };
    auto a = sample_bias(x, eval, 6, 5000, 42, uni);
    auto b = sample_bias(x, eval, 6, 5000, 42, uni);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_est == b.stderr_est);
}
