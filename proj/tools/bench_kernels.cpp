// Compares the OpenMP kernels against their serial references on
// representative workloads and reports agreement plus speedup.

#include <chrono>
#include <cstdio>

#include "walklab/walk.hpp"

using namespace walklab;

namespace {

template <typename F>
double time_sec(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best,
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, double max_diff) {
    std::printf("%-30s %9.4fs %9.4fs %7.2fx   max |diff| %.3g\n", name, serial, parallel,
                serial / parallel, max_diff);
}

} // namespace

int main() {
    std::printf("%-30s %10s %10s %8s\n", "kernel", "serial", "openmp", "speedup");

    {
        auto g = FiniteGroup::symmetric(3);
        auto x = build_complete_power(g, 2);  // 36 vertices
        IndexSet s(16, {1, 5, 9, 16});
        std::vector<VertexMatrixFunction> fs;
        int dims[4] = {4, 2, 4, 2};
        for (int j = 0; j < 4; ++j) fs.push_back(random_contraction(x, dims[j], 7, j));
        Matrix a, b;
        double ts = time_sec([&] { a = exact_tensor_mean_serial(x, s, fs); });
        double tp = time_sec([&] { b = exact_tensor_mean(x, s, fs); });
        row("tensor_mean (N=36, dim=64)", ts, tp, (a - b).cwiseAbs().maxCoeff());
    }

    {
        // conjugation-closed Cayley graph over S4, function of the class
        // histogram: the walk does not project to fewer states, so the DP
        // runs over all 24 vertices
        auto g = FiniteGroup::symmetric(4);
        auto part = conjugacy_classes(g);
        std::vector<int> gens;
        for (const auto& cls : part.classes)
            if (cls.size() == 6 && g.inv(cls[0]) == cls[0]) gens = cls;  // transpositions
        auto x = build_cayley(g, gens);
        SymmetricFunction f;
        f.n = 20;
        f.q = static_cast<int>(part.classes.size());
        f.letter_of = part.class_of;
        HistogramIndexer idx(f.n, f.q);
        f.values.resize(idx.size());
        Philox rng(2, 0);
        for (auto& v : f.values) v = rng.next_double();
        f.tag = "class_histogram";
        cdouble a, b;
        double ts = time_sec([&] { a = bias_histogram_serial(x, g, f); }, 2);
        double tp = time_sec([&] { b = bias_histogram(x, g, f); }, 2);
        row("bias_histogram (N=24, q=5)", ts, tp, std::abs(a - b));
    }

    {
        auto g = FiniteGroup::symmetric(3);
        auto x = build_complete_power(g, 2);
        SymmetricFunction f;
        f.n = 14;
        f.q = g.order();
        f.letter_of.resize(g.order());
        for (int e = 0; e < g.order(); ++e) f.letter_of[e] = e;
        HistogramIndexer idx(f.n, f.q);
        f.values.resize(idx.size());
        Philox rng(3, 0);
        for (auto& v : f.values) v = rng.next_double();
        f.tag = "random_symmetric";
        std::vector<cdouble> a, b;
        double ts = time_sec([&] { a = level_bias_all_serial(x, g, f); }, 1);
        double tp = time_sec([&] { b = level_bias_all(x, g, f); }, 1);
        double diff = 0;
        for (std::size_t k = 0; k < a.size(); ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
        row("level_bias_all (q=6, n=14)", ts, tp, diff);
    }

    return 0;
}
