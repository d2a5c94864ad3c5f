#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "walklab/functions.hpp"
#include "walklab/graph.hpp"
#include "walklab/rep.hpp"
#include "walklab/rng.hpp"

namespace walklab {

/// Ordered positions i_1 < ... < i_k inside a length-n walk.
struct IndexSet {
    int n = 0;
    std::vector<int> indices;  // 1-based, strictly increasing

    IndexSet(int ambient, std::vector<int> idx);
    int k() const { return static_cast<int>(indices.size()); }
    std::vector<int> gaps() const;  // i_{j+1} - i_j
};

/// Admissible gap subsets I of [k-1]: {1, k-1} <= I and every consecutive
/// pair {j, j+1} with 1 < j < k-1 meets I. Deterministic order.
std::vector<std::vector<int>> enumerate_gap_family(int k);

/// sum over the gap family of lambda^{sum of selected gaps}.
double tensor_bound(const IndexSet& s, double lambda);
double tensor_bound_gaps(const std::vector<int>& gaps, double lambda);
/// The coarse cap (4 lambda)^{floor(k/2)}.
double tensor_bound_coarse(int k, double lambda);

/// Matrix-valued function on the vertices, stored densely.
struct VertexMatrixFunction {
    int dim = 0;
    std::vector<Matrix> value;  // per vertex
};

/// Non-trivial irrep composed with the labeling; mean-zero on unbiased
/// labelings with operator norm 1.
VertexMatrixFunction irrep_vertex_function(const LabeledExpander& x, const Irrep& rho);

/// Seeded mean-zero function with max operator norm <= 1.
VertexMatrixFunction random_contraction(const LabeledExpander& x, int dim, std::uint64_t seed,
                                        std::uint64_t stream);

/// E over the walk of f_1(x_{i_1}) (x) ... (x) f_k(x_{i_k}), by dynamic
/// programming over vertices (one layer per selected position, walking
/// A^{gap} between layers). OpenMP-parallel across vertices.
Matrix exact_tensor_mean(const LabeledExpander& x, const IndexSet& s,
                         const std::vector<VertexMatrixFunction>& fs);

/// Single-threaded reference used by the tests and the benchmark.
Matrix exact_tensor_mean_serial(const LabeledExpander& x, const IndexSet& s,
                                const std::vector<VertexMatrixFunction>& fs);

/// Ground truth: explicit sum over all length-n vertex paths weighted by
/// pi(x_1) prod A[x_t, x_{t+1}]. Refuses more than ~2e6 paths.
Matrix brute_force_walk_oracle(const LabeledExpander& x, int n, int dim,
                               const std::function<Matrix(const std::vector<int>&)>& g);

/// Walk mean of chi_1(x_{i_1}) ... chi_k(x_{i_k}) on a pseudo-Cayley graph,
/// via the Clebsch-Gordan recursion gamma_0 = triv -> ... -> gamma_{k-1} = rho_k
/// with weights c^{rho_i, gamma_i}_{gamma_{i-1}} lambda_{gamma_i}^{gap_i}.
cdouble closed_form_char_mean(const IndexSet& s, const std::vector<int>& rho_indices,
                              const std::vector<Irrep>& irreps, const CGTable& cg,
                              const std::vector<double>& lambda_by_irrep);

// ---- bias engines ----
// All exact paths start the walk from the uniform (stationary) distribution.
// The uniform side of the bias uses the empirical label distribution, which
// matches uniform-G exactly on unbiased labelings.

/// Histogram DP over (state, letter histogram); lumps vertices into labels
/// whenever the labeled walk projects to a Markov chain on labels.
cdouble bias_histogram(const LabeledExpander& x, const FiniteGroup& g,
                       const SymmetricFunction& f);
cdouble bias_histogram_serial(const LabeledExpander& x, const FiniteGroup& g,
                              const SymmetricFunction& f);

/// Dense-table path: explicit walk enumeration (small N^n only).
cdouble bias_raw(const LabeledExpander& x, const FiniteGroup& g, const RawFunction& f);

/// Word-function path: DP over (state, accumulated group element).
cdouble bias_word(const LabeledExpander& x, const FiniteGroup& g, const WordFunction& f);

/// E over the walk of rho(phi(x_1) ... phi(x_k)) minus its uniform mean.
Matrix product_walk_mean(const LabeledExpander& x, const FiniteGroup& g, const Irrep& rho,
                         int k);

/// Per-level biases of a symmetric function, all levels from one selection
/// DP; entry k is the bias of the level-k component. Requires an unbiased
/// labeling.
std::vector<cdouble> level_bias_all(const LabeledExpander& x, const FiniteGroup& g,
                                    const SymmetricFunction& f);
std::vector<cdouble> level_bias_all_serial(const LabeledExpander& x, const FiniteGroup& g,
                                           const SymmetricFunction& f);

struct SampleBias {
    cdouble estimate{0, 0};
    double stderr_est = 0;
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo fallback: seeded Philox streams, 64 fixed shards with an
/// ordered reduction, so results are bit-identical for a given seed
/// regardless of thread count.
SampleBias sample_bias(const LabeledExpander& x,
                       const std::function<cdouble(const std::vector<int>&)>& f_of_labels,
                       int n, long samples, std::uint64_t seed, cdouble exact_uniform_mean);

struct BetaResult {
    double exact = 0;         // sum over |S| = k of tensor_bound(S, lambda)
    double intermediate = 0;  // 2^k C(n-1, floor(k/2)) (lambda/(1-lambda))^{k/2}
    double final_bound = 0;   // C(n,k)^{1/2} (16 e lambda)^{k/2}
};

/// Enumerates all C(n,k) index sets; refuses more than 1e7 subsets.
BetaResult beta_k(int n, int k, double lambda);

} // namespace walklab
