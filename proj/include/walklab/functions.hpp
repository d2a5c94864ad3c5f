#pragma once

#include <string>
#include <vector>

#include "walklab/combinatorics.hpp"
#include "walklab/group.hpp"
#include "walklab/linalg.hpp"
#include "walklab/rep.hpp"

namespace walklab {

/// Function on G^n invariant under coordinate permutation, stored by
/// histogram. Group elements are first collapsed to a (possibly smaller)
/// letter alphabet: a threshold only sees "in A / not in A", which keeps
/// the histogram space tiny even for larger groups.
struct SymmetricFunction {
    int n = 0;                    // arity
    int q = 0;                    // letter alphabet size
    std::vector<int> letter_of;   // group element -> letter
    std::vector<cdouble> values;  // by histogram rank (sum == n over q letters)
    std::string tag;

    HistogramIndexer indexer() const { return {n, q}; }

    cdouble eval_hist(const std::vector<int>& hist) const {
        return values[indexer().rank(hist)];
    }
    cdouble eval_elements(const std::vector<int>& x) const {
        std::vector<int> h(q, 0);
        for (int e : x) ++h[letter_of[e]];
        return eval_hist(h);
    }

    /// Pushforward of the uniform distribution on G to letters.
    std::vector<double> uniform_letter_probs() const {
        std::vector<double> p(q, 0.0);
        for (int l : letter_of) p[l] += 1.0 / letter_of.size();
        return p;
    }
};

/// Th_{A,t}: 1 iff at least t coordinates land in A.
SymmetricFunction make_threshold(const FiniteGroup& g, const std::vector<int>& a_set, int t,
                                 int n);

/// Full-alphabet symmetric function from a histogram table (q = |G|).
SymmetricFunction symmetric_from_table(const FiniteGroup& g, int n, std::vector<cdouble> values,
                                       std::string tag = "symmetric_table");

/// Indicator of a single histogram.
SymmetricFunction histogram_indicator(const FiniteGroup& g, const std::vector<int>& h0, int n);

/// sqrt(E_{G^n} |f|^2); letter_probs defaults to the uniform pushforward.
double symmetric_l2_norm(const SymmetricFunction& f);
double symmetric_l2_norm(const SymmetricFunction& f, const std::vector<double>& letter_probs);

/// E_{G^n}[f] under independent letters.
cdouble symmetric_mean(const SymmetricFunction& f, const std::vector<double>& letter_probs);

/// f(x) = h(prod_{s in S} x_s^{e_s}), factors in increasing index order.
struct WordFunction {
    int n = 0;
    std::vector<int> indices;    // 1-based, strictly increasing
    std::vector<int> exponents;  // +1 or -1
    std::vector<cdouble> h;      // outer function on G
    std::string tag;

    int degree() const { return static_cast<int>(indices.size()); }
    cdouble eval(const FiniteGroup& g, const std::vector<int>& x) const {
        int w = g.identity();
        for (std::size_t j = 0; j < indices.size(); ++j) {
            int e = x[indices[j] - 1];
            w = g.mul(w, exponents[j] == 1 ? e : g.inv(e));
        }
        return h[w];
    }
};

WordFunction make_word_function(const FiniteGroup& g, std::vector<int> indices,
                                std::vector<int> exponents, std::vector<cdouble> h, int n);

/// 1[x_1 ... x_k = target] on G^n.
WordFunction make_group_product(const FiniteGroup& g, int k, int target, int n);

/// Dense table on G^n, index x_1 |G|^{n-1} + ... + x_n.
struct RawFunction {
    int n = 0;
    int group_order = 0;
    std::vector<cdouble> table;

    cdouble eval(const std::vector<int>& x) const {
        long idx = 0;
        for (int e : x) idx = idx * group_order + e;
        return table[idx];
    }
};

RawFunction raw_from_symmetric(const FiniteGroup& g, const SymmetricFunction& f);
RawFunction raw_from_word(const FiniteGroup& g, const WordFunction& f);

cdouble raw_mean(const RawFunction& f);
double raw_l2_norm(const RawFunction& f);

/// Fourier transform over G^n: one matrix per irrep tuple.
struct TensorFourier {
    int n = 0;
    std::vector<std::vector<int>> tuples;  // irrep indices, length n
    std::vector<Matrix> coeffs;
};

/// Brute tensor transform; requires |G|^n <= 10^6.
TensorFourier tensor_fourier(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                             const RawFunction& f);

/// Level-k part f_k(x) = sum_{|rho|=k} d_rho <fhat(rho), rho(x)>.
RawFunction level_component(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                            const RawFunction& f, int k);

/// Orthogonal decomposition of a symmetric function into per-level
/// symmetric components: component[k] lives on k-coordinate histograms and
/// f_k = sum_{|T|=k} component_k(x_T). Computed by conditional averaging,
/// no |G|^n table.
struct SymmetricLevels {
    int n = 0;
    int q = 0;
    std::vector<std::vector<cdouble>> component;  // [k][hist rank over size-k histograms]
    std::vector<double> level_norm_sq;            // ||f_k||_2^2
};

SymmetricLevels symmetric_levels(const SymmetricFunction& f);
SymmetricLevels symmetric_levels(const SymmetricFunction& f,
                                 const std::vector<double>& letter_probs, bool parallel = true);

/// a_t^n = C(n,t) |A|^t |A^c|^{n-t}, zero outside 0 <= t <= n.
double threshold_count(int t, int n, int a_size, int group_order);

/// Level-2 Fourier coefficient of Th_{A,t} at positions i < j carrying
/// (alpha, alpha*): ((a_{t-2}^{n-2} - a_{t-1}^{n-2})/|G|^{n-2}) *
/// ind_A_hat(alpha) (x) ind_A_hat(alpha*).
Matrix threshold_level2_coefficient(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                    const std::vector<int>& a_set, int t, int n, int alpha,
                                    int i, int j);

/// C_{A,n,t} = (a_{t-1}^{n-2} - a_{t-2}^{n-2})/|G|^{n-2}; requires |A| = |G|/2.
double lower_bound_constant(const FiniteGroup& g, const std::vector<int>& a_set, int n, int t);

/// Fourier coefficient of the indicator of A: E_x[1_A(x) rho(x)].
Matrix subset_indicator_coefficient(const FiniteGroup& g, const Irrep& rho,
                                    const std::vector<int>& a_set);

/// P_G f(x) = E_h[f(h x_1, ..., h x_n)].
RawFunction project_diagonal(const FiniteGroup& g, const RawFunction& f);

bool is_class_function(const FiniteGroup& g, const std::vector<cdouble>& f);

/// Scalars c_rho with fhat(rho) = c_rho I; throws on non-class functions.
std::vector<cdouble> class_fourier(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                   const std::vector<cdouble>& f);

/// CSV dump of the tensor transform: one row (level, irrep tuple, HS norm)
/// per coefficient, levels ascending.
std::string level_coefficients_csv(const std::vector<Irrep>& irreps, const TensorFourier& tf);

struct WordSupportReport {
    bool pass = false;
    double max_off_support = 0;
    long tuples_checked = 0;
    std::string worst;  // tuple with the largest off-support mass
};

/// Checks that every coefficient outside the admissible support
/// (trivial off S, matched rho / rho* on S) has HS norm < 1e-12.
WordSupportReport word_support_check(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                     const WordFunction& f);

} // namespace walklab
