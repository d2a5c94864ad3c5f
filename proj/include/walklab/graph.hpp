#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walklab/group.hpp"
#include "walklab/linalg.hpp"
#include "walklab/rep.hpp"

namespace walklab {

struct SpectralReport {
    RealVector eigenvalues;  // descending
    double lambda = 0;       // max(|lambda_2|, |lambda_N|)
};

/// Symmetric row-stochastic walk matrix plus a vertex -> group-element
/// labeling. Spectrum is computed once at construction and cached;
/// instances are immutable afterwards.
class LabeledExpander {
public:
    static LabeledExpander from_matrix(RealMatrix walk, std::vector<int> labels,
                                       std::string tag);

    int size() const { return n_; }
    const RealMatrix& walk_matrix() const { return walk_; }
    double walk(int u, int v) const { return walk_(u, v); }
    int label(int v) const { return labels_[v]; }
    const std::vector<int>& labels() const { return labels_; }
    const std::string& tag() const { return tag_; }
    const SpectralReport& spectrum() const { return spectrum_; }
    double lambda() const { return spectrum_.lambda; }

private:
    LabeledExpander() = default;

    int n_ = 0;
    RealMatrix walk_;
    std::vector<int> labels_;
    std::string tag_;
    SpectralReport spectrum_;
};

/// Cayley graph on G with generating multiset S (identity labeling).
/// S must be closed under inverse; the identity is rejected unless
/// self-loops are explicitly allowed.
LabeledExpander build_cayley(const FiniteGroup& g, const std::vector<int>& gens,
                             bool allow_self_loops = false);

/// Complete graph without self-loops on G^r, labeled by first-coordinate
/// projection. Walk matrix (J - I)/(|G|^r - 1).
LabeledExpander build_complete_power(const FiniteGroup& g, int r);

/// Same labeling, walk matrix A^k.
LabeledExpander power_graph(const LabeledExpander& x, int k);

struct UnbiasedReport {
    bool pass = false;
    std::vector<int> counts;  // vertices per group element
    std::string reason;
};

UnbiasedReport check_unbiased(const LabeledExpander& x, const FiniteGroup& g);

struct PseudoCayleyReport {
    bool pass = false;
    std::vector<double> lambda_by_irrep;  // aligned with the irrep list
    std::string failure;                  // offending (rho, i, j) and residual
};

/// Verifies that every Fourier basis function composed with the labeling is
/// an eigenvector of the walk matrix; reports the per-irrep eigenvalues.
/// For conjugation-closed Cayley graphs also checks the character formula
/// lambda_rho = (1/d_rho)(1/|S|) sum_s chi_rho(s).
PseudoCayleyReport check_pseudo_cayley(const LabeledExpander& x, const FiniteGroup& g,
                                       const std::vector<Irrep>& irreps);

struct EmlReport {
    double lhs = 0;    // |E_{x~y}<f(x),g(y)> - <mu_f,mu_g>|
    double bound = 0;  // lambda ||f||_2 ||g||_2
    double slack = 0;
    bool pass = false;
};

/// Mixing inequality for two vector-valued vertex functions.
EmlReport eml_check(const LabeledExpander& x, const std::vector<Vector>& f,
                    const std::vector<Vector>& g);

/// Transition matrix of the label process when the labeled walk is lumpable
/// (row sums into each label class depend only on the current label);
/// empty otherwise. Walks on such graphs can be simulated on labels alone.
std::optional<RealMatrix> label_chain(const LabeledExpander& x, int group_order);

nlohmann::json graph_to_json(const LabeledExpander& x);
LabeledExpander graph_from_json(const nlohmann::json& j);
std::string spectrum_csv(const LabeledExpander& x);

} // namespace walklab
