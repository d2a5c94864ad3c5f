#include "walklab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace walklab {

namespace {

SpectralReport compute_spectrum(const RealMatrix& walk) {
    double asym = (walk - walk.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
        throw std::invalid_argument("walk matrix asymmetric beyond tolerance: " +
                                    std::to_string(asym));
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(walk);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("symmetric eigensolve failed");
    SpectralReport rep;
    rep.eigenvalues = es.eigenvalues().reverse();  // descending
    const int n = static_cast<int>(rep.eigenvalues.size());
    if (rep.eigenvalues(0) > 1.0 + 1e-10 || rep.eigenvalues(n - 1) < -1.0 - 1e-10)
        throw std::runtime_error("walk spectrum escapes [-1, 1]");
    rep.lambda = 0;
    for (int i = 1; i < n; ++i)
        rep.lambda = std::max(rep.lambda, std::abs(rep.eigenvalues(i)));
    return rep;
}

} // namespace

LabeledExpander LabeledExpander::from_matrix(RealMatrix walk, std::vector<int> labels,
                                             std::string tag) {
    const int n = static_cast<int>(walk.rows());
    if (walk.cols() != n || static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("walk matrix / labeling size mismatch");
    if (n > 5000) throw std::invalid_argument("graph size capped at 5,000 vertices");
    for (int i = 0; i < n; ++i) {
        double rs = walk.row(i).sum();
        if (std::abs(rs - 1.0) > 1e-12)
            throw std::invalid_argument("row " + std::to_string(i) + " sums to " +
                                        std::to_string(rs));
    }
    LabeledExpander x;
    x.n_ = n;
    x.walk_ = std::move(walk);
    x.labels_ = std::move(labels);
    x.tag_ = std::move(tag);
    x.spectrum_ = compute_spectrum(x.walk_);
    if (std::abs(x.spectrum_.eigenvalues(0) - 1.0) > 1e-10)
        throw std::invalid_argument("leading eigenvalue is not 1");
    return x;
}

LabeledExpander build_cayley(const FiniteGroup& g, const std::vector<int>& gens,
                             bool allow_self_loops) {
    if (gens.empty()) throw std::invalid_argument("build_cayley: empty generator set");
    std::vector<int> mult(g.order(), 0);
    for (int s : gens) {
        if (s < 0 || s >= g.order()) throw std::invalid_argument("generator out of range");
        if (s == g.identity() && !allow_self_loops)
            throw std::invalid_argument("generator set contains the identity (self-loop)");
        ++mult[s];
    }
    for (int s = 0; s < g.order(); ++s)
        if (mult[s] != mult[g.inv(s)])
            throw std::invalid_argument("generator multiset not closed under inverse at " +
                                        g.label(s));
    const int n = g.order();
    RealMatrix walk = RealMatrix::Zero(n, n);
    const double w = 1.0 / static_cast<double>(gens.size());
    for (int v = 0; v < n; ++v)
        for (int s = 0; s < n; ++s)
            if (mult[s]) walk(v, g.mul(v, s)) += w * mult[s];
    std::vector<int> labels(n);
    for (int v = 0; v < n; ++v) labels[v] = v;
    std::string tag = "cayley(" + g.family_tag() + ",|S|=" + std::to_string(gens.size()) + ")";
    return LabeledExpander::from_matrix(std::move(walk), std::move(labels), std::move(tag));
}

LabeledExpander build_complete_power(const FiniteGroup& g, int r) {
    if (r < 1) throw std::invalid_argument("build_complete_power: r >= 1");
    long n = 1;
    for (int i = 0; i < r; ++i) {
        n *= g.order();
        if (n > 5000) throw std::invalid_argument("complete_power: |G|^r exceeds 5,000");
    }
    const int nv = static_cast<int>(n);
    RealMatrix walk = RealMatrix::Constant(nv, nv, 1.0 / (nv - 1));
    for (int v = 0; v < nv; ++v) walk(v, v) = 0.0;
    // first-coordinate projection is a surjective homomorphism G^r -> G
    long block = n / g.order();
    std::vector<int> labels(nv);
    for (int v = 0; v < nv; ++v) labels[v] = static_cast<int>(v / block);
    std::string tag = "complete_power(" + g.family_tag() + "," + std::to_string(r) + ")";
    return LabeledExpander::from_matrix(std::move(walk), std::move(labels), std::move(tag));
}

LabeledExpander power_graph(const LabeledExpander& x, int k) {
    if (k < 1) throw std::invalid_argument("power_graph: k >= 1");
    if (k == 1) return x;
    RealMatrix acc = x.walk_matrix();
    for (int i = 1; i < k; ++i) acc = acc * x.walk_matrix();
    return LabeledExpander::from_matrix(std::move(acc), x.labels(),
                                        x.tag() + "^" + std::to_string(k));
}

UnbiasedReport check_unbiased(const LabeledExpander& x, const FiniteGroup& g) {
    UnbiasedReport rep;
    rep.counts.assign(g.order(), 0);
    for (int v = 0; v < x.size(); ++v) {
        int l = x.label(v);
        if (l < 0 || l >= g.order()) {
            rep.reason = "label out of range at vertex " + std::to_string(v);
            return rep;
        }
        ++rep.counts[l];
    }
    if (x.size() % g.order() != 0) {
        rep.reason = "vertex count " + std::to_string(x.size()) + " not divisible by |G| = " +
                     std::to_string(g.order());
        return rep;
    }
    int expect = x.size() / g.order();
    for (int e = 0; e < g.order(); ++e)
        if (rep.counts[e] != expect) {
            rep.reason = "element " + g.label(e) + " labels " + std::to_string(rep.counts[e]) +
                         " vertices, expected " + std::to_string(expect);
            return rep;
        }
    rep.pass = true;
    return rep;
}

PseudoCayleyReport check_pseudo_cayley(const LabeledExpander& x, const FiniteGroup& g,
                                       const std::vector<Irrep>& irreps) {
    PseudoCayleyReport rep;
    auto unbiased = check_unbiased(x, g);
    if (!unbiased.pass) {
        rep.failure = "labeling not unbiased: " + unbiased.reason;
        return rep;
    }
    const int n = x.size();
    rep.lambda_by_irrep.resize(irreps.size());
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        const auto& rho = irreps[r];
        bool have = false;
        double lam = 0;
        for (int i = 0; i < rho.dim; ++i)
            for (int j = 0; j < rho.dim; ++j) {
                Vector v(n);
                for (int u = 0; u < n; ++u) v(u) = rho.mats[x.label(u)](i, j);
                Vector av = x.walk_matrix() * v;
                double nv = v.norm();
                double ray = (v.dot(av)).real() / (nv * nv);
                double resid = (av - ray * v).norm();
                if (resid > 1e-9 * nv) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf,
                                  "(%s,%d,%d): eigen-residual %.3e exceeds 1e-9 relative",
                                  rho.name.c_str(), i, j, resid / nv);
                    rep.failure = buf;
                    return rep;
                }
                if (have && std::abs(ray - lam) > 1e-9) {
                    rep.failure = "(" + rho.name + "): entries disagree on the eigenvalue";
                    return rep;
                }
                lam = have ? lam : ray;
                have = true;
            }
        rep.lambda_by_irrep[r] = lam;
    }
    // identity-labeled Cayley graph with conjugation-closed generators:
    // eigenvalues must match the character average over S
    bool identity_labeled = x.size() == g.order();
    for (int v = 0; identity_labeled && v < n; ++v) identity_labeled = x.label(v) == v;
    if (identity_labeled) {
        std::vector<double> weight(n, 0.0);
        for (int s = 0; s < n; ++s) weight[s] = x.walk(0, s);
        bool conj_closed = true;
        auto part = conjugacy_classes(g);
        for (const auto& cls : part.classes)
            for (std::size_t i = 1; conj_closed && i < cls.size(); ++i)
                conj_closed = std::abs(weight[cls[i]] - weight[cls[0]]) < 1e-12;
        if (conj_closed) {
            for (std::size_t r = 0; r < irreps.size(); ++r) {
                cdouble acc = 0;
                for (int s = 0; s < n; ++s) acc += weight[s] * irreps[r].chars[s];
                double expect = acc.real() / irreps[r].dim;
                if (std::abs(expect - rep.lambda_by_irrep[r]) > 1e-9) {
                    rep.failure = "(" + irreps[r].name +
                                  "): character-formula eigenvalue mismatch";
                    return rep;
                }
            }
        }
    }
    rep.pass = true;
    return rep;
}

EmlReport eml_check(const LabeledExpander& x, const std::vector<Vector>& f,
                    const std::vector<Vector>& g) {
    const int n = x.size();
    if (static_cast<int>(f.size()) != n || static_cast<int>(g.size()) != n)
        throw std::invalid_argument("eml_check: functions must cover all vertices");
    const double pi = 1.0 / n;
    Vector mu_f = Vector::Zero(f[0].size()), mu_g = Vector::Zero(g[0].size());
    double nf = 0, ng = 0;
    for (int v = 0; v < n; ++v) {
        mu_f += pi * f[v];
        mu_g += pi * g[v];
        nf += pi * f[v].squaredNorm();
        ng += pi * g[v].squaredNorm();
    }
    cdouble edge = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            double w = pi * x.walk(u, v);
            if (w != 0.0) edge += w * f[u].dot(g[v]);  // dot conjugates the first argument
        }
    EmlReport rep;
    rep.lhs = std::abs(cdouble(edge) - mu_f.dot(mu_g));
    rep.bound = x.lambda() * std::sqrt(nf) * std::sqrt(ng);
    rep.slack = rep.bound - rep.lhs;
    rep.pass = rep.lhs <= rep.bound + 1e-10;
    return rep;
}

std::optional<RealMatrix> label_chain(const LabeledExpander& x, int group_order) {
    const int n = x.size();
    RealMatrix t = RealMatrix::Zero(group_order, group_order);
    std::vector<char> seen(group_order, 0);
    for (int v = 0; v < n; ++v) {
        RealVector row = RealVector::Zero(group_order);
        for (int u = 0; u < n; ++u) row(x.label(u)) += x.walk(v, u);
        int l = x.label(v);
        if (!seen[l]) {
            t.row(l) = row;
            seen[l] = 1;
        } else if ((t.row(l).transpose() - row).cwiseAbs().maxCoeff() > 1e-12) {
            return std::nullopt;
        }
    }
    for (int l = 0; l < group_order; ++l)
        if (!seen[l]) return std::nullopt;
    return t;
}

nlohmann::json graph_to_json(const LabeledExpander& x) {
    nlohmann::json j;
    j["N"] = x.size();
    std::vector<double> m;
    m.reserve(static_cast<std::size_t>(x.size()) * x.size());
    for (int u = 0; u < x.size(); ++u)
        for (int v = 0; v < x.size(); ++v) m.push_back(x.walk(u, v));
    j["walk_matrix"] = m;
    j["labeling"] = x.labels();
    j["tag"] = x.tag();
    return j;
}

LabeledExpander graph_from_json(const nlohmann::json& j) {
    int n = j.at("N").get<int>();
    auto m = j.at("walk_matrix").get<std::vector<double>>();
    if (static_cast<int>(m.size()) != n * n)
        throw std::invalid_argument("graph json: walk_matrix size mismatch");
    RealMatrix walk(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) walk(u, v) = m[static_cast<std::size_t>(u) * n + v];
    return LabeledExpander::from_matrix(std::move(walk), j.at("labeling").get<std::vector<int>>(),
                                        j.value("tag", std::string("imported")));
}

std::string spectrum_csv(const LabeledExpander& x) {
    std::string out = "index,eigenvalue\n";
    char buf[48];
    for (int i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", i, x.spectrum().eigenvalues(i));
        out += buf;
    }
    return out;
}

} // namespace walklab
