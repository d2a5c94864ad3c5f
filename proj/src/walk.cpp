#include "walklab/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace walklab {

IndexSet::IndexSet(int ambient, std::vector<int> idx) : n(ambient), indices(std::move(idx)) {
    if (indices.empty()) throw std::invalid_argument("IndexSet: empty");
    for (std::size_t j = 0; j < indices.size(); ++j) {
        if (indices[j] < 1 || indices[j] > n)
            throw std::invalid_argument("IndexSet: index out of [1,n]");
        if (j > 0 && indices[j] <= indices[j - 1])
            throw std::invalid_argument("IndexSet: indices must be strictly increasing");
    }
}

std::vector<int> IndexSet::gaps() const {
    std::vector<int> out;
    for (std::size_t j = 1; j < indices.size(); ++j)
        out.push_back(indices[j] - indices[j - 1]);
    return out;
}

std::vector<std::vector<int>> enumerate_gap_family(int k) {
    if (k < 2) throw std::invalid_argument("enumerate_gap_family: k >= 2");
    const int m = k - 1;
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        auto in = [&](int j) { return (mask >> (j - 1)) & 1u; };  // j in 1..m
        if (!in(1) || !in(m)) continue;
        bool ok = true;
        for (int j = 2; j < m && ok; ++j)  // 1 < j < k-1
            ok = in(j) || in(j + 1);
        if (!ok) continue;
        std::vector<int> sel;
        for (int j = 1; j <= m; ++j)
            if (in(j)) sel.push_back(j);
        out.push_back(std::move(sel));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double tensor_bound_gaps(const std::vector<int>& gaps, double lambda) {
    const int k = static_cast<int>(gaps.size()) + 1;
    double acc = 0;
    for (const auto& sel : enumerate_gap_family(k)) {
        int expo = 0;
        for (int j : sel) expo += gaps[j - 1];
        acc += std::pow(lambda, expo);
    }
    return acc;
}

double tensor_bound(const IndexSet& s, double lambda) {
    return tensor_bound_gaps(s.gaps(), lambda);
}

double tensor_bound_coarse(int k, double lambda) {
    return std::pow(4.0 * lambda, k / 2);
}

VertexMatrixFunction irrep_vertex_function(const LabeledExpander& x, const Irrep& rho) {
    VertexMatrixFunction f;
    f.dim = rho.dim;
    f.value.resize(x.size());
    for (int v = 0; v < x.size(); ++v) f.value[v] = rho.mats[x.label(v)];
    return f;
}

VertexMatrixFunction random_contraction(const LabeledExpander& x, int dim, std::uint64_t seed,
                                        std::uint64_t stream) {
    Philox rng(seed, stream);
    VertexMatrixFunction f;
    f.dim = dim;
    f.value.resize(x.size());
    Matrix mean = Matrix::Zero(dim, dim);
    for (int v = 0; v < x.size(); ++v) {
        Matrix m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = cdouble(rng.next_normal(), rng.next_normal());
        f.value[v] = m;
        mean += m / static_cast<double>(x.size());
    }
    double max_norm = 0;
    for (auto& m : f.value) {
        m -= mean;
        max_norm = std::max(max_norm, op_norm(m));
    }
    if (max_norm > 0)
        for (auto& m : f.value) m /= max_norm;
    return f;
}

namespace {

Matrix tensor_mean_impl(const LabeledExpander& x, const IndexSet& s,
                        const std::vector<VertexMatrixFunction>& fs, bool parallel) {
    const int k = s.k();
    const int n = x.size();
    if (static_cast<int>(fs.size()) != k)
        throw std::invalid_argument("exact_tensor_mean: |fs| must equal |S|");
    long total_dim = 1;
    for (const auto& f : fs) {
        if (static_cast<int>(f.value.size()) != n)
            throw std::invalid_argument("exact_tensor_mean: function not defined on all vertices");
        total_dim *= f.dim;
        if (total_dim > 256) throw std::invalid_argument("exact_tensor_mean: product dimension > 256");
    }
    if (static_cast<double>(n) * total_dim * total_dim > 6.0e7)
        throw std::invalid_argument("exact_tensor_mean: memory budget exceeded");

    auto gaps = s.gaps();
    const double pi = 1.0 / n;
    std::vector<Matrix> layer(n), next(n);
    for (int v = 0; v < n; ++v) layer[v] = pi * fs[0].value[v];
    RealMatrix step;
    for (int j = 0; j + 1 < k; ++j) {
        step = x.walk_matrix();
        for (int p = 1; p < gaps[j]; ++p) step = step * x.walk_matrix();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
        for (int v = 0; v < n; ++v) {
            Matrix acc = Matrix::Zero(layer[0].rows(), layer[0].cols());
            for (int u = 0; u < n; ++u) {
                double w = step(u, v);
                if (w != 0.0) acc += w * layer[u];
            }
            next[v] = kron(acc, fs[j + 1].value[v]);
        }
        std::swap(layer, next);
    }
    Matrix out = Matrix::Zero(total_dim, total_dim);
    for (int v = 0; v < n; ++v) out += layer[v];
    return out;
}

} // namespace

Matrix exact_tensor_mean(const LabeledExpander& x, const IndexSet& s,
                         const std::vector<VertexMatrixFunction>& fs) {
    return tensor_mean_impl(x, s, fs, true);
}

Matrix exact_tensor_mean_serial(const LabeledExpander& x, const IndexSet& s,
                                const std::vector<VertexMatrixFunction>& fs) {
    return tensor_mean_impl(x, s, fs, false);
}

Matrix brute_force_walk_oracle(const LabeledExpander& x, int n, int dim,
                               const std::function<Matrix(const std::vector<int>&)>& g) {
    const int nv = x.size();
    int fanout = 0;
    for (int v = 0; v < nv; ++v) {
        int row = 0;
        for (int u = 0; u < nv; ++u)
            if (x.walk(v, u) != 0.0) ++row;
        fanout = std::max(fanout, row);
    }
    double paths = nv * std::pow(static_cast<double>(fanout), n - 1);
    if (paths > 2.0e6) throw std::invalid_argument("brute_force_walk_oracle: too many paths");

    Matrix acc = Matrix::Zero(dim, dim);
    std::vector<int> path(n);
    const double pi = 1.0 / nv;
    // depth-first over paths with running weight
    std::function<void(int, double)> rec = [&](int t, double w) {
        if (t == n) {
            acc += w * g(path);
            return;
        }
        for (int u = 0; u < nv; ++u) {
            double step = x.walk(path[t - 1], u);
            if (step == 0.0) continue;
            path[t] = u;
            rec(t + 1, w * step);
        }
    };
    for (int v = 0; v < nv; ++v) {
        path[0] = v;
        rec(1, pi);
    }
    return acc;
}

cdouble closed_form_char_mean(const IndexSet& s, const std::vector<int>& rho_indices,
                              const std::vector<Irrep>& irreps, const CGTable& cg,
                              const std::vector<double>& lambda_by_irrep) {
    const int k = s.k();
    if (k < 2) throw std::invalid_argument("closed_form_char_mean: k >= 2");
    if (static_cast<int>(rho_indices.size()) != k)
        throw std::invalid_argument("closed_form_char_mean: need one irrep per index");
    int triv = -1;
    for (std::size_t r = 0; r < irreps.size(); ++r)
        if (irreps[r].is_trivial) triv = static_cast<int>(r);
    auto gaps = s.gaps();
    const std::size_t nr = irreps.size();
    std::vector<cdouble> v(nr, cdouble(0, 0)), w(nr);
    v[triv] = 1.0;
    for (int i = 1; i <= k - 1; ++i) {
        for (std::size_t gam = 0; gam < nr; ++gam) {
            cdouble acc = 0;
            const auto& row = cg.of(rho_indices[i - 1], static_cast<int>(gam));
            for (std::size_t prev = 0; prev < nr; ++prev)
                if (row[prev] != 0 && v[prev] != cdouble(0, 0))
                    acc += static_cast<double>(row[prev]) * v[prev];
            w[gam] = acc * std::pow(lambda_by_irrep[gam], gaps[i - 1]);
        }
        std::swap(v, w);
    }
    return v[rho_indices[k - 1]];
}

namespace {

// Either the full walk matrix over vertices or the lumped label chain.
struct Chain {
    RealMatrix t;             // transition matrix
    std::vector<int> letter;  // state -> letter of the symmetric function
    std::vector<double> pi;   // start distribution
};

Chain make_chain(const LabeledExpander& x, const FiniteGroup& g, const SymmetricFunction& f) {
    Chain c;
    if (auto lump = label_chain(x, g.order())) {
        c.t = *lump;
        c.letter.resize(g.order());
        c.pi.assign(g.order(), 0.0);
        for (int e = 0; e < g.order(); ++e) c.letter[e] = f.letter_of[e];
        for (int v = 0; v < x.size(); ++v) c.pi[x.label(v)] += 1.0 / x.size();
    } else {
        c.t = x.walk_matrix();
        c.letter.resize(x.size());
        c.pi.assign(x.size(), 1.0 / x.size());
        for (int v = 0; v < x.size(); ++v) c.letter[v] = f.letter_of[x.label(v)];
    }
    return c;
}

std::vector<double> label_letter_probs(const LabeledExpander& x, const SymmetricFunction& f) {
    std::vector<double> p(f.q, 0.0);
    for (int v = 0; v < x.size(); ++v) p[f.letter_of[x.label(v)]] += 1.0 / x.size();
    return p;
}

cdouble bias_histogram_impl(const LabeledExpander& x, const FiniteGroup& g,
                            const SymmetricFunction& f, bool parallel) {
    Chain c = make_chain(x, g, f);
    const int ns = static_cast<int>(c.pi.size());
    const int q = f.q;
    std::vector<HistogramIndexer> by_size;
    for (int t = 0; t <= f.n; ++t) by_size.emplace_back(t, q);

    // layer[t]: distribution over (state, histogram of first t letters)
    std::vector<cdouble> layer(static_cast<std::size_t>(ns) * by_size[1].size(), cdouble(0, 0));
    {
        std::vector<int> h(q, 0);
        for (int s = 0; s < ns; ++s) {
            h.assign(q, 0);
            h[c.letter[s]] = 1;
            layer[static_cast<std::size_t>(s) * by_size[1].size() + by_size[1].rank(h)] = c.pi[s];
        }
    }
    for (int t = 2; t <= f.n; ++t) {
        const auto& prev_idx = by_size[t - 1];
        const auto& cur_idx = by_size[t];
        std::vector<cdouble> next(static_cast<std::size_t>(ns) * cur_idx.size(), cdouble(0, 0));
        const long hp = prev_idx.size();
        // distinct (hr, sp) pairs land on distinct (sp, h + e_letter) slots,
        // so the layer update is race-free
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
        for (long hr = 0; hr < hp; ++hr) {
            auto h = prev_idx.unrank(hr);
            for (int sp = 0; sp < ns; ++sp) {
                ++h[c.letter[sp]];
                long target = cur_idx.rank(h);
                --h[c.letter[sp]];
                cdouble acc = 0;
                for (int s = 0; s < ns; ++s) {
                    cdouble d = layer[static_cast<std::size_t>(s) * hp + hr];
                    if (d != cdouble(0, 0)) acc += d * c.t(s, sp);
                }
                next[static_cast<std::size_t>(sp) * cur_idx.size() + target] += acc;
            }
        }
        layer = std::move(next);
    }
    cdouble walk_mean = 0;
    const auto& idx = by_size[f.n];
    for (int s = 0; s < ns; ++s)
        for (long hr = 0; hr < idx.size(); ++hr) {
            cdouble d = layer[static_cast<std::size_t>(s) * idx.size() + hr];
            if (d != cdouble(0, 0)) walk_mean += d * f.values[hr];
        }
    return walk_mean - symmetric_mean(f, label_letter_probs(x, f));
}

} // namespace

cdouble bias_histogram(const LabeledExpander& x, const FiniteGroup& g,
                       const SymmetricFunction& f) {
    return bias_histogram_impl(x, g, f, true);
}

cdouble bias_histogram_serial(const LabeledExpander& x, const FiniteGroup& g,
                              const SymmetricFunction& f) {
    return bias_histogram_impl(x, g, f, false);
}

cdouble bias_raw(const LabeledExpander& x, const FiniteGroup& g, const RawFunction& f) {
    Matrix walk = brute_force_walk_oracle(x, f.n, 1, [&](const std::vector<int>& path) {
        std::vector<int> labels(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) labels[i] = x.label(path[i]);
        return Matrix::Constant(1, 1, f.eval(labels));
    });
    // uniform side: independent vertices, i.e. the empirical label law
    std::vector<double> p(g.order(), 0.0);
    for (int v = 0; v < x.size(); ++v) p[x.label(v)] += 1.0 / x.size();
    cdouble uni = 0;
    std::vector<int> labels(f.n, 0);
    std::function<void(int, double)> rec = [&](int pos, double w) {
        if (w == 0.0) return;
        if (pos == f.n) {
            uni += w * f.eval(labels);
            return;
        }
        for (int e = 0; e < g.order(); ++e) {
            labels[pos] = e;
            rec(pos + 1, w * p[e]);
        }
    };
    rec(0, 1.0);
    return walk(0, 0) - uni;
}

cdouble bias_word(const LabeledExpander& x, const FiniteGroup& g, const WordFunction& f) {
    // DP over (state, accumulated word value); positions outside the word
    // only advance the walk
    Chain c;
    if (auto lump = label_chain(x, g.order())) {
        c.t = *lump;
        c.letter.resize(g.order());
        c.pi.assign(g.order(), 0.0);
        for (int e = 0; e < g.order(); ++e) c.letter[e] = e;
        for (int v = 0; v < x.size(); ++v) c.pi[x.label(v)] += 1.0 / x.size();
    } else {
        c.t = x.walk_matrix();
        c.letter.resize(x.size());
        c.pi.assign(x.size(), 1.0 / x.size());
        for (int v = 0; v < x.size(); ++v) c.letter[v] = x.label(v);
    }
    const int ns = static_cast<int>(c.pi.size());
    const int order = g.order();
    auto word_letter = [&](int s, std::size_t w) {
        int e = c.letter[s];
        return f.exponents[w] == 1 ? e : g.inv(e);
    };

    // d[s][w] over states and accumulated products
    std::vector<double> d(static_cast<std::size_t>(ns) * order, 0.0);
    std::size_t w = 0;
    bool in_word = w < f.indices.size() && f.indices[w] == 1;
    for (int s = 0; s < ns; ++s) {
        int acc = in_word ? word_letter(s, 0) : g.identity();
        d[static_cast<std::size_t>(s) * order + acc] += c.pi[s];
    }
    if (in_word) ++w;
    for (int pos = 2; pos <= f.n; ++pos) {
        in_word = w < f.indices.size() && f.indices[w] == pos;
        std::vector<double> next(static_cast<std::size_t>(ns) * order, 0.0);
        for (int s = 0; s < ns; ++s)
            for (int acc = 0; acc < order; ++acc) {
                double mass = d[static_cast<std::size_t>(s) * order + acc];
                if (mass == 0.0) continue;
                for (int sp = 0; sp < ns; ++sp) {
                    double tw = c.t(s, sp);
                    if (tw == 0.0) continue;
                    int nacc = in_word ? g.mul(acc, word_letter(sp, w)) : acc;
                    next[static_cast<std::size_t>(sp) * order + nacc] += mass * tw;
                }
            }
        d = std::move(next);
        if (in_word) ++w;
    }
    cdouble walk_mean = 0;
    for (int s = 0; s < ns; ++s)
        for (int acc = 0; acc < order; ++acc)
            walk_mean += d[static_cast<std::size_t>(s) * order + acc] * f.h[acc];

    // uniform side: per-coordinate independent labels with the empirical law
    std::vector<double> p(order, 0.0);
    for (int v = 0; v < x.size(); ++v) p[x.label(v)] += 1.0 / x.size();
    std::vector<double> du(order, 0.0);
    du[g.identity()] = 1.0;
    for (std::size_t j = 0; j < f.indices.size(); ++j) {
        std::vector<double> nu(order, 0.0);
        for (int acc = 0; acc < order; ++acc) {
            if (du[acc] == 0.0) continue;
            for (int e = 0; e < order; ++e) {
                int letter = f.exponents[j] == 1 ? e : g.inv(e);
                nu[g.mul(acc, letter)] += du[acc] * p[e];
            }
        }
        du = std::move(nu);
    }
    cdouble uni = 0;
    for (int acc = 0; acc < order; ++acc) uni += du[acc] * f.h[acc];
    return walk_mean - uni;
}

Matrix product_walk_mean(const LabeledExpander& x, const FiniteGroup& g, const Irrep& rho,
                         int k) {
    if (k < 1) throw std::invalid_argument("product_walk_mean: k >= 1");
    const int nv = x.size();
    const int order = g.order();
    std::vector<double> d(static_cast<std::size_t>(nv) * order, 0.0);
    for (int v = 0; v < nv; ++v)
        d[static_cast<std::size_t>(v) * order + x.label(v)] = 1.0 / nv;
    for (int pos = 2; pos <= k; ++pos) {
        std::vector<double> next(static_cast<std::size_t>(nv) * order, 0.0);
        for (int v = 0; v < nv; ++v)
            for (int acc = 0; acc < order; ++acc) {
                double mass = d[static_cast<std::size_t>(v) * order + acc];
                if (mass == 0.0) continue;
                for (int u = 0; u < nv; ++u) {
                    double w = x.walk(v, u);
                    if (w == 0.0) continue;
                    next[static_cast<std::size_t>(u) * order + g.mul(acc, x.label(u))] +=
                        mass * w;
                }
            }
        d = std::move(next);
    }
    Matrix walk_mean = Matrix::Zero(rho.dim, rho.dim);
    std::vector<double> acc_mass(order, 0.0);
    for (int v = 0; v < nv; ++v)
        for (int acc = 0; acc < order; ++acc)
            acc_mass[acc] += d[static_cast<std::size_t>(v) * order + acc];
    for (int acc = 0; acc < order; ++acc) walk_mean += acc_mass[acc] * rho.mats[acc];

    // uniform mean of rho(product of k independent labels)
    std::vector<double> p(order, 0.0);
    for (int v = 0; v < nv; ++v) p[x.label(v)] += 1.0 / nv;
    std::vector<double> du(order, 0.0);
    du[g.identity()] = 1.0;
    for (int j = 0; j < k; ++j) {
        std::vector<double> nu(order, 0.0);
        for (int a = 0; a < order; ++a)
            for (int e = 0; e < order; ++e) nu[g.mul(a, e)] += du[a] * p[e];
        du = std::move(nu);
    }
    Matrix uni = Matrix::Zero(rho.dim, rho.dim);
    for (int a = 0; a < order; ++a) uni += du[a] * rho.mats[a];
    return walk_mean - uni;
}

namespace {

std::vector<cdouble> level_bias_impl(const LabeledExpander& x, const FiniteGroup& g,
                                     const SymmetricFunction& f, bool parallel) {
    auto unbiased = check_unbiased(x, g);
    if (!unbiased.pass)
        throw std::invalid_argument("level_bias_all requires an unbiased labeling: " +
                                    unbiased.reason);
    Chain c = make_chain(x, g, f);
    const int ns = static_cast<int>(c.pi.size());
    const int q = f.q;
    const int n = f.n;
    auto levels = symmetric_levels(f, f.uniform_letter_probs(), parallel);

    std::vector<HistogramIndexer> by_size;
    long states = 0;
    for (int t = 0; t <= n; ++t) {
        by_size.emplace_back(t, q);
        states += by_size.back().size();
    }
    std::vector<long> offset(n + 1);
    for (int t = 1; t <= n; ++t) offset[t] = offset[t - 1] + by_size[t - 1].size();

    // distribution over (state, selected-letter histogram of any size)
    std::vector<cdouble> layer(static_cast<std::size_t>(ns) * states, cdouble(0, 0));
    auto at = [&](std::vector<cdouble>& vec, int s, long h) -> cdouble& {
        return vec[static_cast<std::size_t>(s) * states + h];
    };
    {
        std::vector<int> h(q, 0);
        for (int s = 0; s < ns; ++s) {
            at(layer, s, 0) = c.pi[s];  // position 1 not selected
            h.assign(q, 0);
            h[c.letter[s]] = 1;
            at(layer, s, offset[1] + by_size[1].rank(h)) = c.pi[s];  // selected
        }
    }
    for (int pos = 2; pos <= n; ++pos) {
        std::vector<cdouble> next(static_cast<std::size_t>(ns) * states, cdouble(0, 0));
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
        for (int sp = 0; sp < ns; ++sp) {
            // not selected: histogram unchanged
            for (long h = 0; h < states; ++h) {
                cdouble acc = 0;
                for (int s = 0; s < ns; ++s) {
                    cdouble d = at(layer, s, h);
                    if (d != cdouble(0, 0)) acc += d * c.t(s, sp);
                }
                at(next, sp, h) = acc;
            }
            // selected: histogram gains this state's letter
            int letter = c.letter[sp];
            for (int sz = std::min(pos - 1, n - 1); sz >= 0; --sz) {
                const auto& idx = by_size[sz];
                std::vector<int> h;
                idx.first(h);
                long hr = 0;
                do {
                    cdouble moved = at(next, sp, offset[sz] + hr);
                    if (moved != cdouble(0, 0)) {
                        ++h[letter];
                        at(next, sp, offset[sz + 1] + by_size[sz + 1].rank(h)) += moved;
                        --h[letter];
                    }
                    ++hr;
                } while (idx.next(h));
            }
        }
        layer = std::move(next);
    }

    std::vector<cdouble> bias(n + 1, cdouble(0, 0));
    for (int k = 1; k <= n; ++k) {
        cdouble acc = 0;
        for (int s = 0; s < ns; ++s)
            for (long hr = 0; hr < by_size[k].size(); ++hr) {
                cdouble d = at(layer, s, offset[k] + hr);
                if (d != cdouble(0, 0)) acc += d * levels.component[k][hr];
            }
        bias[k] = acc;  // uniform mean of every level >= 1 component is zero
    }
    return bias;
}

} // namespace

std::vector<cdouble> level_bias_all(const LabeledExpander& x, const FiniteGroup& g,
                                    const SymmetricFunction& f) {
    return level_bias_impl(x, g, f, true);
}

std::vector<cdouble> level_bias_all_serial(const LabeledExpander& x, const FiniteGroup& g,
                                           const SymmetricFunction& f) {
    return level_bias_impl(x, g, f, false);
}

SampleBias sample_bias(const LabeledExpander& x,
                       const std::function<cdouble(const std::vector<int>&)>& f_of_labels,
                       int n, long samples, std::uint64_t seed, cdouble exact_uniform_mean) {
    if (samples < 1) throw std::invalid_argument("sample_bias: samples >= 1");
    const int nv = x.size();
    std::vector<std::vector<double>> cum(nv, std::vector<double>(nv));
    for (int v = 0; v < nv; ++v) {
        double acc = 0;
        for (int u = 0; u < nv; ++u) {
            acc += x.walk(v, u);
            cum[v][u] = acc;
        }
        cum[v][nv - 1] = 1.0;
    }
    constexpr int kShards = 64;
    std::vector<cdouble> shard_sum(kShards, cdouble(0, 0));
    std::vector<double> shard_sq(kShards, 0.0);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int shard = 0; shard < kShards; ++shard) {
        long lo = shard * samples / kShards, hi = (shard + 1) * samples / kShards;
        Philox rng(seed, 0x73616d70ull + shard);
        std::vector<int> labels(n);
        cdouble sum = 0;
        double sq = 0;
        for (long i = lo; i < hi; ++i) {
            int v = static_cast<int>(rng.next_index(nv));
            labels[0] = x.label(v);
            for (int t = 1; t < n; ++t) {
                double r = rng.next_double();
                v = static_cast<int>(std::lower_bound(cum[v].begin(), cum[v].end(), r) -
                                     cum[v].begin());
                labels[t] = x.label(v);
            }
            cdouble val = f_of_labels(labels);
            sum += val;
            sq += std::norm(val);
        }
        shard_sum[shard] = sum;
        shard_sq[shard] = sq;
    }
    cdouble total = 0;
    double total_sq = 0;
    for (int shard = 0; shard < kShards; ++shard) {  // ordered reduction
        total += shard_sum[shard];
        total_sq += shard_sq[shard];
    }
    SampleBias out;
    out.samples = samples;
    out.seed = seed;
    cdouble mean = total / static_cast<double>(samples);
    out.estimate = mean - exact_uniform_mean;
    if (samples > 1) {
        double var = (total_sq / samples - std::norm(mean)) * samples / (samples - 1.0);
        out.stderr_est = std::sqrt(std::max(0.0, var) / samples);
    }
    return out;
}

BetaResult beta_k(int n, int k, double lambda) {
    if (k < 2 || k > n) throw std::invalid_argument("beta_k: 2 <= k <= n");
    if (binom(n, k) > 1.0e7) throw std::invalid_argument("beta_k: C(n,k) > 1e7");
    BetaResult res;
    SubsetIterator subsets(n, k);
    std::vector<int> s;
    bool more = subsets.first(s);
    std::vector<int> gaps(k - 1);
    auto family = enumerate_gap_family(k);
    while (more) {
        for (int j = 0; j + 1 < k; ++j) gaps[j] = s[j + 1] - s[j];
        for (const auto& sel : family) {
            int expo = 0;
            for (int j : sel) expo += gaps[j - 1];
            res.exact += std::pow(lambda, expo);
        }
        more = subsets.next(s);
    }
    res.intermediate = std::pow(2.0, k) * binom(n - 1, k / 2) *
                       std::pow(lambda / (1.0 - lambda), k / 2.0);
    res.final_bound = std::sqrt(binom(n, k)) *
                      std::pow(16.0 * std::exp(1.0) * lambda, k / 2.0);
    return res;
}

} // namespace walklab
