#include "walklab/functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace walklab {

namespace {

void check_subset(const FiniteGroup& g, const std::vector<int>& a_set) {
    std::vector<char> seen(g.order(), 0);
    for (int a : a_set) {
        if (a < 0 || a >= g.order()) throw std::invalid_argument("subset element out of range");
        if (seen[a]) throw std::invalid_argument("subset has repeated elements");
        seen[a] = 1;
    }
}

long raw_size(const FiniteGroup& g, int n, long cap) {
    long size = 1;
    for (int i = 0; i < n; ++i) {
        size *= g.order();
        if (size > cap) throw std::invalid_argument("|G|^n exceeds the dense-table cap");
    }
    return size;
}

} // namespace

SymmetricFunction make_threshold(const FiniteGroup& g, const std::vector<int>& a_set, int t,
                                 int n) {
    check_subset(g, a_set);
    if (a_set.empty() || static_cast<int>(a_set.size()) == g.order())
        throw std::invalid_argument("threshold needs a non-empty proper subset");
    if (t < 0 || t > n + 1) throw std::invalid_argument("threshold t out of range [0, n+1]");
    SymmetricFunction f;
    f.n = n;
    f.q = 2;  // letter 1 = "in A"
    f.letter_of.assign(g.order(), 0);
    for (int a : a_set) f.letter_of[a] = 1;
    HistogramIndexer idx(n, 2);
    f.values.resize(idx.size());
    std::vector<int> h;
    idx.first(h);
    do {
        f.values[idx.rank(h)] = (h[1] >= t) ? 1.0 : 0.0;
    } while (idx.next(h));
    f.tag = "threshold(|A|=" + std::to_string(a_set.size()) + ",t=" + std::to_string(t) +
            ",n=" + std::to_string(n) + ")";
    return f;
}

SymmetricFunction symmetric_from_table(const FiniteGroup& g, int n, std::vector<cdouble> values,
                                       std::string tag) {
    SymmetricFunction f;
    f.n = n;
    f.q = g.order();
    f.letter_of.resize(g.order());
    for (int e = 0; e < g.order(); ++e) f.letter_of[e] = e;
    HistogramIndexer idx(n, f.q);
    if (static_cast<long>(values.size()) != idx.size())
        throw std::invalid_argument("histogram table has wrong size");
    f.values = std::move(values);
    f.tag = std::move(tag);
    return f;
}

SymmetricFunction histogram_indicator(const FiniteGroup& g, const std::vector<int>& h0, int n) {
    HistogramIndexer idx(n, g.order());
    std::vector<cdouble> values(idx.size(), cdouble(0, 0));
    values[idx.rank(h0)] = 1.0;
    return symmetric_from_table(g, n, std::move(values), "histogram_indicator");
}

double symmetric_l2_norm(const SymmetricFunction& f) {
    return symmetric_l2_norm(f, f.uniform_letter_probs());
}

double symmetric_l2_norm(const SymmetricFunction& f, const std::vector<double>& letter_probs) {
    HistogramIndexer idx(f.n, f.q);
    std::vector<int> h;
    idx.first(h);
    double acc = 0;
    do {
        acc += multinomial_weight(f.n, h, letter_probs) * std::norm(f.values[idx.rank(h)]);
    } while (idx.next(h));
    return std::sqrt(acc);
}

cdouble symmetric_mean(const SymmetricFunction& f, const std::vector<double>& letter_probs) {
    HistogramIndexer idx(f.n, f.q);
    std::vector<int> h;
    idx.first(h);
    cdouble acc = 0;
    do {
        acc += multinomial_weight(f.n, h, letter_probs) * f.values[idx.rank(h)];
    } while (idx.next(h));
    return acc;
}

WordFunction make_word_function(const FiniteGroup& g, std::vector<int> indices,
                                std::vector<int> exponents, std::vector<cdouble> h, int n) {
    if (indices.size() != exponents.size())
        throw std::invalid_argument("indices/exponents size mismatch");
    if (static_cast<int>(h.size()) != g.order())
        throw std::invalid_argument("outer function must cover G");
    std::vector<char> seen(n + 1, 0);
    for (std::size_t j = 0; j < indices.size(); ++j) {
        int i = indices[j];
        if (i < 1 || i > n) throw std::invalid_argument("word index out of range");
        if (seen[i]) throw std::invalid_argument("repeated index: word is not a monomial");
        seen[i] = 1;
        if (exponents[j] != 1 && exponents[j] != -1)
            throw std::invalid_argument("exponents must be +1 or -1");
    }
    // keep factors in increasing index order
    std::vector<std::size_t> perm(indices.size());
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
    WordFunction f;
    f.n = n;
    for (std::size_t j : perm) {
        f.indices.push_back(indices[j]);
        f.exponents.push_back(exponents[j]);
    }
    f.h = std::move(h);
    f.tag = "word(k=" + std::to_string(f.indices.size()) + ",n=" + std::to_string(n) + ")";
    return f;
}

WordFunction make_group_product(const FiniteGroup& g, int k, int target, int n) {
    if (k < 1 || k > n) throw std::invalid_argument("group product needs 1 <= k <= n");
    std::vector<int> idx(k), expo(k, 1);
    for (int j = 0; j < k; ++j) idx[j] = j + 1;
    std::vector<cdouble> h(g.order(), cdouble(0, 0));
    h[target] = 1.0;
    auto f = make_word_function(g, std::move(idx), std::move(expo), std::move(h), n);
    f.tag = "group_product(k=" + std::to_string(k) + ",t=" + g.label(target) + ")";
    return f;
}

RawFunction raw_from_symmetric(const FiniteGroup& g, const SymmetricFunction& f) {
    RawFunction out;
    out.n = f.n;
    out.group_order = g.order();
    long size = raw_size(g, f.n, 1000000);
    out.table.resize(size);
    std::vector<int> x(f.n, 0);
    for (long idx = 0; idx < size; ++idx) {
        long rem = idx;
        for (int i = f.n - 1; i >= 0; --i) {
            x[i] = static_cast<int>(rem % g.order());
            rem /= g.order();
        }
        out.table[idx] = f.eval_elements(x);
    }
    return out;
}

RawFunction raw_from_word(const FiniteGroup& g, const WordFunction& f) {
    RawFunction out;
    out.n = f.n;
    out.group_order = g.order();
    long size = raw_size(g, f.n, 1000000);
    out.table.resize(size);
    std::vector<int> x(f.n, 0);
    for (long idx = 0; idx < size; ++idx) {
        long rem = idx;
        for (int i = f.n - 1; i >= 0; --i) {
            x[i] = static_cast<int>(rem % g.order());
            rem /= g.order();
        }
        out.table[idx] = f.eval(g, x);
    }
    return out;
}

cdouble raw_mean(const RawFunction& f) {
    cdouble acc = 0;
    for (const auto& v : f.table) acc += v;
    return acc / static_cast<double>(f.table.size());
}

double raw_l2_norm(const RawFunction& f) {
    double acc = 0;
    for (const auto& v : f.table) acc += std::norm(v);
    return std::sqrt(acc / static_cast<double>(f.table.size()));
}

TensorFourier tensor_fourier(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                             const RawFunction& f) {
    const int n = f.n;
    const int nr = static_cast<int>(irreps.size());
    long tuple_count = 1;
    for (int i = 0; i < n; ++i) tuple_count *= nr;

    TensorFourier out;
    out.n = n;
    out.tuples.resize(tuple_count);
    out.coeffs.resize(tuple_count);
    const long table_size = static_cast<long>(f.table.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long ti = 0; ti < tuple_count; ++ti) {
        std::vector<int> tuple(n);
        long rem = ti;
        for (int i = n - 1; i >= 0; --i) {
            tuple[i] = static_cast<int>(rem % nr);
            rem /= nr;
        }
        int dim = 1;
        for (int i = 0; i < n; ++i) dim *= irreps[tuple[i]].dim;
        Matrix acc = Matrix::Zero(dim, dim);
        std::vector<int> x(n, 0);
        for (long xi = 0; xi < table_size; ++xi) {
            long r = xi;
            for (int i = n - 1; i >= 0; --i) {
                x[i] = static_cast<int>(r % g.order());
                r /= g.order();
            }
            if (f.table[xi] == cdouble(0, 0)) continue;
            Matrix m = irreps[tuple[0]].mats[x[0]];
            for (int i = 1; i < n; ++i) m = kron(m, irreps[tuple[i]].mats[x[i]]);
            acc += f.table[xi] * m;
        }
        out.tuples[ti] = std::move(tuple);
        out.coeffs[ti] = acc / static_cast<double>(table_size);
    }
    return out;
}

RawFunction level_component(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                            const RawFunction& f, int k) {
    auto tf = tensor_fourier(g, irreps, f);
    RawFunction out;
    out.n = f.n;
    out.group_order = f.group_order;
    out.table.assign(f.table.size(), cdouble(0, 0));
    const long table_size = static_cast<long>(f.table.size());

    for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
        const auto& tuple = tf.tuples[ti];
        int level = 0, dim = 1;
        for (int r : tuple) {
            if (!irreps[r].is_trivial) ++level;
            dim *= irreps[r].dim;
        }
        if (level != k) continue;
        if (tf.coeffs[ti].squaredNorm() < 1e-28) continue;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long xi = 0; xi < table_size; ++xi) {
            std::vector<int> x(f.n);
            long r = xi;
            for (int i = f.n - 1; i >= 0; --i) {
                x[i] = static_cast<int>(r % g.order());
                r /= g.order();
            }
            Matrix m = irreps[tuple[0]].mats[x[0]];
            for (int i = 1; i < f.n; ++i) m = kron(m, irreps[tuple[i]].mats[x[i]]);
            out.table[xi] += static_cast<double>(dim) * hs_inner(tf.coeffs[ti], m);
        }
    }
    return out;
}

SymmetricLevels symmetric_levels(const SymmetricFunction& f) {
    return symmetric_levels(f, f.uniform_letter_probs());
}

SymmetricLevels symmetric_levels(const SymmetricFunction& f,
                                 const std::vector<double>& letter_probs, bool parallel) {
    const int n = f.n, q = f.q;
    SymmetricLevels out;
    out.n = n;
    out.q = q;

    // conditional means g_m = E[f | first m coordinates], by averaging one
    // coordinate at a time from the top
    std::vector<std::vector<cdouble>> cond(n + 1);
    cond[n] = f.values;
    for (int m = n; m > 0; --m) {
        HistogramIndexer lo(m - 1, q), hi(m, q);
        cond[m - 1].assign(lo.size(), cdouble(0, 0));
        std::vector<int> h;
        lo.first(h);
        do {
            cdouble acc = 0;
            std::vector<int> h2 = h;
            for (int l = 0; l < q; ++l) {
                ++h2[l];
                acc += letter_probs[l] * cond[m][hi.rank(h2)];
                --h2[l];
            }
            cond[m - 1][lo.rank(h)] = acc;
        } while (lo.next(h));
    }

    // inclusion-exclusion over sub-histograms; slots are independent
    std::vector<HistogramIndexer> by_size;
    for (int s = 0; s <= n; ++s) by_size.emplace_back(s, q);
    out.component.resize(n + 1);
    out.level_norm_sq.assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        const HistogramIndexer& idx = by_size[k];
        out.component[k].assign(idx.size(), cdouble(0, 0));
        const long count = idx.size();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
        for (long r = 0; r < count; ++r) {
            auto h = idx.unrank(r);
            cdouble acc = 0;
            std::vector<int> sub(q, 0);
            // odometer over all sub-histograms of h
            while (true) {
                int s = 0;
                double ways = 1;
                for (int l = 0; l < q; ++l) {
                    s += sub[l];
                    ways *= binom(h[l], sub[l]);
                }
                double sign = ((k - s) % 2 == 0) ? 1.0 : -1.0;
                acc += sign * ways * cond[s][by_size[s].rank(sub)];
                int l = 0;
                while (l < q && sub[l] == h[l]) sub[l++] = 0;
                if (l == q) break;
                ++sub[l];
            }
            out.component[k][r] = acc;
        }
        std::vector<int> h;
        idx.first(h);
        long r = 0;
        do {
            out.level_norm_sq[k] += binom(n, k) * multinomial_weight(k, h, letter_probs) *
                                    std::norm(out.component[k][r++]);
        } while (idx.next(h));
    }
    return out;
}

double threshold_count(int t, int n, int a_size, int group_order) {
    if (t < 0 || t > n) return 0.0;
    return binom(n, t) * std::pow(a_size, t) * std::pow(group_order - a_size, n - t);
}

Matrix subset_indicator_coefficient(const FiniteGroup& g, const Irrep& rho,
                                    const std::vector<int>& a_set) {
    Matrix acc = Matrix::Zero(rho.dim, rho.dim);
    for (int a : a_set) acc += rho.mats[a];
    return acc / static_cast<double>(g.order());
}

Matrix threshold_level2_coefficient(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                    const std::vector<int>& a_set, int t, int n, int alpha,
                                    int i, int j) {
    if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("need 1 <= i < j <= n");
    if (irreps[alpha].is_trivial) throw std::invalid_argument("alpha must be non-trivial");
    check_subset(g, a_set);
    double scale = (threshold_count(t - 2, n - 2, static_cast<int>(a_set.size()), g.order()) -
                    threshold_count(t - 1, n - 2, static_cast<int>(a_set.size()), g.order())) /
                   std::pow(g.order(), n - 2);
    Matrix ia = subset_indicator_coefficient(g, irreps[alpha], a_set);
    Matrix ib = subset_indicator_coefficient(g, irreps[dual_index(irreps, alpha)], a_set);
    return scale * kron(ia, ib);
}

double lower_bound_constant(const FiniteGroup& g, const std::vector<int>& a_set, int n, int t) {
    check_subset(g, a_set);
    if (2 * static_cast<int>(a_set.size()) != g.order())
        throw std::invalid_argument("lower_bound_constant needs |A| = |G|/2");
    if (t < 2 || t > n - 1) throw std::invalid_argument("lower_bound_constant needs 2 <= t <= n-1");
    return (binom(n - 2, t - 1) - binom(n - 2, t - 2)) / std::pow(2.0, n - 2);
}

RawFunction project_diagonal(const FiniteGroup& g, const RawFunction& f) {
    RawFunction out;
    out.n = f.n;
    out.group_order = f.group_order;
    out.table.assign(f.table.size(), cdouble(0, 0));
    const long size = static_cast<long>(f.table.size());
    std::vector<int> x(f.n), hx(f.n);
    for (long xi = 0; xi < size; ++xi) {
        long r = xi;
        for (int i = f.n - 1; i >= 0; --i) {
            x[i] = static_cast<int>(r % g.order());
            r /= g.order();
        }
        cdouble acc = 0;
        for (int h = 0; h < g.order(); ++h) {
            long idx = 0;
            for (int i = 0; i < f.n; ++i) idx = idx * g.order() + g.mul(h, x[i]);
            acc += f.table[idx];
        }
        out.table[xi] = acc / static_cast<double>(g.order());
    }
    return out;
}

bool is_class_function(const FiniteGroup& g, const std::vector<cdouble>& f) {
    for (int x = 0; x < g.order(); ++x)
        for (int h = 0; h < g.order(); ++h) {
            int y = g.mul(g.mul(h, x), g.inv(h));
            if (std::abs(f[x] - f[y]) > 1e-12) return false;
        }
    return true;
}

std::vector<cdouble> class_fourier(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                   const std::vector<cdouble>& f) {
    if (!is_class_function(g, f))
        throw std::invalid_argument("class_fourier called on a non-class function");
    auto coeffs = fourier_transform(g, irreps, f);
    std::vector<cdouble> out(irreps.size());
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        const Matrix& m = coeffs.by_irrep[r];
        cdouble c = m.trace() / static_cast<double>(irreps[r].dim);
        if ((m - c * Matrix::Identity(m.rows(), m.cols())).norm() > 1e-9)
            throw std::runtime_error("class function coefficient is not scalar at " +
                                     irreps[r].name);
        out[r] = c;
    }
    return out;
}

std::string level_coefficients_csv(const std::vector<Irrep>& irreps, const TensorFourier& tf) {
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
        int level = 0;
        for (int r : tf.tuples[ti])
            if (!irreps[r].is_trivial) ++level;
        order.emplace_back(level, ti);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string csv = "level,irrep_tuple,hs_norm\n";
    char buf[64];
    for (const auto& [level, ti] : order) {
        std::string tuple;
        for (int r : tf.tuples[ti]) tuple += (tuple.empty() ? "" : "|") + irreps[r].name;
        std::snprintf(buf, sizeof buf, ",%.17g\n", tf.coeffs[ti].norm());
        csv += std::to_string(level) + "," + tuple + buf;
    }
    return csv;
}

WordSupportReport word_support_check(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                     const WordFunction& f) {
    auto raw = raw_from_word(g, f);
    auto tf = tensor_fourier(g, irreps, raw);

    WordSupportReport rep;
    rep.tuples_checked = static_cast<long>(tf.tuples.size());
    for (std::size_t ti = 0; ti < tf.tuples.size(); ++ti) {
        const auto& tuple = tf.tuples[ti];
        // admissible: trivial off S, matched rho on S^+ / rho* on S^-
        bool admissible = true;
        int base = -1;  // irrep carried by S^+, -1 until fixed
        std::size_t w = 0;
        for (int pos = 1; pos <= f.n && admissible; ++pos) {
            bool in_word = w < f.indices.size() && f.indices[w] == pos;
            int r = tuple[pos - 1];
            if (!in_word) {
                admissible = irreps[r].is_trivial;
                continue;
            }
            int as_plus = f.exponents[w] == 1 ? r : dual_index(irreps, r);
            if (base < 0) base = as_plus;
            admissible = (as_plus == base);
            ++w;
        }
        if (admissible) continue;
        double mass = tf.coeffs[ti].norm();
        if (mass > rep.max_off_support) {
            rep.max_off_support = mass;
            std::string desc;
            for (int r : tuple) desc += (desc.empty() ? "" : ",") + irreps[r].name;
            rep.worst = desc;
        }
    }
    rep.pass = rep.max_off_support < 1e-12;
    return rep;
}

} // namespace walklab
