#include "walklab/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "walklab/rng.hpp"

namespace walklab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cdouble root_of_unity(int num, int den) {
    double th = kTwoPi * num / den;
    return {std::cos(th), std::sin(th)};
}

void attach_characters(Irrep& rho) {
    rho.chars.resize(rho.mats.size());
    for (std::size_t g = 0; g < rho.mats.size(); ++g) rho.chars[g] = rho.mats[g].trace();
    rho.is_trivial = true;
    for (const auto& m : rho.mats)
        if (m.rows() != 1 || std::abs(m(0, 0) - 1.0) > 1e-12) {
            rho.is_trivial = false;
            break;
        }
}

std::vector<Irrep> irreps_cyclic(int n) {
    std::vector<Irrep> out;
    for (int j = 0; j < n; ++j) {
        Irrep rho;
        rho.name = "chi" + std::to_string(j);
        rho.dim = 1;
        rho.mats.resize(n);
        for (int k = 0; k < n; ++k) {
            rho.mats[k] = Matrix::Constant(1, 1, root_of_unity(j * k, n));
        }
        attach_characters(rho);
        out.push_back(std::move(rho));
    }
    return out;
}

// Element index j*n+i means s^j r^i; see FiniteGroup::dihedral.
std::vector<Irrep> irreps_dihedral(int n) {
    int order = 2 * n;
    std::vector<Irrep> out;
    auto one_dim = [&](const std::string& name, auto value) {
        Irrep rho;
        rho.name = name;
        rho.dim = 1;
        rho.mats.resize(order);
        for (int j = 0; j < 2; ++j)
            for (int i = 0; i < n; ++i)
                rho.mats[j * n + i] = Matrix::Constant(1, 1, cdouble(value(j, i), 0.0));
        attach_characters(rho);
        out.push_back(std::move(rho));
    };
    one_dim("triv", [](int, int) { return 1.0; });
    one_dim("sgn_s", [](int j, int) { return j ? -1.0 : 1.0; });
    if (n % 2 == 0) {
        one_dim("sgn_r", [](int, int i) { return i % 2 ? -1.0 : 1.0; });
        one_dim("sgn_rs", [](int j, int i) { return (i + j) % 2 ? -1.0 : 1.0; });
    }
    Matrix swap(2, 2);
    swap << 0, 1, 1, 0;
    for (int h = 1; 2 * h < n; ++h) {
        Irrep rho;
        rho.name = "rot" + std::to_string(h);
        rho.dim = 2;
        rho.mats.resize(order);
        for (int i = 0; i < n; ++i) {
            Matrix d = Matrix::Zero(2, 2);
            d(0, 0) = root_of_unity(h * i, n);
            d(1, 1) = root_of_unity(-h * i, n);
            rho.mats[i] = d;
            rho.mats[n + i] = swap * d;
        }
        attach_characters(rho);
        out.push_back(std::move(rho));
    }
    return out;
}

// ---- Young's orthogonal form for symmetric groups ----

using Tableau = std::vector<std::pair<int, int>>;  // value v -> (row, col), 0-based

void gen_tableaux(const std::vector<int>& shape, int v, int n, std::vector<int>& fill,
                  Tableau& cur, std::vector<Tableau>& out) {
    if (v == n) {
        out.push_back(cur);
        return;
    }
    for (std::size_t r = 0; r < shape.size(); ++r) {
        int c = fill[r];
        if (c >= shape[r]) continue;
        if (r > 0 && fill[r - 1] <= c) continue;
        cur[v] = {static_cast<int>(r), c};
        ++fill[r];
        gen_tableaux(shape, v + 1, n, fill, cur, out);
        --fill[r];
    }
}

void gen_partitions(int n, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

// Matrices of the adjacent transpositions (a,a+1) over the standard-tableaux
// basis, then arbitrary permutations by decomposing into adjacent swaps.
std::vector<Irrep> irreps_symmetric(const FiniteGroup& g, int n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> scratch;
    gen_partitions(n, n, scratch, parts);

    // one-line notation of every element, recovered from labels ("231" etc.)
    int order = g.order();
    std::vector<std::vector<int>> perm(order, std::vector<int>(n));
    for (int e = 0; e < order; ++e)
        for (int x = 0; x < n; ++x) perm[e][x] = g.label(e)[x] - '1';

    std::vector<Irrep> out;
    for (const auto& shape : parts) {
        std::vector<Tableau> tabs;
        std::vector<int> fill(shape.size(), 0);
        Tableau cur(n);
        gen_tableaux(shape, 0, n, fill, cur, tabs);
        int d = static_cast<int>(tabs.size());

        std::map<Tableau, int> index_of;
        for (int t = 0; t < d; ++t) index_of[tabs[t]] = t;

        std::vector<Matrix> gen(std::max(0, n - 1));
        for (int a = 0; a + 1 < n; ++a) {  // transposition of values a+1, a+2 (1-based)
            Matrix m = Matrix::Zero(d, d);
            for (int t = 0; t < d; ++t) {
                auto [r1, c1] = tabs[t][a];
                auto [r2, c2] = tabs[t][a + 1];
                int dist = (c2 - r2) - (c1 - r1);  // axial distance, never 0
                m(t, t) = 1.0 / dist;
                if (r1 != r2 && c1 != c2) {
                    Tableau swapped = tabs[t];
                    std::swap(swapped[a], swapped[a + 1]);
                    m(index_of.at(swapped), t) = std::sqrt(1.0 - 1.0 / (dist * dist));
                }
            }
            gen[a] = m;
        }

        Irrep rho;
        std::string nm = "yt";
        for (std::size_t i = 0; i < shape.size(); ++i)
            nm += (i ? "_" : "") + std::to_string(shape[i]);
        rho.name = nm;
        rho.dim = d;
        rho.mats.resize(order);
        for (int e = 0; e < order; ++e) {
            // bubble-sort p by right-multiplication with adjacent swaps:
            // p o s_{a1} o ... o s_{am} = id  =>  p = s_{am} o ... o s_{a1}
            std::vector<int> p = perm[e];
            Matrix m = Matrix::Identity(d, d);
            bool moved = true;
            while (moved) {
                moved = false;
                for (int i = 0; i + 1 < n; ++i) {
                    if (p[i] > p[i + 1]) {
                        std::swap(p[i], p[i + 1]);  // p <- p o s_i
                        m = gen[i] * m;  // so p = s_{a_m} o ... o s_{a_1}
                        moved = true;
                    }
                }
            }
            rho.mats[e] = m;
        }
        attach_characters(rho);
        out.push_back(std::move(rho));
    }
    return out;
}

std::vector<Irrep> irreps_product(const FiniteGroup& g, const nlohmann::json& spec) {
    FiniteGroup a = construct_group(spec.at("a"));
    FiniteGroup b = construct_group(spec.at("b"));
    auto ia = irreps_of(a);
    auto ib = irreps_of(b);
    int nb = b.order();
    std::vector<Irrep> out;
    for (const auto& ra : ia)
        for (const auto& rb : ib) {
            Irrep rho;
            rho.name = ra.name + "*" + rb.name;
            rho.dim = ra.dim * rb.dim;
            rho.mats.resize(g.order());
            for (int i = 0; i < a.order(); ++i)
                for (int j = 0; j < nb; ++j) rho.mats[i * nb + j] = kron(ra.mats[i], rb.mats[j]);
            attach_characters(rho);
            out.push_back(std::move(rho));
        }
    return out;
}

bool complex_less(const cdouble& a, const cdouble& b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    if (std::abs(a.imag() - b.imag()) > 1e-9) return a.imag() < b.imag();
    return false;
}

bool char_vector_less(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (complex_less(a[i], b[i])) return true;
        if (complex_less(b[i], a[i])) return false;
    }
    return false;
}

void canonical_sort(std::vector<Irrep>& irreps) {
    std::stable_sort(irreps.begin(), irreps.end(), [](const Irrep& x, const Irrep& y) {
        if (x.is_trivial != y.is_trivial) return x.is_trivial;
        if (x.dim != y.dim) return x.dim < y.dim;
        return char_vector_less(x.chars, y.chars);
    });
}

} // namespace

std::vector<Irrep> irreps_of(const FiniteGroup& g) {
    const auto& spec = g.family_spec();
    const std::string family = spec.value("family", "custom");
    std::vector<Irrep> out;
    if (family == "cyclic") {
        out = irreps_cyclic(spec.at("n").get<int>());
    } else if (family == "dihedral") {
        out = irreps_dihedral(spec.at("n").get<int>());
    } else if (family == "symmetric") {
        int n = spec.at("n").get<int>();
        if (n > 5) throw std::invalid_argument("irreps_of: symmetric(n) supported up to n = 5");
        out = irreps_symmetric(g, n);
    } else if (family == "product") {
        out = irreps_product(g, spec);
    } else {
        throw std::invalid_argument("irreps_of: no irrep constructor for " + g.family_tag() +
                                    " (use character_table)");
    }
    long dim_sq = 0;
    for (const auto& r : out) dim_sq += static_cast<long>(r.dim) * r.dim;
    if (dim_sq != g.order())
        throw std::runtime_error("irreps_of: dimension count mismatch for " + g.family_tag());
    canonical_sort(out);
    return out;
}

Irrep dual_irrep(const Irrep& rho) {
    Irrep out;
    out.name = rho.name + "*";
    out.dim = rho.dim;
    out.mats.resize(rho.mats.size());
    for (std::size_t i = 0; i < rho.mats.size(); ++i) out.mats[i] = rho.mats[i].conjugate();
    attach_characters(out);
    return out;
}

int dual_index(const std::vector<Irrep>& irreps, int i) {
    const auto& chars = irreps[i].chars;
    for (std::size_t j = 0; j < irreps.size(); ++j) {
        if (irreps[j].dim != irreps[i].dim) continue;
        double err = 0;
        for (std::size_t e = 0; e < chars.size(); ++e)
            err = std::max(err, std::abs(irreps[j].chars[e] - std::conj(chars[e])));
        if (err < 1e-8) return static_cast<int>(j);
    }
    throw std::runtime_error("dual_index: no conjugate partner for " + irreps[i].name);
}

namespace {

CharacterTable table_from_irreps(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
    CharacterTable t;
    t.classes = conjugacy_classes(g);
    for (const auto& rho : irreps) {
        t.names.push_back(rho.name);
        t.dims.push_back(rho.dim);
        std::vector<cdouble> row;
        for (const auto& cls : t.classes.classes) row.push_back(rho.chars[cls.front()]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Class-sum eigenvector method: the vectors (omega_k) with
// omega_k = |C_k| chi(g_k)/chi(1) are the common eigenvectors of the class
// multiplication matrices.
CharacterTable table_burnside(const FiniteGroup& g) {
    auto classes = conjugacy_classes(g);
    const int m = static_cast<int>(classes.classes.size());
    const int order = g.order();

    std::vector<RealMatrix> cls_mat(m, RealMatrix::Zero(m, m));
    std::vector<int> rep(m);
    for (int k = 0; k < m; ++k) rep[k] = classes.classes[k].front();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            std::vector<double> count(m, 0.0);
            for (int x : classes.classes[i])
                for (int y : classes.classes[j]) {
                    int z = g.mul(x, y);
                    // count only products landing on the class representative
                    if (z == rep[classes.class_of[z]]) count[classes.class_of[z]] += 1.0;
                }
            for (int k = 0; k < m; ++k) cls_mat[i](j, k) = count[k];
        }
    }

    Philox rng(0x62757273u, 7);
    std::string diag;
    for (int attempt = 0; attempt < 32; ++attempt) {
        RealMatrix combo = RealMatrix::Zero(m, m);
        for (int i = 0; i < m; ++i) combo += (0.1 + rng.next_double()) * cls_mat[i];
        Eigen::ComplexEigenSolver<Matrix> es(combo.cast<cdouble>());
        if (es.info() != Eigen::Success) {
            diag = "eigensolver failed to converge";
            continue;
        }
        double scale = es.eigenvalues().cwiseAbs().maxCoeff() + 1.0;
        bool separated = true;
        for (int a = 0; a < m && separated; ++a)
            for (int b = a + 1; b < m; ++b)
                if (std::abs(es.eigenvalues()(a) - es.eigenvalues()(b)) < 1e-6 * scale) {
                    separated = false;
                    break;
                }
        if (!separated) {
            diag = "degenerate random combination";
            continue;
        }

        CharacterTable t;
        t.classes = classes;
        bool ok = true;
        for (int col = 0; col < m && ok; ++col) {
            Vector v = es.eigenvectors().col(col);
            int p = 0;
            for (int i = 1; i < m; ++i)
                if (std::abs(v(i)) > std::abs(v(p))) p = i;
            std::vector<cdouble> omega(m);
            for (int i = 0; i < m; ++i) {
                Vector mv = cls_mat[i].cast<cdouble>() * v;
                omega[i] = mv(p) / v(p);
                if ((mv - omega[i] * v).norm() > 1e-7 * v.norm() * (1.0 + std::abs(omega[i]))) {
                    ok = false;
                    diag = "common-eigenvector residual too large";
                    break;
                }
            }
            if (!ok) break;
            double s = 0;
            for (int i = 0; i < m; ++i)
                s += std::norm(omega[i]) / static_cast<double>(classes.classes[i].size());
            double d_real = std::sqrt(order / s);
            int d = static_cast<int>(std::lround(d_real));
            if (std::abs(d_real - d) > 1e-6 || d < 1) {
                ok = false;
                diag = "non-integer irrep dimension " + std::to_string(d_real);
                break;
            }
            std::vector<cdouble> row(m);
            for (int i = 0; i < m; ++i)
                row[i] = static_cast<double>(d) * omega[i] /
                         static_cast<double>(classes.classes[i].size());
            t.names.push_back("");
            t.dims.push_back(d);
            t.rows.push_back(std::move(row));
        }
        if (!ok) continue;

        long dim_sq = 0;
        for (int d : t.dims) dim_sq += static_cast<long>(d) * d;
        if (dim_sq != order) {
            diag = "dimension count mismatch";
            continue;
        }

        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            bool ta = t.dims[a] == 1, tb = t.dims[b] == 1;
            double ea = 0, eb = 0;
            for (int i = 0; i < m; ++i) {
                ea = std::max(ea, std::abs(t.rows[a][i] - 1.0));
                eb = std::max(eb, std::abs(t.rows[b][i] - 1.0));
            }
            ta = ta && ea < 1e-8;
            tb = tb && eb < 1e-8;
            if (ta != tb) return ta;
            if (t.dims[a] != t.dims[b]) return t.dims[a] < t.dims[b];
            return char_vector_less(t.rows[a], t.rows[b]);
        });
        CharacterTable sorted;
        sorted.classes = classes;
        for (int r = 0; r < m; ++r) {
            sorted.names.push_back("rho" + std::to_string(r));
            sorted.dims.push_back(t.dims[idx[r]]);
            sorted.rows.push_back(t.rows[idx[r]]);
        }
        return sorted;
    }
    throw std::runtime_error("character_table: class-sum eigen-decomposition failed (" + diag +
                             ")");
}

} // namespace

CharacterTable character_table(const FiniteGroup& g) {
    if (g.order() > 10000)
        throw std::invalid_argument("character_table: order capped at 10,000");
    try {
        return table_from_irreps(g, irreps_of(g));
    } catch (const std::invalid_argument&) {
        return table_burnside(g);
    }
}

std::string character_table_csv(const CharacterTable& t) {
    std::string out = "class_sizes";
    for (const auto& cls : t.classes.classes) out += "," + std::to_string(cls.size());
    out += "\n";
    char buf[80];
    for (int r = 0; r < t.count(); ++r) {
        out += t.names[r] + "," + std::to_string(t.dims[r]);
        for (const auto& v : t.rows[r]) {
            std::snprintf(buf, sizeof buf, ",%.12f%+.12fi", v.real(), v.imag());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

FourierCoefficients fourier_transform(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                      const std::vector<cdouble>& f) {
    FourierCoefficients out;
    const double inv_order = 1.0 / g.order();
    for (const auto& rho : irreps) {
        Matrix acc = Matrix::Zero(rho.dim, rho.dim);
        for (int x = 0; x < g.order(); ++x) acc += f[x] * rho.mats[x];
        out.by_irrep.push_back(acc * inv_order);
    }
    return out;
}

std::vector<cdouble> fourier_inverse(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                     const FourierCoefficients& coeffs) {
    std::vector<cdouble> f(g.order(), cdouble(0, 0));
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        const auto& rho = irreps[r];
        for (int x = 0; x < g.order(); ++x)
            f[x] += static_cast<double>(rho.dim) * hs_inner(coeffs.by_irrep[r], rho.mats[x]);
    }
    return f;
}

double plancherel_sum(const std::vector<Irrep>& irreps, const FourierCoefficients& coeffs) {
    double s = 0;
    for (std::size_t r = 0; r < irreps.size(); ++r)
        s += irreps[r].dim * coeffs.by_irrep[r].squaredNorm();
    return s;
}

std::vector<int> cg_coefficients(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                 const Irrep& alpha, const Irrep& beta) {
    std::vector<int> out(irreps.size());
    for (std::size_t k = 0; k < irreps.size(); ++k) {
        cdouble acc = 0;
        for (int x = 0; x < g.order(); ++x)
            acc += alpha.chars[x] * beta.chars[x] * std::conj(irreps[k].chars[x]);
        acc /= static_cast<double>(g.order());
        long c = std::lround(acc.real());
        if (std::abs(acc - cdouble(static_cast<double>(c), 0)) > 1e-6 || c < 0)
            throw std::runtime_error("cg_coefficients: non-integer multiplicity for " +
                                     alpha.name + " x " + beta.name + " -> " + irreps[k].name);
        out[k] = static_cast<int>(c);
    }
    // dimension count d_a d_b = sum_gamma c_gamma d_gamma
    long total = 0;
    for (std::size_t k = 0; k < irreps.size(); ++k) total += static_cast<long>(out[k]) * irreps[k].dim;
    if (total != static_cast<long>(alpha.dim) * beta.dim)
        throw std::runtime_error("cg_coefficients: dimension count mismatch");
    return out;
}

CGTable cg_table(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
    CGTable t;
    t.c.resize(irreps.size());
    for (std::size_t a = 0; a < irreps.size(); ++a) {
        t.c[a].resize(irreps.size());
        for (std::size_t b = 0; b < irreps.size(); ++b)
            t.c[a][b] = cg_coefficients(g, irreps, irreps[a], irreps[b]);
    }
    return t;
}

int quasirandomness_degree(const CharacterTable& t) {
    int best = 0;
    for (int r = 0; r < t.count(); ++r) {
        bool trivial = true;
        for (const auto& v : t.rows[r])
            if (std::abs(v - 1.0) > 1e-8) {
                trivial = false;
                break;
            }
        if (!trivial && (best == 0 || t.dims[r] < best)) best = t.dims[r];
    }
    if (best == 0)
        throw std::invalid_argument("quasirandomness_degree: trivial group has no non-trivial irrep");
    return best;
}

long trivial_multiplicity(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                          const std::vector<int>& rho_indices) {
    if (rho_indices.empty()) throw std::invalid_argument("trivial_multiplicity: need k >= 1");
    cdouble acc = 0;
    for (int x = 0; x < g.order(); ++x) {
        cdouble prod = 1;
        for (int r : rho_indices) prod *= irreps[r].chars[x];
        acc += prod;
    }
    acc /= static_cast<double>(g.order());
    long c = std::lround(acc.real());
    if (std::abs(acc - cdouble(static_cast<double>(c), 0)) > 1e-6 || c < 0)
        throw std::runtime_error("trivial_multiplicity: non-integer value");
    return c;
}

EtaResult eta_k(const FiniteGroup& g, const CharacterTable& t, int k) {
    if (k < 1) throw std::invalid_argument("eta_k: need k >= 1");
    const double order = g.order();
    // sum over class pairs of prod_i (|G|/|C_g| 1[g~h] - 1); identical factors
    double same = 0, p_same = 0;
    for (const auto& cls : t.classes.classes) {
        double frac = cls.size() / order;
        p_same += frac * frac;
        same += frac * frac * std::pow(order / cls.size() - 1.0, k);
    }
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    EtaResult res;
    res.exact_sq = same + (1.0 - p_same) * sign;
    res.class_bound_sq = 1.0;
    for (const auto& cls : t.classes.classes)
        res.class_bound_sq += std::pow(order / cls.size(), k - 2);
    try {
        int d = quasirandomness_degree(t);
        res.quasirandom_bound_sq = 4.0 * std::pow(order, k - 1) / (static_cast<double>(d) * d);
    } catch (const std::invalid_argument&) {
        res.quasirandom_bound_sq = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

cdouble schur_lhs(const CharacterTable& t, int g, int h) {
    cdouble acc = 0;
    for (int r = 0; r < t.count(); ++r)
        acc += t.at_element(r, g) * std::conj(t.at_element(r, h));
    return acc;
}

} // namespace walklab
