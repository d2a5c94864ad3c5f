#pragma once

#include <string>
#include <vector>

#include "walklab/group.hpp"
#include "walklab/linalg.hpp"

namespace walklab {

/// Explicit unitary irreducible representation: one matrix per group
/// element, with the character (trace) cached alongside.
struct Irrep {
    std::string name;
    int dim = 0;
    std::vector<Matrix> mats;     // indexed by element
    std::vector<cdouble> chars;   // trace of mats[g]
    bool is_trivial = false;

    const Matrix& mat(int g) const { return mats[g]; }
    cdouble chi(int g) const { return chars[g]; }
};

/// Complete list of irreps, trivial first, then ascending
/// (dim, lexicographic character). Supported: cyclic, dihedral,
/// symmetric(n<=5) and products thereof; throws otherwise.
std::vector<Irrep> irreps_of(const FiniteGroup& g);

/// Entrywise conjugate representation.
Irrep dual_irrep(const Irrep& rho);

/// Index of the irrep whose character is the conjugate of irreps[i].
int dual_index(const std::vector<Irrep>& irreps, int i);

struct CharacterTable {
    std::vector<std::string> names;
    std::vector<int> dims;
    std::vector<std::vector<cdouble>> rows;  // [irrep][class]
    ConjugacyPartition classes;

    int count() const { return static_cast<int>(rows.size()); }
    cdouble at_element(int row, int g) const { return rows[row][classes.class_of[g]]; }
};

/// Character table from explicit irreps when the family is supported,
/// otherwise via the class-sum (Burnside) eigenvector method.
CharacterTable character_table(const FiniteGroup& g);

/// CSV export: header row of class sizes, then one row per irrep
/// (name, dim, values as "re+imi" with 12 decimals).
std::string character_table_csv(const CharacterTable& t);

struct FourierCoefficients {
    std::vector<Matrix> by_irrep;  // aligned with the irrep list
};

/// fhat(rho) = E_x[f(x) rho(x)].
FourierCoefficients fourier_transform(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                      const std::vector<cdouble>& f);

/// f(x) = sum_rho d_rho <fhat(rho), rho(x)>_HS.
std::vector<cdouble> fourier_inverse(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                     const FourierCoefficients& coeffs);

/// sum_rho d_rho ||fhat(rho)||_HS^2; equals E|f|^2 by Plancherel.
double plancherel_sum(const std::vector<Irrep>& irreps, const FourierCoefficients& coeffs);

/// Multiplicities c^{alpha,beta}_gamma of each irrep in alpha (x) beta,
/// rounded from character inner products; throws if the rounding residue
/// exceeds 1e-6.
std::vector<int> cg_coefficients(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                                 const Irrep& alpha, const Irrep& beta);

/// All pairs at once: c[a][b][gamma].
struct CGTable {
    std::vector<std::vector<std::vector<int>>> c;
    const std::vector<int>& of(int a, int b) const { return c[a][b]; }
};
CGTable cg_table(const FiniteGroup& g, const std::vector<Irrep>& irreps);

/// Smallest dimension of a non-trivial irrep; throws for the trivial group.
int quasirandomness_degree(const CharacterTable& t);

/// E_g[prod_i chi_{rho_i}(g)], the multiplicity of the trivial irrep in the
/// tensor product; throws if the value is not a nonnegative integer within 1e-6.
long trivial_multiplicity(const FiniteGroup& g, const std::vector<Irrep>& irreps,
                          const std::vector<int>& rho_indices);

struct EtaResult {
    double exact_sq;             // sum over non-trivial tuples of squared trivial-multiplicities
    double class_bound_sq;       // sum_C |G|^{k-2}/|C|^{k-2} + 1
    double quasirandom_bound_sq; // 4 |G|^{k-1} / D^2
};

/// Computed over conjugacy-class pairs, avoiding |irreps|^k enumeration.
EtaResult eta_k(const FiniteGroup& g, const CharacterTable& t, int k);

/// sum_rho chi_rho(g) conj(chi_rho(h)); |G|/|C_g| when g ~ h, else 0.
cdouble schur_lhs(const CharacterTable& t, int g, int h);

} // namespace walklab
