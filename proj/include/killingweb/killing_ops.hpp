#pragma once

#include "killingweb/ktparams.hpp"
#include "killingweb/ratmatrix.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace kw {

/// Nijenhuis tensor N^i_{jk} of a symmetric tensor field given by component
/// polynomials (identity metric):
///   N^i_{jk} = K^i_ℓ K^ℓ_{[j,k]} + K^ℓ_{[j} K^i_{k],ℓ},
/// antisymmetric in (j,k). `xyz` gives the positions of x,y,z in the ring.
using Nijenhuis = std::array<std::array<std::array<Poly, 3>, 3>, 3>;
Nijenhuis nijenhuis_components(const Mat3<Poly>& K, const std::array<size_t, 3>& xyz);
Nijenhuis nijenhuis(const KTParams& k);

/// The three TSN identities, each reduced by total antisymmetry to a single
/// polynomial whose vanishing is the condition:
///   [0]: N^ℓ_{[jk} g_{i]ℓ},  [1]: N^ℓ_{[jk} K_{i]ℓ},  [2]: N^ℓ_{[jk} K_{i]m} K^m_ℓ.
std::array<Poly, 3> tsn_identities(const Mat3<Poly>& K, const std::array<size_t, 3>& xyz);

/// True iff all three TSN identities vanish identically for this tensor
/// (orthogonally integrable eigenvectors). Exact.
bool has_normal_eigenvectors(const KTParams& k);

struct TsnConditions {
    /// Coefficient equations of the generic symbolic expansion, one list per
    /// TSN identity: distinct normalized nonzero polynomials in the 21
    /// parameters obtained by collecting over (x,y,z) monomials.
    std::array<std::vector<Poly>, 3> equations;
    bool normal;
};

/// Symbolic census lists plus the exact normality verdict for `k`.
/// The census (10 quadratic, 35 cubic, 84 quartic equations) is computed once
/// and cached.
TsnConditions tsn_conditions(const KTParams& k);
const std::array<std::vector<Poly>, 3>& tsn_equation_census();

/// Discriminant of the characteristic polynomial of K^i_j, as a polynomial in
/// (x,y,z). Vanishes identically iff the eigenvalues fail to be simple.
Poly char_discriminant(const KTParams& k);
bool has_distinct_eigenvalues(const KTParams& k);

/// (ℒ_V K)^{ij} = V^ℓ ∂_ℓ K^{ij} − K^{ℓj} ∂_ℓ V^i − K^{iℓ} ∂_ℓ V^j.
Mat3<Poly> lie_derivative(const KVParams& v, const KTParams& k);

/// Lie derivative with the six Killing vector parameters kept symbolic; the
/// result lives over the ring (va1,va2,va3,vc1,vc2,vc3,x,y,z) and each entry
/// is linear in the first six variables. Used to assemble the linear system
/// for the symmetry algebra of a fixed tensor.
Mat3<Poly> lie_derivative_symbolic_kv(const KTParams& k);
const VarsPtr& kv_symbol_vars();

/// Infinitesimal generators of the isometry-group action on the 21-dimensional
/// parameter space. Row order U1,U2,U3,V1,V2,V3; column order as kKtParamNames;
/// entries are degree ≤ 1 polynomials in the 21 parameters.
struct GeneratorMatrix {
    std::array<std::array<Poly, kNumKtParams>, 6> rows;
};
const GeneratorMatrix& generator_matrix();
const VarsPtr& kt_param_vars();

/// Generator matrix evaluated at a parameter point.
RatMatrix generator_matrix_at(const KTParams& k);

/// Directional derivative of a 21-parameter polynomial along one generator row.
Poly generator_apply(const GeneratorMatrix& g, size_t row, const Poly& f);

/// dim 𝒦^p(Eⁿ) = (1/n)·C(n+p, p+1)·C(n+p−1, p).
std::int64_t dtt_dimension(int n, int p);

}  // namespace kw
