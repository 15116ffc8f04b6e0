#pragma once

// L-infinity structures in the suspended, graded symmetric convention and
// their strong homotopy derivations. Symmetric maps keep full tables over all
// orderings of the inputs; symmetry is checked on construction.

#include "shd/homotopy_assoc.hpp"

namespace shd {

class LInfinityStructure : public OperationFamily {
public:
  /// Throws InputError when some l_n is not graded symmetric.
  LInfinityStructure(SpacePtr space, MapFamily l, int truncation);
  static LInfinityStructure zero(SpacePtr space, int truncation);
};

class SHDerivationL : public OperationFamily {
public:
  SHDerivationL(SpacePtr space, int k, MapFamily theta, int truncation);
  static SHDerivationL zero(SpacePtr space, int k, int truncation);
  int k() const { return degree(); }
};

/// sum_j sum_{sigma in Sh(j,n-j)} e(sigma) outer_{n-j+1}(inner_j(v_sigma(1..j)), v_sigma(j+1..n)),
/// with e(sigma) the Koszul sign of the rearrangement.
MultilinearMap unshuffle_composite(const OperationFamily& outer, const OperationFamily& inner, int n);

/// Higher Jacobi defect, arity n, degree 2.
MultilinearMap linfty_defect(const LInfinityStructure& L, int n);

/// sum_j sum_sigma e(sigma) [theta(l(..)..) - (-1)^k l(theta(..)..)], arity n, degree k+1.
MultilinearMap sh_defect(const LInfinityStructure& L, const SHDerivationL& theta, int n);

SHDerivationL tautological_derivation(const LInfinityStructure& L);

/// theta_n(v_1..v_n) = l_{n+1}(a, v_1..v_n); degree k+1 for a of degree k with l_1(a) = 0.
SHDerivationL inner_derivation(const LInfinityStructure& L, const GradedVector& a);

struct DglaDefects {
  std::optional<SymmetryViolation> antisymmetry;
  MultilinearMap jacobi;     // [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|} [b,[a,c]]
  MultilinearMap d_squared;  // d o_1 d
  MultilinearMap leibniz;    // d o_1 b - b o_1 d - b o_2 d
  bool ok() const {
    return !antisymmetry && jacobi.is_zero() && d_squared.is_zero() && leibniz.is_zero();
  }
};

DglaDefects check_dgla(const MultilinearMap& bracket, const MultilinearMap& differential);

/// Suspended structure l_1 = d', l_2 = [,]' on V = down A. With this choice the
/// symmetrization of from_dga(mu, d) equals from_dgla of the graded commutator.
LInfinityStructure from_dgla(const MultilinearMap& bracket, const MultilinearMap& differential);

// --- unsuspended skew symmetric presentation ------------------------------------

/// sum_{i+j=n+1} (-1)^{j(i-1)} sum_{sigma in Sh(j,i-1)} sgn(sigma) sigma.(l_i o_1 l_j), i, j >= 2.
MultilinearMap linfty_rhs_unsuspended(const MapFamily& l, const SpacePtr& A, int n);

/// -sum_{i+j=n+1} (-1)^{k+j(i-1)} sum_sigma sgn(sigma) sigma.(theta_i o_1 l_j + (-1)^{(k+1)i} l_i o_1 theta_j).
MultilinearMap sh_rhs_unsuspended_lie(const MapFamily& l, const MapFamily& theta, int k, const SpacePtr& A, int n);

MultilinearMap linfty_defect_unsuspended(const MultilinearMap& d, const MapFamily& l, int n);
MultilinearMap sh_defect_unsuspended_lie(const MultilinearMap& d, const MapFamily& l, const MapFamily& theta, int k,
                                         int n);

/// Renames L_1 := -d, L_n := (-1)^{n(n-1)/2} l_n and suspends.
LInfinityStructure suspend_linfty(const MultilinearMap& d, const MapFamily& l, const SpacePtr& V, int truncation);
/// Renames Theta_1 := theta_1, Theta_n := (-1)^{n(n-1)/2} theta_n and suspends.
SHDerivationL suspend_lie_derivation(const MapFamily& theta, int k, const SpacePtr& V, int truncation);

}  // namespace shd
