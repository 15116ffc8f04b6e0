#pragma once

// A-infinity structures in the suspended convention (every m_n of degree +1 on
// V), their strong homotopy derivations of degree k, and the bridges to the
// unsuspended presentation (operations of degree 2-n on A = up V).

#include <optional>
#include <string>
#include <utility>

#include "shd/graded.hpp"

namespace shd {

/// A family {f_n} of maps on one space, each of arity n and a common degree,
/// with f_n = 0 for n > truncation.
class OperationFamily {
public:
  OperationFamily(SpacePtr space, int degree, MapFamily maps, int truncation);

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  int truncation() const { return truncation_; }
  const MapFamily& maps() const { return maps_; }
  /// nullptr when f_n is zero.
  const MultilinearMap* at(int n) const { return family_at(maps_, n); }
  /// f_n, or the zero map of arity n.
  MultilinearMap get(int n) const;

private:
  SpacePtr space_;
  int degree_;
  MapFamily maps_;
  int truncation_;
};

/// m_n : V^{(x)n} -> V of degree 1, n >= 1.
class AInfinityStructure : public OperationFamily {
public:
  AInfinityStructure(SpacePtr space, MapFamily m, int truncation);
  static AInfinityStructure zero(SpacePtr space, int truncation);
};

/// theta_q : V^{(x)q} -> V of degree k, q >= 1.
class SHDerivationA : public OperationFamily {
public:
  SHDerivationA(SpacePtr space, int k, MapFamily theta, int truncation);
  static SHDerivationA zero(SpacePtr space, int k, int truncation);
  int k() const { return degree(); }
};

/// sum_{r+s=n+1} sum_i m_r o_i m_s, an arity-n map of degree 2. Zero for all
/// n exactly when M is an A-infinity structure.
MultilinearMap ainfty_defect(const AInfinityStructure& M, int n);

/// sum_{r+s=q+1} sum_i theta_r o_i m_s - (-1)^k m_r o_i theta_s, arity q,
/// degree k+1. The Koszul signs of o_i realise the prefix exponents
/// beta = sum_{j<=i}|v_j| and gamma = k * sum_{j<=i}|v_j|.
MultilinearMap sh_defect(const AInfinityStructure& M, const SHDerivationA& theta, int q);

/// theta_q := m_q, degree 1.
SHDerivationA tautological_derivation(const AInfinityStructure& M);

/// theta_n(v) = sum_{p=0}^n (-1)^{k (|v_1|+..+|v_p|)} m_{n+1}(v_1..v_p, a, v_{p+1}..v_n)
/// for homogeneous a of degree k with m_1(a) = 0; a derivation of degree k+1.
SHDerivationA inner_derivation(const AInfinityStructure& M, const GradedVector& a);

/// Individual failures of the dg associative algebra axioms on A.
struct DgaDefects {
  MultilinearMap associativity;  // mu o_1 mu - mu o_2 mu
  MultilinearMap d_squared;      // d o_1 d
  MultilinearMap leibniz;        // d o_1 mu - mu o_1 d - mu o_2 d
  bool ok() const { return associativity.is_zero() && d_squared.is_zero() && leibniz.is_zero(); }
};

DgaDefects check_dga(const MultilinearMap& product, const MultilinearMap& differential);

/// Suspended structure on V = down A with m_1 = d', m_2 = mu'. Throws
/// PreconditionError naming every failing axiom.
AInfinityStructure from_dga(const MultilinearMap& product, const MultilinearMap& differential);

/// Defects of a strict degree-k derivation theta of a strict structure (m_1, m_2):
/// commutation m_1 o theta - (-1)^k theta o m_1 and the Leibniz defect
/// theta o_1 m_2 - (-1)^k (m_2 o_1 theta + m_2 o_2 theta).
std::pair<MultilinearMap, MultilinearMap> strict_derivation_defect(const AInfinityStructure& M,
                                                                   const MultilinearMap& theta1);

// --- unsuspended presentation -------------------------------------------------

/// d o_1 f - (-1)^{|f|} sum_l f o_l d, the differential of End_A.
MultilinearMap endomorphism_differential(const MultilinearMap& d, const MultilinearMap& f);

/// sum_{i+j=n+1} sum_{l=1}^{i} (-1)^{i+(l+1)(j+1)} m_i o_l m_j over i, j >= 2.
MultilinearMap ainfty_rhs_unsuspended(const MapFamily& m, const SpacePtr& A, int n);

/// sum_{i+j=n+1} sum_l (-1)^{k+1+i+(l+1)(j+1)} (theta_i o_l m_j + (-1)^{(k+1)i} m_i o_l theta_j),
/// with theta_i for i >= 1 and m_j for j >= 2.
MultilinearMap sh_rhs_unsuspended(const MapFamily& m, const MapFamily& theta, int k, const SpacePtr& A, int n);

/// Left minus right hand side of the unsuspended A-infinity relation (d o d for n = 1).
MultilinearMap ainfty_defect_unsuspended(const MultilinearMap& d, const MapFamily& m, int n);

/// Left minus right hand side of the unsuspended derivation relation.
MultilinearMap sh_defect_unsuspended(const MultilinearMap& d, const MapFamily& m, const MapFamily& theta, int k,
                                     int n);

/// Suspends (d, {m_n}_{n>=2}) on A into a structure on V with m_1 = d'.
AInfinityStructure suspend_ainfty(const MultilinearMap& d, const MapFamily& m, const SpacePtr& V, int truncation);

/// Inverse of suspend_ainfty: returns (d, {m_n}_{n>=2}) on A.
std::pair<MultilinearMap, MapFamily> desuspend_ainfty(const AInfinityStructure& M, const SpacePtr& A);

/// Suspends an unsuspended derivation family (theta_n of degree k-n+1).
SHDerivationA suspend_derivation(const MapFamily& theta, int k, const SpacePtr& V, int truncation);
MapFamily desuspend_derivation(const SHDerivationA& theta, const SpacePtr& A);

/// First nonzero entry of a defect map as a readable string; nullopt for zero.
std::optional<std::string> first_failure(const MultilinearMap& defect);

}  // namespace shd
