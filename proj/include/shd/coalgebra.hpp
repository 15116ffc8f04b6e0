#pragma once

// Words in the tensor coalgebra T^c(V) and the symmetric coalgebra S^c(V),
// coderivations stored through their projections onto V, their brackets, and
// the symmetrization map chi : S^c(V) -> T^c(V).

#include <optional>

#include "shd/homotopy_lie.hpp"

namespace shd {

using TensorWord = std::vector<int>;
/// Sparse linear combination of words. For symmetric words the keys are canonical.
using WordCombination = std::map<std::vector<int>, Rational>;
/// Sparse combination of pairs of words, for coproducts.
using WordPairCombination = std::map<std::pair<std::vector<int>, std::vector<int>>, Rational>;

void add_scaled(WordCombination& into, const WordCombination& from, const Rational& factor);

/// Canonical form of the symmetric word v_1..v_n: factors sorted by (degree, label).
/// Returns the sorted factors and the Koszul sign of the rearrangement, or nullopt
/// when an odd-degree label repeats (the word is zero).
std::optional<std::pair<std::vector<int>, Sign>> normalize_sym(const GradedVectorSpace& space,
                                                               const std::vector<int>& factors);

/// The symmetric word given by the factors, as a combination (empty or one term).
WordCombination sym_word(const GradedVectorSpace& space, const std::vector<int>& factors);

enum class Flavor { Tensor, Symmetric };

class Coderivation {
public:
  /// Projections must all have the given degree; symmetric projections must be
  /// graded symmetric. theta0, when present, makes the coderivation unital and
  /// must be homogeneous of the same degree (or zero).
  Coderivation(SpacePtr space, int degree, Flavor flavor, MapFamily projections,
               std::optional<GradedVector> theta0 = std::nullopt);

  const SpacePtr& space() const { return space_; }
  int degree() const { return degree_; }
  Flavor flavor() const { return flavor_; }
  const MapFamily& projections() const { return projections_; }
  const std::optional<GradedVector>& theta0() const { return theta0_; }
  bool unital() const { return theta0_.has_value(); }
  int max_arity() const { return projections_.empty() ? 0 : projections_.rbegin()->first; }
  const MultilinearMap* at(int n) const { return family_at(projections_, n); }

private:
  SpacePtr space_;
  int degree_;
  Flavor flavor_;
  MapFamily projections_;
  std::optional<GradedVector> theta0_;
};

/// Lift of F to T^c(V):
/// F(w) = sum_{i,j} (-1)^{k(|w_1|+..+|w_i|)} w_1..w_i f_j(w_{i+1}..w_{i+j}) w_{i+j+1}..w_n,
/// plus insertions of theta0 at all n+1 gaps in unital mode.
WordCombination apply_tensor(const Coderivation& F, const TensorWord& w);
WordCombination apply_tensor(const Coderivation& F, const WordCombination& c);

/// Lift of F to S^c(V):
/// F(v_1..v_n) = sum_j sum_{sigma in Sh(j,n-j)} e(sigma) f_j(v_sigma(1..j)) v_sigma(j+1..n).
/// The input word need not be canonical; the result is.
WordCombination apply_sym(const Coderivation& F, const std::vector<int>& w);
WordCombination apply_sym(const Coderivation& F, const WordCombination& c);

/// Length-one part of a combination as a vector of V.
Coeffs project_to_v(const WordCombination& c);

/// [F, G] = F G - (-1)^{pq} G F, through its projections on words of length <= max_length.
Coderivation bracket(const Coderivation& F, const Coderivation& G, int max_length);

Coderivation codifferential_from_ainfty(const AInfinityStructure& M);
Coderivation codifferential_from_linfty(const LInfinityStructure& L);
Coderivation coderivation_from(const SHDerivationA& theta);
Coderivation coderivation_from(const SHDerivationL& theta);

/// Projections of [m, xi]: an SH derivation of degree deg(xi) + 1. Throws
/// PreconditionError when the arity-0 projection m_1(xi_0) is nonzero.
SHDerivationA reservoir_derivation(const AInfinityStructure& M, const Coderivation& xi);

/// L-infinity analogue: projections of [l, xi] for a symmetric coderivation xi.
SHDerivationL reservoir_derivation(const LInfinityStructure& L, const Coderivation& xi);

/// Projections of [theta, eta] as a derivation of degree p + q, exact on all
/// word lengths up to the sum of the two truncations minus one.
SHDerivationA derivation_bracket(const SHDerivationA& theta, const SHDerivationA& eta);
SHDerivationL derivation_bracket(const SHDerivationL& theta, const SHDerivationL& eta);

/// [m, theta]_q = bracket_calibration(k) * sh_defect(M, theta, q) for a degree-k family,
/// in both the tensor and the symmetric setting. Locked by the operadic evaluation test.
constexpr Sign bracket_calibration(int k) { return (k + 1) % 2 == 0 ? 1 : -1; }

/// The inner derivation of a as the bracket of m with the unital coderivation
/// whose only projection is theta0 = a.
SHDerivationA inner_via_counital(const AInfinityStructure& M, const GradedVector& a);

/// chi(v_1..v_n) = sum_{sigma in S_n} e(sigma) v_sigma(1) (x) .. (x) v_sigma(n).
WordCombination chi(const GradedVectorSpace& space, const std::vector<int>& w);
WordCombination chi(const GradedVectorSpace& space, const WordCombination& c);

/// Reduced deconcatenation coproduct on T^c(V).
WordPairCombination coproduct_tensor(const TensorWord& w);
/// Reduced unshuffle coproduct on S^c(V); keys are canonical.
WordPairCombination coproduct_sym(const GradedVectorSpace& space, const std::vector<int>& w);

/// f o chi: (f o chi)(v_1..v_n) = sum_sigma e(sigma) f(v_sigma(1)..v_sigma(n)). Graded symmetric.
MultilinearMap compose_chi(const MultilinearMap& f);

/// l_n = m_n o chi.
LInfinityStructure symmetrize_structure(const AInfinityStructure& M);
/// theta'_q = theta_q o chi, a derivation of symmetrize_structure(M).
SHDerivationL symmetrize_derivation(const AInfinityStructure& M, const SHDerivationA& theta);

/// Words of a given length over a space of dimension dim (all tuples).
std::vector<TensorWord> all_words(std::size_t dim, int length);

std::string word_combination_to_string(const GradedVectorSpace& space, const WordCombination& c,
                                       const char* separator);

}  // namespace shd
