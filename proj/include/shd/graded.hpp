#pragma once

// Exact graded linear algebra over Q: spaces with labeled homogeneous bases,
// vectors, homogeneous multilinear maps given by their values on basis tuples,
// partial composition in the endomorphism operad and the suspension transform.
//
// Degrees are cohomological. The desuspension V of A has the same labels with
// every degree lowered by one.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "shd/error.hpp"
#include "shd/signs.hpp"

namespace shd {

using Rational = mpq_class;

/// Sparse coefficients: basis index -> nonzero rational.
using Coeffs = std::map<int, Rational>;
/// A tuple of basis indices (0-based).
using BasisTuple = std::vector<int>;

void add_scaled(Coeffs& into, const Coeffs& from, const Rational& factor);

struct BasisElement {
  std::string label;
  int degree = 0;
  bool operator==(const BasisElement&) const = default;
};

class GradedVectorSpace {
public:
  GradedVectorSpace() = default;
  /// Throws InputError on duplicate labels.
  explicit GradedVectorSpace(std::vector<BasisElement> basis);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::string& label(int i) const { return basis_.at(static_cast<std::size_t>(i)).label; }
  int degree(int i) const { return basis_[static_cast<std::size_t>(i)].degree; }
  std::optional<int> find(const std::string& label) const;
  /// Throws InputError when the label is unknown.
  int index(const std::string& label) const;

  /// Same labels, every degree lowered by one.
  GradedVectorSpace desuspension() const;
  /// Same labels, every degree raised by one.
  GradedVectorSpace suspension() const;

  int tuple_degree(std::span<const int> tuple) const;
  std::vector<int> tuple_degrees(std::span<const int> tuple) const;

  bool operator==(const GradedVectorSpace& other) const { return basis_ == other.basis_; }

private:
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const GradedVectorSpace>;

SpacePtr make_space(std::vector<BasisElement> basis);

/// Calls fn on every tuple in {0..dim-1}^arity, lexicographically.
void for_each_tuple(std::size_t dim, int arity, const std::function<void(const BasisTuple&)>& fn);

class GradedVector {
public:
  explicit GradedVector(SpacePtr space) : space_(std::move(space)) {}
  GradedVector(SpacePtr space, Coeffs coeffs);

  static GradedVector basis(SpacePtr space, int index);

  const SpacePtr& space() const { return space_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree shared by all terms; nullopt for zero or inhomogeneous vectors.
  std::optional<int> degree() const;
  bool is_homogeneous() const;

  Rational coefficient(int index) const;
  void add(int index, const Rational& c);

  GradedVector& operator+=(const GradedVector& other);
  GradedVector& operator-=(const GradedVector& other);
  GradedVector& operator*=(const Rational& c);
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(const Rational& c, GradedVector v) { return v *= c; }

  bool operator==(const GradedVector& other) const;
  std::string to_string() const;

private:
  SpacePtr space_;
  Coeffs coeffs_;
};

/// Homogeneous multilinear map V^{(x)n} -> V of degree d, stored as a sparse
/// table from basis tuples to values. Every stored value is homogeneous of
/// degree (sum of input degrees) + d; this is checked on insertion.
class MultilinearMap {
public:
  MultilinearMap(SpacePtr space, int arity, int degree);

  static MultilinearMap identity(SpacePtr space);
  /// Arity-0 map whose single value is the given homogeneous element.
  static MultilinearMap constant(const GradedVector& element);

  const SpacePtr& space() const { return space_; }
  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const std::map<BasisTuple, Coeffs>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  /// Adds factor * value at tuple. Throws SignConventionError on a
  /// homogeneity violation, InputError on a malformed tuple.
  void add(const BasisTuple& tuple, const Coeffs& value, const Rational& factor = 1);
  void add(const BasisTuple& tuple, int out, const Rational& c);
  void set(const BasisTuple& tuple, const Coeffs& value);

  /// Value on a basis tuple; nullptr when zero.
  const Coeffs* at(const BasisTuple& tuple) const;

  MultilinearMap& operator+=(const MultilinearMap& other);
  MultilinearMap& operator-=(const MultilinearMap& other);
  MultilinearMap& operator*=(const Rational& c);
  friend MultilinearMap operator+(MultilinearMap a, const MultilinearMap& b) { return a += b; }
  friend MultilinearMap operator-(MultilinearMap a, const MultilinearMap& b) { return a -= b; }
  friend MultilinearMap operator*(const Rational& c, MultilinearMap f) { return f *= c; }
  MultilinearMap operator-() const { return Rational(-1) * *this; }

  /// Same space, arity and table. Degrees are compared only when both maps are nonzero.
  bool operator==(const MultilinearMap& other) const;

  std::string to_string() const;

private:
  void check_compatible(const MultilinearMap& other, const char* what) const;

  SpacePtr space_;
  int arity_;
  int degree_;
  std::map<BasisTuple, Coeffs> entries_;
};

/// Multilinear extension of the basis table.
GradedVector apply(const MultilinearMap& f, std::span<const GradedVector> args);
GradedVector apply(const MultilinearMap& f, std::initializer_list<GradedVector> args);

/// Value on a tuple of combinations given as coefficient maps.
Coeffs apply_coeffs(const MultilinearMap& f, std::span<const Coeffs> args);

/// f o_l g = f(1^{l-1} (x) g (x) 1^{m-l}); the Koszul sign (-1)^{|g| (|v_1|+..+|v_{l-1}|)}
/// appears when g is moved past the preceding inputs.
MultilinearMap compose_at(const MultilinearMap& f, int slot, const MultilinearMap& g);

/// (p . f)(a_1..a_n) = koszul(p, |a|) f(a_{p(1)}..a_{p(n)}).
MultilinearMap sigma_act(const Permutation& p, const MultilinearMap& f);

/// Sign of the entry-wise suspension transform on a tuple of V-degrees:
/// (-1)^{sum_i (n-i)|v_i|}, from moving n degree-one suspensions past the inputs.
Sign suspension_sign(std::span<const int> v_degrees);

/// f' = down o f o up^{(x)n}: a map on A of degree d becomes a map on V = down A
/// of degree d + n - 1. `target` must be the desuspension of f's space.
MultilinearMap suspend_map(const MultilinearMap& f, const SpacePtr& target);
/// Inverse of suspend_map; `target` must be the suspension of f's space.
MultilinearMap desuspend_map(const MultilinearMap& f, const SpacePtr& target);

enum class SymmetryMode { Symmetric, Antisymmetric };

struct SymmetryViolation {
  BasisTuple tuple;   // where the mirrored value is wrong
  Coeffs expected;
  Coeffs actual;
};

/// First tuple (lexicographic scan) at which f fails graded (anti)symmetry
/// under an adjacent transposition; nullopt when none.
std::optional<SymmetryViolation> symmetry_defect(const MultilinearMap& f, SymmetryMode mode);

/// Zero family helper: map n -> MultilinearMap, absent keys mean zero.
using MapFamily = std::map<int, MultilinearMap>;

const MultilinearMap* family_at(const MapFamily& family, int arity);

std::string coeffs_to_string(const GradedVectorSpace& space, const Coeffs& c);
std::string tuple_to_string(const GradedVectorSpace& space, const BasisTuple& t);

}  // namespace shd
