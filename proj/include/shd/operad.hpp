#pragma once

// Free Sigma-operads on decorated trees, the minimal resolutions of Ass and Lie
// extended by a derivation generator, the symbolic check of d^2 = 0 and
// evaluation in the endomorphism operad.
//
// A tree with root r and children c_1..c_m stands for the composite
// (..((r o_1 c_1) o_{1+n_1} c_2)..) o c_m, with leaf labels recording the
// Sigma action. Children of sign and trivial vertices are kept sorted by their
// minimal leaf label; regular vertices keep their planar order.

#include <compare>
#include <optional>
#include <string>

#include "shd/graded.hpp"

namespace shd {

enum class Rep { Regular, Sign, Trivial };

struct GeneratorSpec {
  std::string name;   // "x^3", "xbar^3", "phi"
  int arity = 0;
  int degree = 0;
  Rep rep = Rep::Regular;
  std::string latex;  // empty means the name
};

class Signature {
public:
  /// Throws InputError on duplicate names or negative arities.
  explicit Signature(std::vector<GeneratorSpec> generators);

  std::size_t size() const { return generators_.size(); }
  const GeneratorSpec& at(int g) const { return generators_.at(static_cast<std::size_t>(g)); }
  const std::vector<GeneratorSpec>& generators() const { return generators_; }
  std::optional<int> find(const std::string& name) const;
  /// Throws InputError for unknown names.
  int index(const std::string& name) const;

private:
  std::vector<GeneratorSpec> generators_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

struct Tree {
  int gen = -1;    // generator index, -1 for a leaf
  int label = 0;   // 1-based leaf label
  std::vector<Tree> children;

  bool is_leaf() const { return gen < 0; }
  static Tree leaf(int label);
  static Tree corolla(int gen, int arity);
};

/// Vertices sort before leaves, so x(x(1,2),3) comes before x(1,x(2,3)).
std::strong_ordering operator<=>(const Tree& a, const Tree& b);
bool operator==(const Tree& a, const Tree& b);

int tree_arity(const Tree& t);
int tree_weight(const Tree& t);
int tree_degree(const Tree& t, const Signature& sig);
/// Leaf labels in planar order.
std::vector<int> leaf_word(const Tree& t);

/// Puts t in canonical form and returns the sign relating the two forms.
Sign canonicalize(Tree& t, const Signature& sig);

class FreeOperadElement {
public:
  FreeOperadElement(SignaturePtr sig, int arity);

  static FreeOperadElement generator(SignaturePtr sig, const std::string& name);
  static FreeOperadElement identity(SignaturePtr sig);
  /// Throws InputError unless the leaves carry a bijection onto {1..arity}.
  static FreeOperadElement from_tree(SignaturePtr sig, Tree t, const Rational& c = 1);

  const SignaturePtr& signature() const { return sig_; }
  int arity() const { return arity_; }
  std::optional<int> degree() const;
  const std::map<Tree, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(Tree t) const;
  /// Canonicalizes t and adds c times it. Throws InputError on an arity or
  /// degree mismatch.
  void add(Tree t, const Rational& c);

  FreeOperadElement& operator+=(const FreeOperadElement& other);
  FreeOperadElement& operator-=(const FreeOperadElement& other);
  FreeOperadElement& operator*=(const Rational& c);
  friend FreeOperadElement operator+(FreeOperadElement a, const FreeOperadElement& b) { return a += b; }
  friend FreeOperadElement operator-(FreeOperadElement a, const FreeOperadElement& b) { return a -= b; }
  friend FreeOperadElement operator*(const Rational& c, FreeOperadElement e) { return e *= c; }
  FreeOperadElement operator-() const { return Rational(-1) * *this; }

  bool operator==(const FreeOperadElement& other) const;

private:
  void check_compatible(const FreeOperadElement& other, const char* what) const;

  SignaturePtr sig_;
  int arity_;
  int degree_ = 0;
  std::map<Tree, Rational> terms_;
};

/// a o_slot b: grafts b onto the leaf of a labelled slot.
FreeOperadElement tree_compose(const FreeOperadElement& a, int slot, const FreeOperadElement& b);

/// Relabels every leaf l as p(l). Matches sigma_act on maps under evaluate.
FreeOperadElement sigma_act(const Permutation& p, const FreeOperadElement& e);

/// Generator index -> image. Images of arity-n generators have arity n.
using DerivationRule = std::map<int, FreeOperadElement>;

/// The operadic derivation of the given degree determined by rule. The vertex
/// at position v in depth-first order picks up (-1)^{degree * (sum of the
/// degrees of the vertices before v)}. Throws InputError on a missing entry.
FreeOperadElement extend_derivation(const DerivationRule& rule, int degree, const FreeOperadElement& e);

// --- resolutions -----------------------------------------------------------------

enum class Preset { Ass, Lie };

Preset parse_preset(const std::string& name);
const char* preset_name(Preset p);

struct Resolution {
  Preset preset;
  int k;
  int max_arity;
  SignaturePtr signature;  // x^2..x^N, xbar^2..xbar^N, phi
};

/// Throws InputError when max_arity < 2.
Resolution make_resolution(Preset preset, int k, int max_arity);

/// Negates the sign attached to one printed exponent of one generator's differential.
struct SignFlip {
  std::string generator;
  std::string site;
};

/// The differential of x^n, xbar^n or phi. Throws InputError for unknown generators.
FreeOperadElement generator_differential(const Resolution& R, const std::string& generator,
                                         const std::optional<SignFlip>& flip = std::nullopt);

/// Names of the sign exponents appearing in the printed formula for the generator.
std::vector<std::string> sign_sites(const Resolution& R, const std::string& generator);

DerivationRule differential_rule(const Resolution& R, const std::optional<SignFlip>& flip = std::nullopt);

/// The degree k-1 derivation s with s(x^n) = xbar^n, defined on the x generators.
DerivationRule suspension_rule(const Resolution& R);

struct Residue {
  std::string generator;
  FreeOperadElement value;
};

struct DSquaredReport {
  Preset preset;
  int k;
  int max_arity;
  std::vector<Residue> residues;  // one per generator, in signature order

  bool ok() const;
  std::string to_text(bool latex) const;
};

/// d(d(g)) for every generator, checked concurrently.
DSquaredReport check_d_squared(Preset preset, int k, int max_arity,
                               const std::optional<SignFlip>& flip = std::nullopt);

// --- evaluation ------------------------------------------------------------------

/// Generator name -> operation on A.
using Assignment = std::map<std::string, MultilinearMap>;

/// The image of e under the operad map sending generators to the assigned
/// operations. Throws InputError for missing or mismatched assignments.
MultilinearMap evaluate(const FreeOperadElement& e, const Assignment& assign, const SpacePtr& space);

std::string to_latex(const FreeOperadElement& e);
std::string to_text(const FreeOperadElement& e);

}  // namespace shd
