#include "shd/coalgebra.hpp"

#include <sstream>

namespace shd {

void add_scaled(WordCombination& into, const WordCombination& from, const Rational& factor) {
  if (factor == 0) return;
  for (const auto& [w, c] : from) {
    auto [it, inserted] = into.try_emplace(w, 0);
    it->second += factor * c;
    if (it->second == 0) into.erase(it);
  }
}

namespace {

void add_term(WordCombination& into, std::vector<int> w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(std::move(w), 0);
  it->second += c;
  if (it->second == 0) into.erase(it);
}

struct SymKey {
  int degree;
  const std::string* label;
  bool operator<(const SymKey& o) const { return degree != o.degree ? degree < o.degree : *label < *o.label; }
};

// value on t of f o chi
Coeffs apply_after_chi(const MultilinearMap& f, const GradedVectorSpace& space, const BasisTuple& t,
                       const std::vector<Permutation>& perms) {
  Coeffs out;
  const auto degs = space.tuple_degrees(t);
  for (const auto& sigma : perms)
    if (const Coeffs* y = f.at(sigma.act(t))) add_scaled(out, *y, koszul_sign(sigma, degs));
  return out;
}

}  // namespace

MultilinearMap compose_chi(const MultilinearMap& f) {
  const auto& space = *f.space();
  const auto perms = all_permutations(f.arity());
  MultilinearMap out(f.space(), f.arity(), f.degree());
  for_each_tuple(space.dim(), f.arity(),
                 [&](const BasisTuple& t) { out.add(t, apply_after_chi(f, space, t, perms)); });
  return out;
}

std::optional<std::pair<std::vector<int>, Sign>> normalize_sym(const GradedVectorSpace& space,
                                                               const std::vector<int>& factors) {
  std::vector<SymKey> keys;
  keys.reserve(factors.size());
  for (int f : factors) keys.push_back({space.degree(f), &space.label(f)});
  const Permutation p = sorting_permutation(std::span<const SymKey>(keys));
  std::vector<int> sorted = p.act(factors);
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && space.degree(sorted[i]) % 2 != 0) return std::nullopt;
  return std::make_pair(std::move(sorted), koszul_sign(p, space.tuple_degrees(factors)));
}

WordCombination sym_word(const GradedVectorSpace& space, const std::vector<int>& factors) {
  WordCombination out;
  if (auto n = normalize_sym(space, factors)) out.emplace(std::move(n->first), n->second);
  return out;
}

Coderivation::Coderivation(SpacePtr space, int degree, Flavor flavor, MapFamily projections,
                           std::optional<GradedVector> theta0)
    : space_(std::move(space)), degree_(degree), flavor_(flavor), theta0_(std::move(theta0)) {
  for (auto& [n, f] : projections) {
    if (n < 1 || f.arity() != n) throw InputError("coderivation projection " + std::to_string(n) + " has wrong arity");
    if (!(*f.space() == *space_)) throw InputError("coderivation projection lives on another space");
    if (f.is_zero()) continue;
    if (f.degree() != degree_)
      throw InputError("coderivation projection " + std::to_string(n) + " has degree " + std::to_string(f.degree()) +
                       ", expected " + std::to_string(degree_));
    if (flavor_ == Flavor::Symmetric) {
      if (auto v = symmetry_defect(f, SymmetryMode::Symmetric))
        throw InputError("symmetric coderivation projection " + std::to_string(n) + " is not graded symmetric at " +
                         tuple_to_string(*space_, v->tuple));
    }
    projections_.emplace(n, std::move(f));
  }
  if (theta0_) {
    if (!(*theta0_->space() == *space_)) throw InputError("theta0 lives on another space");
    if (!theta0_->is_zero() && theta0_->degree() != std::optional<int>(degree_))
      throw InputError("theta0 must be homogeneous of the coderivation degree");
  }
}

WordCombination apply_tensor(const Coderivation& F, const TensorWord& w) {
  if (F.flavor() != Flavor::Tensor) throw InputError("apply_tensor needs a tensor coderivation");
  const auto& space = *F.space();
  const int n = static_cast<int>(w.size());
  std::vector<int> prefix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + space.degree(w[static_cast<std::size_t>(i)]);

  WordCombination out;
  auto emit = [&](int i, int j, const Coeffs& y) {
    const Rational s = parity_sign(static_cast<long long>(F.degree()) * prefix[static_cast<std::size_t>(i)]);
    for (const auto& [b, c] : y) {
      std::vector<int> word(w.begin(), w.begin() + i);
      word.push_back(b);
      word.insert(word.end(), w.begin() + i + j, w.end());
      add_term(out, std::move(word), s * c);
    }
  };
  for (const auto& [j, f] : F.projections()) {
    for (int i = 0; i + j <= n; ++i)
      if (const Coeffs* y = f.at(BasisTuple(w.begin() + i, w.begin() + i + j))) emit(i, j, *y);
  }
  if (F.theta0() && !F.theta0()->is_zero())
    for (int i = 0; i <= n; ++i) emit(i, 0, F.theta0()->coeffs());
  return out;
}

WordCombination apply_tensor(const Coderivation& F, const WordCombination& c) {
  WordCombination out;
  for (const auto& [w, x] : c) add_scaled(out, apply_tensor(F, w), x);
  return out;
}

WordCombination apply_sym(const Coderivation& F, const std::vector<int>& w) {
  if (F.flavor() != Flavor::Symmetric) throw InputError("apply_sym needs a symmetric coderivation");
  const auto& space = *F.space();
  const int n = static_cast<int>(w.size());
  const auto degs = space.tuple_degrees(w);
  WordCombination out;
  for (const auto& [j, f] : F.projections()) {
    if (j > n) break;
    for (const auto& sigma : unshuffles(j, n - j)) {
      const std::vector<int> u = sigma.act(w);
      const Coeffs* y = f.at(BasisTuple(u.begin(), u.begin() + j));
      if (!y) continue;
      const Sign e = koszul_sign(sigma, degs);
      for (const auto& [b, c] : *y) {
        std::vector<int> word{b};
        word.insert(word.end(), u.begin() + j, u.end());
        if (auto norm = normalize_sym(space, word)) add_term(out, std::move(norm->first), e * norm->second * c);
      }
    }
  }
  if (F.theta0()) {
    for (const auto& [b, c] : F.theta0()->coeffs()) {
      std::vector<int> word{b};
      word.insert(word.end(), w.begin(), w.end());
      if (auto norm = normalize_sym(space, word)) add_term(out, std::move(norm->first), norm->second * c);
    }
  }
  return out;
}

WordCombination apply_sym(const Coderivation& F, const WordCombination& c) {
  WordCombination out;
  for (const auto& [w, x] : c) add_scaled(out, apply_sym(F, w), x);
  return out;
}

Coeffs project_to_v(const WordCombination& c) {
  Coeffs out;
  for (const auto& [w, x] : c)
    if (w.size() == 1) add_scaled(out, Coeffs{{w[0], x}}, 1);
  return out;
}

Coderivation bracket(const Coderivation& F, const Coderivation& G, int max_length) {
  if (F.flavor() != G.flavor()) throw InputError("bracket: coderivations of different flavors");
  if (!(*F.space() == *G.space())) throw InputError("bracket: coderivations on different spaces");
  const SpacePtr& space = F.space();
  const int p = F.degree(), q = G.degree();
  const Rational s = parity_sign(static_cast<long long>(p) * q);
  const bool tensor = F.flavor() == Flavor::Tensor;

  auto value = [&](const std::vector<int>& w) {
    WordCombination start;
    if (tensor) {
      start.emplace(w, 1);
    } else {
      start = sym_word(*space, w);
      if (start.empty()) return Coeffs{};
    }
    auto act = [&](const Coderivation& X, const WordCombination& c) {
      return tensor ? apply_tensor(X, c) : apply_sym(X, c);
    };
    Coeffs out = project_to_v(act(F, act(G, start)));
    add_scaled(out, project_to_v(act(G, act(F, start))), -s);
    return out;
  };

  MapFamily projections;
  for (int n = 1; n <= max_length; ++n) {
    MultilinearMap f(space, n, p + q);
    for_each_tuple(space->dim(), n, [&](const BasisTuple& t) { f.add(t, value(t)); });
    if (!f.is_zero()) projections.emplace(n, std::move(f));
  }
  std::optional<GradedVector> theta0;
  if (F.unital() || G.unital()) theta0 = GradedVector(space, value({}));
  return Coderivation(space, p + q, F.flavor(), std::move(projections), std::move(theta0));
}

Coderivation codifferential_from_ainfty(const AInfinityStructure& M) {
  return Coderivation(M.space(), 1, Flavor::Tensor, M.maps());
}

Coderivation codifferential_from_linfty(const LInfinityStructure& L) {
  return Coderivation(L.space(), 1, Flavor::Symmetric, L.maps());
}

Coderivation coderivation_from(const SHDerivationA& theta) {
  return Coderivation(theta.space(), theta.k(), Flavor::Tensor, theta.maps());
}

Coderivation coderivation_from(const SHDerivationL& theta) {
  return Coderivation(theta.space(), theta.k(), Flavor::Symmetric, theta.maps());
}

SHDerivationA reservoir_derivation(const AInfinityStructure& M, const Coderivation& xi) {
  if (xi.flavor() != Flavor::Tensor) throw InputError("reservoir_derivation needs a tensor coderivation");
  const int length = std::max(1, M.truncation() + xi.max_arity() - 1);
  Coderivation b = bracket(codifferential_from_ainfty(M), xi, length);
  if (b.theta0() && !b.theta0()->is_zero())
    throw PreconditionError("[m, xi]_0 = m_1(xi_0) = " + b.theta0()->to_string() + " != 0", "closed");
  return SHDerivationA(M.space(), xi.degree() + 1, b.projections(), length);
}

namespace {

template <typename Derivation>
Derivation bracket_of(const Derivation& theta, const Derivation& eta) {
  if (!(*theta.space() == *eta.space())) throw InputError("derivation_bracket: derivations live on different spaces");
  const int length = std::max(1, theta.truncation() + eta.truncation() - 1);
  const Coderivation b = bracket(coderivation_from(theta), coderivation_from(eta), length);
  return Derivation(theta.space(), theta.k() + eta.k(), b.projections(), length);
}

}  // namespace

SHDerivationA derivation_bracket(const SHDerivationA& theta, const SHDerivationA& eta) { return bracket_of(theta, eta); }
SHDerivationL derivation_bracket(const SHDerivationL& theta, const SHDerivationL& eta) { return bracket_of(theta, eta); }

SHDerivationL reservoir_derivation(const LInfinityStructure& L, const Coderivation& xi) {
  if (xi.flavor() != Flavor::Symmetric) throw InputError("reservoir_derivation needs a symmetric coderivation");
  const int length = std::max(1, L.truncation() + xi.max_arity() - 1);
  Coderivation b = bracket(codifferential_from_linfty(L), xi, length);
  if (b.theta0() && !b.theta0()->is_zero())
    throw PreconditionError("[l, xi]_0 = l_1(xi_0) = " + b.theta0()->to_string() + " != 0", "closed");
  return SHDerivationL(L.space(), xi.degree() + 1, b.projections(), length);
}

SHDerivationA inner_via_counital(const AInfinityStructure& M, const GradedVector& a) {
  if (!(*a.space() == *M.space())) throw InputError("inner_via_counital: element lives in another space");
  if (!a.is_homogeneous()) throw PreconditionError("inner_via_counital: element is not homogeneous", "homogeneous");
  const Coderivation theta(M.space(), a.degree().value_or(0), Flavor::Tensor, {}, a);
  return reservoir_derivation(M, theta);
}

WordCombination chi(const GradedVectorSpace& space, const std::vector<int>& w) {
  WordCombination out;
  const auto degs = space.tuple_degrees(w);
  for (const auto& sigma : all_permutations(static_cast<int>(w.size())))
    add_term(out, sigma.act(w), koszul_sign(sigma, degs));
  return out;
}

WordCombination chi(const GradedVectorSpace& space, const WordCombination& c) {
  WordCombination out;
  for (const auto& [w, x] : c) add_scaled(out, chi(space, w), x);
  return out;
}

WordPairCombination coproduct_tensor(const TensorWord& w) {
  WordPairCombination out;
  for (std::size_t i = 1; i < w.size(); ++i)
    out.emplace(std::make_pair(TensorWord(w.begin(), w.begin() + static_cast<long>(i)),
                               TensorWord(w.begin() + static_cast<long>(i), w.end())),
                1);
  return out;
}

WordPairCombination coproduct_sym(const GradedVectorSpace& space, const std::vector<int>& w) {
  WordPairCombination out;
  const int n = static_cast<int>(w.size());
  const auto degs = space.tuple_degrees(w);
  for (int j = 1; j < n; ++j) {
    for (const auto& sigma : unshuffles(j, n - j)) {
      const std::vector<int> u = sigma.act(w);
      auto left = normalize_sym(space, std::vector<int>(u.begin(), u.begin() + j));
      auto right = normalize_sym(space, std::vector<int>(u.begin() + j, u.end()));
      if (!left || !right) continue;
      auto key = std::make_pair(std::move(left->first), std::move(right->first));
      auto [it, inserted] = out.try_emplace(std::move(key), 0);
      it->second += koszul_sign(sigma, degs) * left->second * right->second;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

LInfinityStructure symmetrize_structure(const AInfinityStructure& M) {
  MapFamily l;
  for (const auto& [n, m] : M.maps()) {
    MultilinearMap f = compose_chi(m);
    if (!f.is_zero()) l.emplace(n, std::move(f));
  }
  return LInfinityStructure(M.space(), std::move(l), M.truncation());
}

SHDerivationL symmetrize_derivation(const AInfinityStructure& M, const SHDerivationA& theta) {
  if (!(*M.space() == *theta.space())) throw InputError("symmetrize_derivation: spaces differ");
  MapFamily out;
  for (const auto& [n, t] : theta.maps()) {
    MultilinearMap f = compose_chi(t);
    if (!f.is_zero()) out.emplace(n, std::move(f));
  }
  return SHDerivationL(theta.space(), theta.k(), std::move(out), theta.truncation());
}

std::vector<TensorWord> all_words(std::size_t dim, int length) {
  std::vector<TensorWord> out;
  for_each_tuple(dim, length, [&](const BasisTuple& t) { out.push_back(t); });
  return out;
}

std::string word_combination_to_string(const GradedVectorSpace& space, const WordCombination& c,
                                       const char* separator) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, x] : c) {
    const bool neg = x < 0;
    const Rational a = neg ? Rational(-x) : x;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (a != 1) os << a.get_str() << "*";
    if (w.empty()) os << "1";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? separator : "") << space.label(w[i]);
    first = false;
  }
  return os.str();
}

}  // namespace shd
