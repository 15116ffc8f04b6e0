#include "shd/graded.hpp"

#include <sstream>

namespace shd {

void add_scaled(Coeffs& into, const Coeffs& from, const Rational& factor) {
  if (factor == 0) return;
  for (const auto& [idx, c] : from) {
    auto [it, inserted] = into.try_emplace(idx, 0);
    it->second += factor * c;
    if (it->second == 0) into.erase(it);
  }
}

// ---------------------------------------------------------------------------

GradedVectorSpace::GradedVectorSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto [it, inserted] = index_.emplace(basis_[i].label, static_cast<int>(i));
    if (!inserted) throw InputError("duplicate basis label '" + basis_[i].label + "'");
  }
}

std::optional<int> GradedVectorSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GradedVectorSpace::index(const std::string& label) const {
  auto i = find(label);
  if (!i) throw InputError("unknown basis label '" + label + "'");
  return *i;
}

GradedVectorSpace GradedVectorSpace::desuspension() const {
  auto b = basis_;
  for (auto& e : b) e.degree -= 1;
  return GradedVectorSpace(std::move(b));
}

GradedVectorSpace GradedVectorSpace::suspension() const {
  auto b = basis_;
  for (auto& e : b) e.degree += 1;
  return GradedVectorSpace(std::move(b));
}

int GradedVectorSpace::tuple_degree(std::span<const int> tuple) const {
  int d = 0;
  for (int i : tuple) d += degree(i);
  return d;
}

std::vector<int> GradedVectorSpace::tuple_degrees(std::span<const int> tuple) const {
  std::vector<int> d;
  d.reserve(tuple.size());
  for (int i : tuple) d.push_back(degree(i));
  return d;
}

SpacePtr make_space(std::vector<BasisElement> basis) {
  return std::make_shared<const GradedVectorSpace>(std::move(basis));
}

void for_each_tuple(std::size_t dim, int arity, const std::function<void(const BasisTuple&)>& fn) {
  BasisTuple t(static_cast<std::size_t>(arity), 0);
  if (arity == 0) {
    fn(t);
    return;
  }
  if (dim == 0) return;
  while (true) {
    fn(t);
    int i = arity - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == static_cast<int>(dim) - 1) {
      t[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
  }
}

// ---------------------------------------------------------------------------

GradedVector::GradedVector(SpacePtr space, Coeffs coeffs) : space_(std::move(space)) {
  for (auto& [i, c] : coeffs) {
    if (i < 0 || static_cast<std::size_t>(i) >= space_->dim()) throw InputError("basis index out of range");
    if (c != 0) coeffs_.emplace(i, c);
  }
}

GradedVector GradedVector::basis(SpacePtr space, int index) {
  GradedVector v(std::move(space));
  v.add(index, 1);
  return v;
}

std::optional<int> GradedVector::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  const int d = space_->degree(coeffs_.begin()->first);
  for (const auto& [i, c] : coeffs_)
    if (space_->degree(i) != d) return std::nullopt;
  return d;
}

bool GradedVector::is_homogeneous() const { return is_zero() || degree().has_value(); }

Rational GradedVector::coefficient(int index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void GradedVector::add(int index, const Rational& c) {
  if (index < 0 || static_cast<std::size_t>(index) >= space_->dim()) throw InputError("basis index out of range");
  add_scaled(coeffs_, Coeffs{{index, c}}, 1);
}

GradedVector& GradedVector::operator+=(const GradedVector& other) {
  add_scaled(coeffs_, other.coeffs_, 1);
  return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& other) {
  add_scaled(coeffs_, other.coeffs_, -1);
  return *this;
}

GradedVector& GradedVector::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [i, v] : coeffs_) v *= c;
  return *this;
}

bool GradedVector::operator==(const GradedVector& other) const {
  return *space_ == *other.space_ && coeffs_ == other.coeffs_;
}

std::string GradedVector::to_string() const { return coeffs_to_string(*space_, coeffs_); }

// ---------------------------------------------------------------------------

MultilinearMap::MultilinearMap(SpacePtr space, int arity, int degree)
    : space_(std::move(space)), arity_(arity), degree_(degree) {
  if (!space_) throw InputError("multilinear map without a space");
  if (arity_ < 0) throw InputError("negative arity");
}

MultilinearMap MultilinearMap::identity(SpacePtr space) {
  MultilinearMap id(space, 1, 0);
  for (std::size_t i = 0; i < space->dim(); ++i) id.add({static_cast<int>(i)}, static_cast<int>(i), 1);
  return id;
}

MultilinearMap MultilinearMap::constant(const GradedVector& element) {
  if (!element.is_homogeneous()) throw InputError("arity-0 map needs a homogeneous element");
  MultilinearMap f(element.space(), 0, element.degree().value_or(0));
  f.set({}, element.coeffs());
  return f;
}

void MultilinearMap::add(const BasisTuple& tuple, const Coeffs& value, const Rational& factor) {
  if (static_cast<int>(tuple.size()) != arity_) throw InputError("tuple length does not match arity");
  int in_degree = 0;
  for (int i : tuple) {
    if (i < 0 || static_cast<std::size_t>(i) >= space_->dim()) throw InputError("basis index out of range");
    in_degree += space_->degree(i);
  }
  if (factor == 0 || value.empty()) return;
  for (const auto& [out, c] : value) {
    if (space_->degree(out) != in_degree + degree_)
      throw SignConventionError("inhomogeneous value at " + tuple_to_string(*space_, tuple) + ": output '" +
                                space_->label(out) + "' has degree " + std::to_string(space_->degree(out)) +
                                ", expected " + std::to_string(in_degree + degree_));
  }
  auto [it, inserted] = entries_.try_emplace(tuple);
  add_scaled(it->second, value, factor);
  if (it->second.empty()) entries_.erase(it);
}

void MultilinearMap::add(const BasisTuple& tuple, int out, const Rational& c) { add(tuple, Coeffs{{out, c}}, 1); }

void MultilinearMap::set(const BasisTuple& tuple, const Coeffs& value) {
  entries_.erase(tuple);
  add(tuple, value, 1);
}

const Coeffs* MultilinearMap::at(const BasisTuple& tuple) const {
  auto it = entries_.find(tuple);
  return it == entries_.end() ? nullptr : &it->second;
}

void MultilinearMap::check_compatible(const MultilinearMap& other, const char* what) const {
  if (arity_ != other.arity_) throw InputError(std::string(what) + ": arity mismatch");
  if (!(*space_ == *other.space_)) throw InputError(std::string(what) + ": space mismatch");
  if (degree_ != other.degree_ && !other.is_zero() && !is_zero())
    throw InputError(std::string(what) + ": degree mismatch");
}

MultilinearMap& MultilinearMap::operator+=(const MultilinearMap& other) {
  check_compatible(other, "map addition");
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [t, v] : other.entries_) add(t, v, 1);
  return *this;
}

MultilinearMap& MultilinearMap::operator-=(const MultilinearMap& other) {
  check_compatible(other, "map subtraction");
  if (is_zero()) degree_ = other.degree_;
  for (const auto& [t, v] : other.entries_) add(t, v, -1);
  return *this;
}

MultilinearMap& MultilinearMap::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [t, v] : entries_)
    for (auto& [i, x] : v) x *= c;
  return *this;
}

bool MultilinearMap::operator==(const MultilinearMap& other) const {
  if (arity_ != other.arity_ || !(*space_ == *other.space_)) return false;
  if (!is_zero() && !other.is_zero() && degree_ != other.degree_) return false;
  return entries_ == other.entries_;
}

std::string MultilinearMap::to_string() const {
  std::ostringstream os;
  os << "arity " << arity_ << ", degree " << degree_ << " {";
  bool first = true;
  for (const auto& [t, v] : entries_) {
    os << (first ? " " : ", ") << tuple_to_string(*space_, t) << " -> " << coeffs_to_string(*space_, v);
    first = false;
  }
  os << " }";
  return os.str();
}

const MultilinearMap* family_at(const MapFamily& family, int arity) {
  auto it = family.find(arity);
  return it == family.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------

Coeffs apply_coeffs(const MultilinearMap& f, std::span<const Coeffs> args) {
  if (static_cast<int>(args.size()) != f.arity()) throw InputError("apply: wrong number of arguments");
  Coeffs out;
  if (f.is_zero()) return out;
  // Expand over the supports of the arguments.
  const int n = f.arity();
  std::vector<std::vector<std::pair<int, Rational>>> supp(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (const auto& [idx, c] : args[static_cast<std::size_t>(i)]) supp[static_cast<std::size_t>(i)].emplace_back(idx, c);
    if (supp[static_cast<std::size_t>(i)].empty()) return out;
  }
  std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
  BasisTuple t(static_cast<std::size_t>(n));
  while (true) {
    Rational c = 1;
    for (int i = 0; i < n; ++i) {
      const auto& [idx, x] = supp[static_cast<std::size_t>(i)][pos[static_cast<std::size_t>(i)]];
      t[static_cast<std::size_t>(i)] = idx;
      c *= x;
    }
    if (const Coeffs* v = f.at(t)) add_scaled(out, *v, c);
    int i = n - 1;
    while (i >= 0 && ++pos[static_cast<std::size_t>(i)] == supp[static_cast<std::size_t>(i)].size()) {
      pos[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

GradedVector apply(const MultilinearMap& f, std::span<const GradedVector> args) {
  std::vector<Coeffs> c;
  c.reserve(args.size());
  for (const auto& a : args) {
    if (!(*a.space() == *f.space())) throw InputError("apply: argument lives in a different space");
    c.push_back(a.coeffs());
  }
  return GradedVector(f.space(), apply_coeffs(f, c));
}

GradedVector apply(const MultilinearMap& f, std::initializer_list<GradedVector> args) {
  return apply(f, std::span<const GradedVector>(args.begin(), args.size()));
}

MultilinearMap compose_at(const MultilinearMap& f, int slot, const MultilinearMap& g) {
  if (slot < 1 || slot > f.arity()) throw InputError("compose_at: slot out of range");
  if (!(*f.space() == *g.space())) throw InputError("compose_at: space mismatch");
  const auto& space = *f.space();
  MultilinearMap out(f.space(), f.arity() + g.arity() - 1, f.degree() + g.degree());
  const auto l = static_cast<std::size_t>(slot - 1);
  for (const auto& [tf, vf] : f.entries()) {
    const int plugged = tf[l];
    int before = 0;
    for (std::size_t i = 0; i < l; ++i) before += space.degree(tf[i]);
    const Sign s = parity_sign(static_cast<long long>(g.degree()) * before);
    for (const auto& [tg, vg] : g.entries()) {
      auto it = vg.find(plugged);
      if (it == vg.end()) continue;
      BasisTuple t(tf.begin(), tf.begin() + static_cast<std::ptrdiff_t>(l));
      t.insert(t.end(), tg.begin(), tg.end());
      t.insert(t.end(), tf.begin() + static_cast<std::ptrdiff_t>(l) + 1, tf.end());
      out.add(t, vf, s * it->second);
    }
  }
  return out;
}

MultilinearMap sigma_act(const Permutation& p, const MultilinearMap& f) {
  if (static_cast<int>(p.size()) != f.arity()) throw InputError("sigma_act: arity mismatch");
  const auto& space = *f.space();
  MultilinearMap out(f.space(), f.arity(), f.degree());
  // out(a) = koszul(p,|a|) f(p . a); invert: for each entry b = p . a, a = p^{-1} . b.
  const Permutation inv = p.inverse();
  for (const auto& [b, v] : f.entries()) {
    const BasisTuple a = inv.act(b);
    const auto degs = space.tuple_degrees(a);
    out.add(a, v, koszul_sign(p, degs));
  }
  return out;
}

Sign suspension_sign(std::span<const int> v_degrees) {
  const long long n = static_cast<long long>(v_degrees.size());
  long long e = 0;
  for (long long i = 1; i <= n; ++i) e += (n - i) * v_degrees[static_cast<std::size_t>(i - 1)];
  return parity_sign(e);
}

namespace {

MultilinearMap shift_map(const MultilinearMap& f, const SpacePtr& target, int degree_shift, const SpacePtr& v_space) {
  MultilinearMap out(target, f.arity(), f.degree() + degree_shift);
  for (const auto& [t, v] : f.entries()) out.add(t, v, suspension_sign(v_space->tuple_degrees(t)));
  return out;
}

}  // namespace

MultilinearMap suspend_map(const MultilinearMap& f, const SpacePtr& target) {
  if (!(f.space()->desuspension() == *target))
    throw InputError("suspend_map: target is not the desuspension of the source space");
  return shift_map(f, target, f.arity() - 1, target);
}

MultilinearMap desuspend_map(const MultilinearMap& f, const SpacePtr& target) {
  if (!(f.space()->suspension() == *target))
    throw InputError("desuspend_map: target is not the suspension of the source space");
  return shift_map(f, target, 1 - f.arity(), f.space());
}

std::optional<SymmetryViolation> symmetry_defect(const MultilinearMap& f, SymmetryMode mode) {
  const auto& space = *f.space();
  const int n = f.arity();
  if (n < 2) return std::nullopt;
  const Rational base = mode == SymmetryMode::Symmetric ? 1 : -1;
  std::optional<SymmetryViolation> found;
  for_each_tuple(space.dim(), n, [&](const BasisTuple& t) {
    if (found) return;
    const Coeffs* vt = f.at(t);
    for (int i = 0; i + 1 < n; ++i) {
      BasisTuple s = t;
      std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
      const long long e = static_cast<long long>(space.degree(t[static_cast<std::size_t>(i)])) *
                          space.degree(t[static_cast<std::size_t>(i + 1)]);
      Coeffs expected;
      if (vt) add_scaled(expected, *vt, base * parity_sign(e));
      const Coeffs* vs = f.at(s);
      Coeffs actual = vs ? *vs : Coeffs{};
      if (expected != actual) {
        found = SymmetryViolation{s, std::move(expected), std::move(actual)};
        return;
      }
    }
  });
  return found;
}

std::string coeffs_to_string(const GradedVectorSpace& space, const Coeffs& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, x] : c) {
    if (!first) os << (x < 0 ? " - " : " + ");
    else if (x < 0) os << "-";
    const Rational a = abs(x);
    if (a != 1) os << a.get_str() << "*";
    os << space.label(i);
    first = false;
  }
  return os.str();
}

std::string tuple_to_string(const GradedVectorSpace& space, const BasisTuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += space.label(t[i]);
  }
  return s + ")";
}

}  // namespace shd
