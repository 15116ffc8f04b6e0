#include "shd/homotopy_assoc.hpp"

#include <sstream>

namespace shd {

OperationFamily::OperationFamily(SpacePtr space, int degree, MapFamily maps, int truncation)
    : space_(std::move(space)), degree_(degree), truncation_(truncation) {
  if (!space_) throw InputError("operation family without a space");
  for (auto& [n, f] : maps) {
    if (f.arity() != n) throw InputError("family entry " + std::to_string(n) + " has arity " + std::to_string(f.arity()));
    if (!(*f.space() == *space_)) throw InputError("family entry " + std::to_string(n) + " lives on another space");
    if (f.is_zero()) continue;
    if (f.degree() != degree_)
      throw InputError("family entry " + std::to_string(n) + " has degree " + std::to_string(f.degree()) +
                       ", expected " + std::to_string(degree_));
    if (n > truncation_) throw InputError("family entry " + std::to_string(n) + " exceeds truncation arity");
    maps_.emplace(n, std::move(f));
  }
}

MultilinearMap OperationFamily::get(int n) const {
  if (const auto* f = at(n)) return *f;
  return MultilinearMap(space_, n, degree_);
}

AInfinityStructure::AInfinityStructure(SpacePtr space, MapFamily m, int truncation)
    : OperationFamily(std::move(space), 1, std::move(m), truncation) {
  if (at(0)) throw InputError("A-infinity structures have no arity-0 operation");
}

AInfinityStructure AInfinityStructure::zero(SpacePtr space, int truncation) {
  return AInfinityStructure(std::move(space), {}, truncation);
}

SHDerivationA::SHDerivationA(SpacePtr space, int k, MapFamily theta, int truncation)
    : OperationFamily(std::move(space), k, std::move(theta), truncation) {
  if (at(0)) throw InputError("derivation families start at arity 1");
}

SHDerivationA SHDerivationA::zero(SpacePtr space, int k, int truncation) {
  return SHDerivationA(std::move(space), k, {}, truncation);
}

// ---------------------------------------------------------------------------

MultilinearMap ainfty_defect(const AInfinityStructure& M, int n) {
  if (n < 1) throw InputError("ainfty_defect: arity must be >= 1");
  MultilinearMap out(M.space(), n, 2);
  for (int r = 1; r <= n; ++r) {
    const int s = n + 1 - r;
    const auto* mr = M.at(r);
    const auto* ms = M.at(s);
    if (!mr || !ms) continue;
    for (int i = 1; i <= r; ++i) out += compose_at(*mr, i, *ms);
  }
  return out;
}

MultilinearMap sh_defect(const AInfinityStructure& M, const SHDerivationA& theta, int q) {
  if (q < 1) throw InputError("sh_defect: arity must be >= 1");
  if (!(*M.space() == *theta.space())) throw InputError("sh_defect: structure and derivation live on different spaces");
  const int k = theta.k();
  MultilinearMap out(M.space(), q, k + 1);
  for (int r = 1; r <= q; ++r) {
    const int s = q + 1 - r;
    const auto* tr = theta.at(r);
    const auto* ms = M.at(s);
    if (tr && ms)
      for (int i = 1; i <= r; ++i) out += compose_at(*tr, i, *ms);
    const auto* mr = M.at(r);
    const auto* ts = theta.at(s);
    if (mr && ts)
      for (int i = 1; i <= r; ++i) out += Rational(-parity_sign(k)) * compose_at(*mr, i, *ts);
  }
  return out;
}

SHDerivationA tautological_derivation(const AInfinityStructure& M) {
  return SHDerivationA(M.space(), 1, M.maps(), M.truncation());
}

SHDerivationA inner_derivation(const AInfinityStructure& M, const GradedVector& a) {
  if (!(*a.space() == *M.space())) throw InputError("inner_derivation: element lives in another space");
  if (!a.is_homogeneous()) throw PreconditionError("inner_derivation: element is not homogeneous", "homogeneous");
  const int k = a.degree().value_or(0);
  if (const auto* m1 = M.at(1)) {
    const GradedVector da = apply(*m1, {a});
    if (!da.is_zero())
      throw PreconditionError("inner_derivation: m_1(a) = " + da.to_string() + " != 0", "closed");
  }
  const auto& space = *M.space();
  MapFamily theta;
  for (int n = 1; n + 1 <= M.truncation(); ++n) {
    const auto* mn1 = M.at(n + 1);
    if (!mn1 || a.is_zero()) continue;
    MultilinearMap th(M.space(), n, k + 1);
    for_each_tuple(space.dim(), n, [&](const BasisTuple& t) {
      int prefix = 0;
      for (int p = 0; p <= n; ++p) {
        if (p > 0) prefix += space.degree(t[static_cast<std::size_t>(p - 1)]);
        std::vector<Coeffs> args;
        for (int j = 0; j < p; ++j) args.push_back(Coeffs{{t[static_cast<std::size_t>(j)], 1}});
        args.push_back(a.coeffs());
        for (int j = p; j < n; ++j) args.push_back(Coeffs{{t[static_cast<std::size_t>(j)], 1}});
        th.add(t, apply_coeffs(*mn1, args), parity_sign(static_cast<long long>(k) * prefix));
      }
    });
    theta.emplace(n, std::move(th));
  }
  return SHDerivationA(M.space(), k + 1, std::move(theta), std::max(1, M.truncation() - 1));
}

DgaDefects check_dga(const MultilinearMap& product, const MultilinearMap& differential) {
  if (product.arity() != 2 || (!product.is_zero() && product.degree() != 0))
    throw InputError("product must be an arity-2 map of degree 0");
  if (differential.arity() != 1 || (!differential.is_zero() && differential.degree() != 1))
    throw InputError("differential must be an arity-1 map of degree 1");
  MultilinearMap mu = product;
  MultilinearMap d = differential;
  if (mu.is_zero()) mu = MultilinearMap(product.space(), 2, 0);
  if (d.is_zero()) d = MultilinearMap(differential.space(), 1, 1);
  return DgaDefects{compose_at(mu, 1, mu) - compose_at(mu, 2, mu), compose_at(d, 1, d),
                    compose_at(d, 1, mu) - compose_at(mu, 1, d) - compose_at(mu, 2, d)};
}

AInfinityStructure from_dga(const MultilinearMap& product, const MultilinearMap& differential) {
  const DgaDefects defects = check_dga(product, differential);
  std::string failures;
  auto note = [&](const MultilinearMap& f, const char* name) {
    if (auto where = first_failure(f)) failures += std::string(failures.empty() ? "" : "; ") + name + " fails at " + *where;
  };
  note(defects.associativity, "associativity");
  note(defects.d_squared, "d^2 = 0");
  note(defects.leibniz, "Leibniz rule");
  if (!failures.empty()) throw PreconditionError("not a dg associative algebra: " + failures, "dga");

  const auto V = std::make_shared<const GradedVectorSpace>(product.space()->desuspension());
  MapFamily m;
  if (!differential.is_zero()) m.emplace(1, suspend_map(differential, V));
  if (!product.is_zero()) m.emplace(2, suspend_map(product, V));
  return AInfinityStructure(V, std::move(m), 2);
}

std::pair<MultilinearMap, MultilinearMap> strict_derivation_defect(const AInfinityStructure& M,
                                                                   const MultilinearMap& theta1) {
  if (theta1.arity() != 1) throw InputError("strict derivation must have arity 1");
  for (const auto& [n, f] : M.maps())
    if (n >= 3) throw PreconditionError("strict_derivation_defect needs m_n = 0 for n >= 3", "strict");
  const int k = theta1.degree();
  const Rational sk = parity_sign(k);
  const MultilinearMap m1 = M.get(1);
  const MultilinearMap m2 = M.get(2);
  MultilinearMap commutation = compose_at(m1, 1, theta1) - sk * compose_at(theta1, 1, m1);
  MultilinearMap leibniz = compose_at(theta1, 1, m2) - sk * (compose_at(m2, 1, theta1) + compose_at(m2, 2, theta1));
  return {std::move(commutation), std::move(leibniz)};
}

// ---------------------------------------------------------------------------

MultilinearMap endomorphism_differential(const MultilinearMap& d, const MultilinearMap& f) {
  MultilinearMap out = compose_at(d, 1, f);
  const Rational s = parity_sign(f.degree());
  for (int l = 1; l <= f.arity(); ++l) out -= s * compose_at(f, l, d);
  return out;
}

MultilinearMap ainfty_rhs_unsuspended(const MapFamily& m, const SpacePtr& A, int n) {
  MultilinearMap out(A, n, 3 - n);
  for (int i = 2; i <= n - 1; ++i) {
    const int j = n + 1 - i;
    const auto* mi = family_at(m, i);
    const auto* mj = family_at(m, j);
    if (!mi || !mj) continue;
    for (int l = 1; l <= i; ++l)
      out += Rational(parity_sign(i + (l + 1) * (j + 1))) * compose_at(*mi, l, *mj);
  }
  return out;
}

MultilinearMap sh_rhs_unsuspended(const MapFamily& m, const MapFamily& theta, int k, const SpacePtr& A, int n) {
  MultilinearMap out(A, n, k - n + 2);
  for (int i = 1; i <= n; ++i) {
    const int j = n + 1 - i;
    for (int l = 1; l <= i; ++l) {
      const Rational s = parity_sign(k + 1 + i + (l + 1) * (j + 1));
      if (j >= 2) {
        const auto* ti = family_at(theta, i);
        const auto* mj = family_at(m, j);
        if (ti && mj) out += s * compose_at(*ti, l, *mj);
      }
      if (i >= 2) {
        const auto* mi = family_at(m, i);
        const auto* tj = family_at(theta, j);
        if (mi && tj) out += s * Rational(parity_sign((k + 1) * i)) * compose_at(*mi, l, *tj);
      }
    }
  }
  return out;
}

MultilinearMap ainfty_defect_unsuspended(const MultilinearMap& d, const MapFamily& m, int n) {
  const SpacePtr& A = d.space();
  if (n == 1) return compose_at(d, 1, d);
  MultilinearMap mn = family_at(m, n) ? *family_at(m, n) : MultilinearMap(A, n, 2 - n);
  return endomorphism_differential(d, mn) - ainfty_rhs_unsuspended(m, A, n);
}

MultilinearMap sh_defect_unsuspended(const MultilinearMap& d, const MapFamily& m, const MapFamily& theta, int k,
                                     int n) {
  const SpacePtr& A = d.space();
  MultilinearMap tn = family_at(theta, n) ? *family_at(theta, n) : MultilinearMap(A, n, k - n + 1);
  return endomorphism_differential(d, tn) - sh_rhs_unsuspended(m, theta, k, A, n);
}

AInfinityStructure suspend_ainfty(const MultilinearMap& d, const MapFamily& m, const SpacePtr& V, int truncation) {
  MapFamily out;
  if (!d.is_zero()) out.emplace(1, suspend_map(d, V));
  for (const auto& [n, f] : m) {
    if (n < 2) throw InputError("unsuspended operations start at arity 2");
    if (!f.is_zero()) out.emplace(n, suspend_map(f, V));
  }
  return AInfinityStructure(V, std::move(out), truncation);
}

std::pair<MultilinearMap, MapFamily> desuspend_ainfty(const AInfinityStructure& M, const SpacePtr& A) {
  MultilinearMap d = desuspend_map(M.get(1), A);
  MapFamily m;
  for (const auto& [n, f] : M.maps())
    if (n >= 2) m.emplace(n, desuspend_map(f, A));
  return {std::move(d), std::move(m)};
}

SHDerivationA suspend_derivation(const MapFamily& theta, int k, const SpacePtr& V, int truncation) {
  MapFamily out;
  for (const auto& [n, f] : theta)
    if (!f.is_zero()) out.emplace(n, suspend_map(f, V));
  return SHDerivationA(V, k, std::move(out), truncation);
}

MapFamily desuspend_derivation(const SHDerivationA& theta, const SpacePtr& A) {
  MapFamily out;
  for (const auto& [n, f] : theta.maps()) out.emplace(n, desuspend_map(f, A));
  return out;
}

std::optional<std::string> first_failure(const MultilinearMap& defect) {
  if (defect.is_zero()) return std::nullopt;
  const auto& [t, v] = *defect.entries().begin();
  return tuple_to_string(*defect.space(), t) + " -> " + coeffs_to_string(*defect.space(), v);
}

}  // namespace shd
