#include "shd/homotopy_lie.hpp"

namespace shd {

namespace {

void require_symmetric(const MapFamily& maps, const char* what) {
  for (const auto& [n, f] : maps) {
    if (auto v = symmetry_defect(f, SymmetryMode::Symmetric))
      throw InputError(std::string(what) + " " + std::to_string(n) + " is not graded symmetric at " +
                       tuple_to_string(*f.space(), v->tuple));
  }
}

long long binom2(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

}  // namespace

LInfinityStructure::LInfinityStructure(SpacePtr space, MapFamily l, int truncation)
    : OperationFamily(std::move(space), 1, std::move(l), truncation) {
  if (at(0)) throw InputError("L-infinity structures have no arity-0 operation");
  require_symmetric(maps(), "l");
}

LInfinityStructure LInfinityStructure::zero(SpacePtr space, int truncation) {
  return LInfinityStructure(std::move(space), {}, truncation);
}

SHDerivationL::SHDerivationL(SpacePtr space, int k, MapFamily theta, int truncation)
    : OperationFamily(std::move(space), k, std::move(theta), truncation) {
  if (at(0)) throw InputError("derivation families start at arity 1");
  require_symmetric(maps(), "theta");
}

SHDerivationL SHDerivationL::zero(SpacePtr space, int k, int truncation) {
  return SHDerivationL(std::move(space), k, {}, truncation);
}

MultilinearMap unshuffle_composite(const OperationFamily& outer, const OperationFamily& inner, int n) {
  const auto& space = *outer.space();
  MultilinearMap out(outer.space(), n, outer.degree() + inner.degree());
  for (int j = 1; j <= n; ++j) {
    const auto* fi = inner.at(j);
    const auto* fo = outer.at(n - j + 1);
    if (!fi || !fo) continue;
    const auto sh = unshuffles(j, n - j);
    for_each_tuple(space.dim(), n, [&](const BasisTuple& t) {
      const auto degs = space.tuple_degrees(t);
      for (const auto& sigma : sh) {
        const BasisTuple w = sigma.act(t);
        const Coeffs* y = fi->at(BasisTuple(w.begin(), w.begin() + j));
        if (!y) continue;
        std::vector<Coeffs> args{*y};
        for (int r = j; r < n; ++r) args.push_back(Coeffs{{w[static_cast<std::size_t>(r)], 1}});
        out.add(t, apply_coeffs(*fo, args), koszul_sign(sigma, degs));
      }
    });
  }
  return out;
}

MultilinearMap linfty_defect(const LInfinityStructure& L, int n) {
  if (n < 1) throw InputError("linfty_defect: arity must be >= 1");
  return unshuffle_composite(L, L, n);
}

MultilinearMap sh_defect(const LInfinityStructure& L, const SHDerivationL& theta, int n) {
  if (n < 1) throw InputError("sh_defect: arity must be >= 1");
  if (!(*L.space() == *theta.space())) throw InputError("sh_defect: structure and derivation live on different spaces");
  MultilinearMap out = unshuffle_composite(theta, L, n);
  out -= Rational(parity_sign(theta.k())) * unshuffle_composite(L, theta, n);
  return out;
}

SHDerivationL tautological_derivation(const LInfinityStructure& L) {
  return SHDerivationL(L.space(), 1, L.maps(), L.truncation());
}

SHDerivationL inner_derivation(const LInfinityStructure& L, const GradedVector& a) {
  if (!(*a.space() == *L.space())) throw InputError("inner_derivation: element lives in another space");
  if (!a.is_homogeneous()) throw PreconditionError("inner_derivation: element is not homogeneous", "homogeneous");
  const int k = a.degree().value_or(0);
  if (const auto* l1 = L.at(1)) {
    const GradedVector da = apply(*l1, {a});
    if (!da.is_zero())
      throw PreconditionError("inner_derivation: l_1(a) = " + da.to_string() + " != 0", "closed");
  }
  const auto& space = *L.space();
  MapFamily theta;
  for (int n = 1; n + 1 <= L.truncation(); ++n) {
    const auto* ln1 = L.at(n + 1);
    if (!ln1 || a.is_zero()) continue;
    MultilinearMap th(L.space(), n, k + 1);
    for_each_tuple(space.dim(), n, [&](const BasisTuple& t) {
      std::vector<Coeffs> args{a.coeffs()};
      for (int v : t) args.push_back(Coeffs{{v, 1}});
      th.add(t, apply_coeffs(*ln1, args));
    });
    theta.emplace(n, std::move(th));
  }
  return SHDerivationL(L.space(), k + 1, std::move(theta), std::max(1, L.truncation() - 1));
}

DglaDefects check_dgla(const MultilinearMap& bracket, const MultilinearMap& differential) {
  if (bracket.arity() != 2 || (!bracket.is_zero() && bracket.degree() != 0))
    throw InputError("bracket must be an arity-2 map of degree 0");
  if (differential.arity() != 1 || (!differential.is_zero() && differential.degree() != 1))
    throw InputError("differential must be an arity-1 map of degree 1");
  const auto& A = bracket.space();
  const auto& space = *A;
  MultilinearMap b = bracket.is_zero() ? MultilinearMap(A, 2, 0) : bracket;
  MultilinearMap d = differential.is_zero() ? MultilinearMap(A, 1, 1) : differential;

  MultilinearMap jacobi(A, 3, 0);
  for_each_tuple(space.dim(), 3, [&](const BasisTuple& t) {
    const Coeffs x{{t[0], 1}}, y{{t[1], 1}}, z{{t[2], 1}};
    const Coeffs yz = apply_coeffs(b, std::vector<Coeffs>{y, z});
    const Coeffs xy = apply_coeffs(b, std::vector<Coeffs>{x, y});
    const Coeffs xz = apply_coeffs(b, std::vector<Coeffs>{x, z});
    jacobi.add(t, apply_coeffs(b, std::vector<Coeffs>{x, yz}), 1);
    jacobi.add(t, apply_coeffs(b, std::vector<Coeffs>{xy, z}), -1);
    jacobi.add(t, apply_coeffs(b, std::vector<Coeffs>{y, xz}),
               -parity_sign(static_cast<long long>(space.degree(t[0])) * space.degree(t[1])));
  });
  return DglaDefects{symmetry_defect(b, SymmetryMode::Antisymmetric), std::move(jacobi), compose_at(d, 1, d),
                     compose_at(d, 1, b) - compose_at(b, 1, d) - compose_at(b, 2, d)};
}

LInfinityStructure from_dgla(const MultilinearMap& bracket, const MultilinearMap& differential) {
  const DglaDefects defects = check_dgla(bracket, differential);
  std::string failures;
  auto add = [&](const std::string& s) { failures += (failures.empty() ? "" : "; ") + s; };
  if (defects.antisymmetry) add("antisymmetry fails at " + tuple_to_string(*bracket.space(), defects.antisymmetry->tuple));
  if (auto w = first_failure(defects.jacobi)) add("Jacobi identity fails at " + *w);
  if (auto w = first_failure(defects.d_squared)) add("d^2 = 0 fails at " + *w);
  if (auto w = first_failure(defects.leibniz)) add("Leibniz rule fails at " + *w);
  if (!failures.empty()) throw PreconditionError("not a dg Lie algebra: " + failures, "dgla");

  const auto V = std::make_shared<const GradedVectorSpace>(bracket.space()->desuspension());
  MapFamily l;
  if (!differential.is_zero()) l.emplace(1, suspend_map(differential, V));
  if (!bracket.is_zero()) l.emplace(2, suspend_map(bracket, V));
  return LInfinityStructure(V, std::move(l), 2);
}

// ---------------------------------------------------------------------------

MultilinearMap linfty_rhs_unsuspended(const MapFamily& l, const SpacePtr& A, int n) {
  MultilinearMap out(A, n, 3 - n);
  for (int i = 2; i <= n - 1; ++i) {
    const int j = n + 1 - i;
    const auto* li = family_at(l, i);
    const auto* lj = family_at(l, j);
    if (!li || !lj) continue;
    const MultilinearMap comp = compose_at(*li, 1, *lj);
    const Rational s = parity_sign(static_cast<long long>(j) * (i - 1));
    for (const auto& sigma : unshuffles(j, i - 1)) out += s * Rational(sgn(sigma)) * sigma_act(sigma, comp);
  }
  return out;
}

MultilinearMap sh_rhs_unsuspended_lie(const MapFamily& l, const MapFamily& theta, int k, const SpacePtr& A, int n) {
  MultilinearMap out(A, n, k - n + 2);
  for (int i = 1; i <= n; ++i) {
    const int j = n + 1 - i;
    MultilinearMap inner(A, n, k - n + 2);
    if (j >= 2) {
      const auto* ti = family_at(theta, i);
      const auto* lj = family_at(l, j);
      if (ti && lj) inner += compose_at(*ti, 1, *lj);
    }
    if (i >= 2) {
      const auto* li = family_at(l, i);
      const auto* tj = family_at(theta, j);
      if (li && tj) inner += Rational(parity_sign(static_cast<long long>(k + 1) * i)) * compose_at(*li, 1, *tj);
    }
    if (inner.is_zero()) continue;
    const Rational s = -parity_sign(k + static_cast<long long>(j) * (i - 1));
    for (const auto& sigma : unshuffles(j, i - 1)) out += s * Rational(sgn(sigma)) * sigma_act(sigma, inner);
  }
  return out;
}

MultilinearMap linfty_defect_unsuspended(const MultilinearMap& d, const MapFamily& l, int n) {
  const SpacePtr& A = d.space();
  if (n == 1) return compose_at(d, 1, d);
  MultilinearMap ln = family_at(l, n) ? *family_at(l, n) : MultilinearMap(A, n, 2 - n);
  return endomorphism_differential(d, ln) - linfty_rhs_unsuspended(l, A, n);
}

MultilinearMap sh_defect_unsuspended_lie(const MultilinearMap& d, const MapFamily& l, const MapFamily& theta, int k,
                                         int n) {
  const SpacePtr& A = d.space();
  MultilinearMap tn = family_at(theta, n) ? *family_at(theta, n) : MultilinearMap(A, n, k - n + 1);
  return endomorphism_differential(d, tn) - sh_rhs_unsuspended_lie(l, theta, k, A, n);
}

LInfinityStructure suspend_linfty(const MultilinearMap& d, const MapFamily& l, const SpacePtr& V, int truncation) {
  MapFamily out;
  if (!d.is_zero()) out.emplace(1, suspend_map(Rational(-1) * d, V));
  for (const auto& [n, f] : l) {
    if (n < 2) throw InputError("unsuspended operations start at arity 2");
    if (!f.is_zero()) out.emplace(n, suspend_map(Rational(parity_sign(binom2(n))) * f, V));
  }
  return LInfinityStructure(V, std::move(out), truncation);
}

SHDerivationL suspend_lie_derivation(const MapFamily& theta, int k, const SpacePtr& V, int truncation) {
  MapFamily out;
  for (const auto& [n, f] : theta)
    if (!f.is_zero()) out.emplace(n, suspend_map(Rational(parity_sign(binom2(n))) * f, V));
  return SHDerivationL(V, k, std::move(out), truncation);
}

}  // namespace shd
