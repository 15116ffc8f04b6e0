#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "shd/coalgebra.hpp"
#include "support.hpp"

using namespace shd;

namespace {

AInfinityStructure fixture_a(const std::string& name) { return ainfty_from(check::load_fixture(name)); }

bool same_projections(const Coderivation& a, const Coderivation& b, int max_len) {
  for (int n = 1; n <= max_len; ++n) {
    const MultilinearMap* x = a.at(n);
    const MultilinearMap* y = b.at(n);
    if (!x && !y) continue;
    if (!((x ? *x : MultilinearMap(a.space(), n, a.degree())) == (y ? *y : MultilinearMap(b.space(), n, b.degree()))))
      return false;
  }
  return true;
}

Coderivation scaled_sum(const Coderivation& a, const Coderivation& b, const Rational& c, int max_len) {
  MapFamily out;
  for (int n = 1; n <= max_len; ++n) {
    MultilinearMap f = a.at(n) ? *a.at(n) : MultilinearMap(a.space(), n, a.degree());
    if (b.at(n)) f += c * *b.at(n);
    if (!f.is_zero()) out.emplace(n, std::move(f));
  }
  return Coderivation(a.space(), a.degree(), a.flavor(), std::move(out));
}

WordPairCombination apply_on_pairs(const Coderivation& F, const WordPairCombination& c, bool tensor) {
  const auto& space = *F.space();
  WordPairCombination out;
  auto add = [&](std::vector<int> u, std::vector<int> v, const Rational& x) {
    auto [it, ins] = out.try_emplace(std::make_pair(std::move(u), std::move(v)), 0);
    it->second += x;
    if (it->second == 0) out.erase(it);
  };
  for (const auto& [uv, x] : c) {
    const auto& [u, v] = uv;
    for (const auto& [w, y] : tensor ? apply_tensor(F, u) : apply_sym(F, u)) add(w, v, x * y);
    const Rational s = parity_sign(static_cast<long long>(F.degree()) * space.tuple_degree(u));
    for (const auto& [w, y] : tensor ? apply_tensor(F, v) : apply_sym(F, v)) add(u, w, s * x * y);
  }
  return out;
}

WordPairCombination coproduct_of(const WordCombination& c, const GradedVectorSpace& space, bool tensor) {
  WordPairCombination out;
  for (const auto& [w, x] : c)
    for (const auto& [uv, y] : tensor ? coproduct_tensor(w) : coproduct_sym(space, w)) {
      auto [it, ins] = out.try_emplace(uv, 0);
      it->second += x * y;
      if (it->second == 0) out.erase(it);
    }
  return out;
}

}  // namespace

TEST(TensorLift, LeibnizOnTwoFactors) {
  const auto s = make_space({{"a", 1}, {"b", 0}, {"c", 2}});
  MultilinearMap f(s, 1, 1);
  f.add({0}, 2, 1);  // a -> c
  f.add({1}, 0, 1);  // b -> a
  const Coderivation F(s, 1, Flavor::Tensor, {{1, f}});
  // F(a (x) b) = f(a) (x) b + (-1)^{|a|} a (x) f(b)
  const WordCombination want{{{2, 1}, 1}, {{0, 0}, -1}};
  EXPECT_EQ(apply_tensor(F, TensorWord{0, 1}), want);
  EXPECT_TRUE(apply_tensor(Coderivation(s, 1, Flavor::Tensor, {}), TensorWord{0, 1}).empty());
}

TEST(TensorLift, UnitalInsertionsAtEveryGap) {
  const auto s = make_space({{"a", 1}, {"b", 1}, {"c", 0}});
  const auto a = GradedVector::basis(s, 0);
  const Coderivation T(s, 1, Flavor::Tensor, {}, a);
  // gaps before v1, between, after v2: signs (-1)^{|a|(prefix degree)}
  const WordCombination got = apply_tensor(T, TensorWord{1, 2});
  const WordCombination want{{{0, 1, 2}, 1}, {{1, 0, 2}, -1}, {{1, 2, 0}, -1}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(apply_tensor(T, TensorWord{}), (WordCombination{{{0}, 1}}));
}

TEST(SymLift, Examples) {
  const auto s = make_space({{"a", 1}, {"b", 0}, {"c", 2}});
  std::mt19937_64 rng(5);
  const auto f1 = random_symmetric_map(s, 1, 1, rng, {0.9, 2});
  const Coderivation F1(s, 1, Flavor::Symmetric, {{1, f1}});
  for (int v = 0; v < 3; ++v) {
    WordCombination want;
    const auto y = check::value_at(f1, {v});
    for (const auto& [b, c] : y.coeffs()) want[{b}] += c;
    EXPECT_EQ(apply_sym(F1, std::vector<int>{v}), want);
  }
  const auto f2 = random_symmetric_map(s, 2, 1, rng, {0.9, 2});
  const Coderivation F2(s, 1, Flavor::Symmetric, {{2, f2}});
  for_each_tuple(3, 2, [&](const BasisTuple& t) {
    WordCombination want;
    const auto y = check::value_at(f2, t);
    for (const auto& [b, c] : y.coeffs()) want[{b}] += c;
    EXPECT_EQ(apply_sym(F2, t), want);
  });
  // three letters: the three unshuffles of Sh(2,1) with their Koszul signs
  for_each_tuple(3, 3, [&](const BasisTuple& t) {
    WordCombination want;
    const auto degs = s->tuple_degrees(t);
    for (const auto& sigma : check::filtered_unshuffles(2, 1)) {
      const int x = t[static_cast<std::size_t>(sigma[0] - 1)], y = t[static_cast<std::size_t>(sigma[1] - 1)],
                z = t[static_cast<std::size_t>(sigma[2] - 1)];
      const int e = check::swap_sign(sigma, degs);
      const auto v = check::value_at(f2, {x, y});
      for (const auto& [b, c] : v.coeffs())
        add_scaled(want, sym_word(*s, {b, z}), e * c);
    }
    EXPECT_EQ(apply_sym(F2, t), want);
  });
  EXPECT_THROW(apply_sym(Coderivation(s, 1, Flavor::Tensor, {}), std::vector<int>{0}), InputError);
  EXPECT_THROW(apply_tensor(F2, TensorWord{0}), InputError);
}

TEST(SymWord, CanonicalOrderAndOddSquares) {
  const auto s = make_space({{"b", 1}, {"a", 1}, {"c", 0}});
  auto n = normalize_sym(*s, {0, 1});
  ASSERT_TRUE(n);
  EXPECT_EQ(n->first, (std::vector<int>{1, 0}));  // degree ties broken by label
  EXPECT_EQ(n->second, -1);
  EXPECT_FALSE(normalize_sym(*s, {0, 2, 0}));
  auto e = normalize_sym(*s, {2, 2, 1});
  ASSERT_TRUE(e);
  EXPECT_EQ(e->first, (std::vector<int>{2, 2, 1}));
  EXPECT_EQ(e->second, 1);
}

TEST(Coderivation, RejectsBadProjections) {
  const auto s = make_space({{"a", 0}, {"b", 1}});
  MultilinearMap f(s, 2, 1);
  f.add({0, 0}, 1, 1);
  EXPECT_THROW(Coderivation(s, 0, Flavor::Tensor, {{2, f}}), InputError);
  MultilinearMap g(s, 2, 0);
  g.add({0, 1}, 1, 1);
  EXPECT_THROW(Coderivation(s, 0, Flavor::Symmetric, {{2, g}}), InputError);
  EXPECT_NO_THROW(Coderivation(s, 0, Flavor::Tensor, {{2, g}}));
}

TEST(Bracket, AntisymmetryAndJacobi) {
  std::mt19937_64 rng(211);
  for (const Flavor flavor : {Flavor::Tensor, Flavor::Symmetric}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto s = check::random_space(rng, 2);
      std::uniform_int_distribution<int> dg(-1, 1);
      const int p = dg(rng), q = dg(rng), r = dg(rng);
      const RandomMapOptions opt{0.4, 1};
      const auto F = random_coderivation(s, p, flavor, 1, 3, rng, opt);
      const auto G = random_coderivation(s, q, flavor, 1, 3, rng, opt);
      const auto H = random_coderivation(s, r, flavor, 1, 3, rng, opt);
      const int L = 3;
      const auto FG = bracket(F, G, L), GF = bracket(G, F, L);
      EXPECT_TRUE(same_projections(scaled_sum(FG, GF, parity_sign(static_cast<long long>(p) * q), L),
                                   Coderivation(s, p + q, flavor, {}), L));
      // [F,[G,H]] = [[F,G],H] + (-1)^{pq} [G,[F,H]]
      const auto lhs = bracket(F, bracket(G, H, L), L);
      const auto rhs = scaled_sum(bracket(FG, H, L), bracket(G, bracket(F, H, L), L),
                                  parity_sign(static_cast<long long>(p) * q), L);
      EXPECT_TRUE(same_projections(lhs, rhs, L)) << "trial " << trial;
    }
  }
}

TEST(Bracket, OddSquareZeroAndZeroArgument) {
  const auto M = fixture_a("dual_numbers.json");
  const auto m = codifferential_from_ainfty(M);
  EXPECT_TRUE(bracket(m, m, 4).projections().empty());
  EXPECT_TRUE(bracket(m, Coderivation(M.space(), 0, Flavor::Tensor, {}), 4).projections().empty());
  EXPECT_THROW(bracket(m, codifferential_from_linfty(symmetrize_structure(M)), 3), InputError);
}

TEST(Bracket, SelfBracketIsTwiceTheDefect) {
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 6; ++trial) {
    const auto s = check::random_space(rng, 2);
    MapFamily m;
    for (int n = 1; n <= 3; ++n) m.emplace(n, random_map(s, n, 1, rng, {0.4, 1}));
    const AInfinityStructure M(s, m, 3);
    const auto b = bracket(codifferential_from_ainfty(M), codifferential_from_ainfty(M), 4);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(b.at(n) ? *b.at(n) : MultilinearMap(s, n, 2), Rational(2) * ainfty_defect(M, n));
    const auto L = symmetrize_structure(M);
    const auto bl = bracket(codifferential_from_linfty(L), codifferential_from_linfty(L), 4);
    for (int n = 1; n <= 4; ++n)
      EXPECT_EQ(bl.at(n) ? *bl.at(n) : MultilinearMap(s, n, 2), Rational(2) * linfty_defect(L, n));
  }
}

TEST(Bracket, VerifiedStructuresSquareToZero) {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 6; ++trial) {
    const auto M = check::random_ainfty(rng, 3, 4);
    const auto m = codifferential_from_ainfty(M);
    EXPECT_TRUE(bracket(m, m, 4).projections().empty());
  }
}

TEST(Bracket, CalibrationAgainstShDefect) {
  std::mt19937_64 rng(229);
  for (int trial = 0; trial < 10; ++trial) {
    const auto M = check::random_ainfty(rng, 2, 3);
    std::uniform_int_distribution<int> kk(-1, 2);
    const int k = kk(rng);
    const auto xi = random_coderivation(M.space(), k, Flavor::Tensor, 1, 3, rng, {0.4, 1});
    const SHDerivationA T(M.space(), k, xi.projections(), 3);
    const auto b = bracket(codifferential_from_ainfty(M), coderivation_from(T), 4);
    for (int q = 1; q <= 4; ++q)
      EXPECT_EQ(b.at(q) ? *b.at(q) : MultilinearMap(M.space(), q, k + 1),
                Rational(bracket_calibration(k)) * sh_defect(M, T, q));
    const auto L = symmetrize_structure(M);
    const auto TL = symmetrize_derivation(M, T);
    const auto bl = bracket(codifferential_from_linfty(L), coderivation_from(TL), 4);
    for (int q = 1; q <= 4; ++q)
      EXPECT_EQ(bl.at(q) ? *bl.at(q) : MultilinearMap(M.space(), q, k + 1),
                Rational(bracket_calibration(k)) * sh_defect(L, TL, q));
  }
}

TEST(Reservoir, ZeroAndSelf) {
  const auto M = fixture_a("dual_numbers.json");
  EXPECT_TRUE(reservoir_derivation(M, Coderivation(M.space(), 0, Flavor::Tensor, {})).maps().empty());
  const auto T = reservoir_derivation(M, codifferential_from_ainfty(M));
  EXPECT_EQ(T.k(), 2);
  EXPECT_TRUE(T.maps().empty());
}

TEST(Reservoir, RandomXiGivesDerivations) {
  std::mt19937_64 rng(233);
  for (const auto& name : check::assoc_fixtures()) {
    const auto M = fixture_a(name);
    for (int trial = 0; trial < 4; ++trial) {
      std::uniform_int_distribution<int> kk(-2, 1);
      const auto xi = random_coderivation(M.space(), kk(rng), Flavor::Tensor, 1, 3, rng, {0.5, 2});
      const auto T = reservoir_derivation(M, xi);
      EXPECT_EQ(T.k(), xi.degree() + 1);
      for (int q = 1; q <= 4; ++q) EXPECT_TRUE(sh_defect(M, T, q).is_zero()) << name;
    }
  }
  for (int trial = 0; trial < 4; ++trial) {
    const auto M = check::random_ainfty(rng, 3, 4);
    const auto xi = random_coderivation(M.space(), 0, Flavor::Tensor, 1, 2, rng, {0.4, 1});
    const auto T = reservoir_derivation(M, xi);
    for (int q = 1; q <= 4; ++q) EXPECT_TRUE(sh_defect(M, T, q).is_zero());
    const auto L = symmetrize_structure(M);
    const auto xs = random_coderivation(L.space(), 1, Flavor::Symmetric, 1, 2, rng, {0.4, 1});
    const auto TL = reservoir_derivation(L, xs);
    for (int q = 1; q <= 4; ++q) EXPECT_TRUE(sh_defect(L, TL, q).is_zero());
  }
}

TEST(InnerViaCounital, AgreesWithDirectFormula) {
  std::mt19937_64 rng(239);
  auto compare = [](const AInfinityStructure& M) {
    for (const auto& a : check::closed_basis(M)) {
      const auto direct = inner_derivation(M, a);
      const auto via = inner_via_counital(M, a);
      EXPECT_EQ(direct.k(), via.k());
      EXPECT_TRUE(check::same_family(direct, via, 4)) << a.to_string();
    }
  };
  for (const auto& name : check::assoc_fixtures()) compare(fixture_a(name));
  for (int trial = 0; trial < 5; ++trial) compare(check::random_ainfty(rng, 3, 4));
  const auto M = fixture_a("dual_numbers.json");
  EXPECT_TRUE(inner_via_counital(M, GradedVector(M.space())).maps().empty());
}

TEST(InnerViaCounital, ZeroProjectionIsM1OfA) {
  const auto M = fixture_a("dg_unit_plus_acyclic.json");
  const auto& s = M.space();
  const auto x = GradedVector::basis(s, s->index("x"));
  const Coderivation theta(s, *x.degree(), Flavor::Tensor, {}, x);
  const auto b = bracket(codifferential_from_ainfty(M), theta, 1);
  ASSERT_TRUE(b.theta0());
  EXPECT_EQ(*b.theta0(), apply(*M.at(1), {x}));
  EXPECT_FALSE(b.theta0()->is_zero());
  try {
    inner_via_counital(M, x);
    FAIL() << "non-closed element accepted";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.kind(), "closed");
  }
}

TEST(Chi, Examples) {
  const auto s = make_space({{"a", 1}, {"b", 1}, {"c", 0}});
  EXPECT_EQ(chi(*s, std::vector<int>{2}), (WordCombination{{{2}, 1}}));
  EXPECT_EQ(chi(*s, std::vector<int>{0, 1}), (WordCombination{{{0, 1}, 1}, {{1, 0}, -1}}));
  EXPECT_EQ(chi(*s, std::vector<int>{0, 2}), (WordCombination{{{0, 2}, 1}, {{2, 0}, 1}}));
  EXPECT_TRUE(chi(*s, std::vector<int>{0, 0}).empty());
}

TEST(Chi, CoalgebraMorphism) {
  std::mt19937_64 rng(241);
  for (int trial = 0; trial < 4; ++trial) {
    const auto s = check::random_space(rng, 3);
    for (int n = 1; n <= 4; ++n)
      for (const auto& w : all_words(s->dim(), n)) {
        const auto sw = sym_word(*s, w);
        const WordPairCombination lhs = coproduct_of(chi(*s, sw), *s, true);
        WordPairCombination rhs;
        for (const auto& [w0, x] : sw)
          for (const auto& [uv, y] : coproduct_sym(*s, w0))
            for (const auto& [u2, a] : chi(*s, uv.first))
              for (const auto& [v2, b] : chi(*s, uv.second)) {
                auto [it, ins] = rhs.try_emplace(std::make_pair(u2, v2), 0);
                it->second += x * y * a * b;
                if (it->second == 0) rhs.erase(it);
              }
        EXPECT_EQ(lhs, rhs);
      }
  }
}

TEST(Chi, IntertwinesLifts) {
  std::mt19937_64 rng(251);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = check::random_space(rng, 2);
    std::uniform_int_distribution<int> dg(-1, 1);
    const auto F = random_coderivation(s, dg(rng), Flavor::Tensor, 1, 3, rng, {0.5, 1});
    MapFamily sym;
    for (const auto& [n, f] : F.projections()) sym.emplace(n, compose_chi(f));
    const Coderivation FS(s, F.degree(), Flavor::Symmetric, sym);
    for (int n = 1; n <= 3; ++n)
      for (const auto& w : all_words(s->dim(), n)) {
        const auto sw = sym_word(*s, w);
        EXPECT_EQ(chi(*s, apply_sym(FS, sw)), apply_tensor(F, chi(*s, sw)));
      }
  }
}

TEST(CoderivationLaw, TensorAndSymmetric) {
  std::mt19937_64 rng(257);
  for (const Flavor flavor : {Flavor::Tensor, Flavor::Symmetric}) {
    const bool tensor = flavor == Flavor::Tensor;
    for (int trial = 0; trial < 4; ++trial) {
      const auto s = check::random_space(rng, 2);
      std::uniform_int_distribution<int> dg(-1, 1);
      const auto F = random_coderivation(s, dg(rng), flavor, 1, 3, rng, {0.5, 1});
      for (int n = 1; n <= 4; ++n)
        for (const auto& w : all_words(s->dim(), n)) {
          const WordCombination start = tensor ? WordCombination{{w, 1}} : sym_word(*s, w);
          const WordCombination Fw = tensor ? apply_tensor(F, start) : apply_sym(F, start);
          EXPECT_EQ(coproduct_of(Fw, *s, tensor), apply_on_pairs(F, coproduct_of(start, *s, tensor), tensor));
        }
    }
  }
}

TEST(Symmetrize, LengthTwoFormulaAndZero) {
  const auto M = fixture_a("exterior_one_odd.json");
  const auto L = symmetrize_structure(M);
  const auto& s = *M.space();
  for_each_tuple(s.dim(), 2, [&](const BasisTuple& t) {
    const GradedVector want = check::value_at(*M.at(2), t) +
                              Rational(parity_sign(static_cast<long long>(s.degree(t[0])) * s.degree(t[1]))) *
                                  check::value_at(*M.at(2), {t[1], t[0]});
    EXPECT_EQ(check::value_at(L.get(2), t), want);
  });
  EXPECT_TRUE(symmetrize_structure(AInfinityStructure::zero(M.space(), 3)).maps().empty());
}

TEST(Symmetrize, DgaGivesCommutatorDgla) {
  for (const auto& name : check::assoc_fixtures()) {
    const auto doc = check::load_fixture(name);
    const auto& mu = doc.map("mu");
    const MultilinearMap d = doc.has_map("d") ? doc.map("d") : MultilinearMap(mu.space(), 1, 1);
    MultilinearMap comm = mu;
    comm -= sigma_act(Permutation({2, 1}), mu);
    const auto L = from_dgla(comm, d);
    const auto S = symmetrize_structure(from_dga(mu, d));
    EXPECT_TRUE(check::same_family(S, L, 3)) << name;
  }
}

TEST(Symmetrize, FixturesAndDerivations) {
  for (const auto& name : check::assoc_fixtures()) {
    const auto M = fixture_a(name);
    const auto L = symmetrize_structure(M);
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(linfty_defect(L, n).is_zero());
    const auto T = symmetrize_derivation(M, tautological_derivation(M));
    EXPECT_TRUE(check::same_family(T, tautological_derivation(L), 4));
    for (const auto& a : check::closed_basis(M)) {
      const auto I = symmetrize_derivation(M, inner_derivation(M, a));
      EXPECT_TRUE(check::same_family(I, inner_derivation(L, a), 3)) << name << " " << a.to_string();
      for (int q = 1; q <= 3; ++q) EXPECT_TRUE(sh_defect(L, I, q).is_zero());
    }
  }
}
