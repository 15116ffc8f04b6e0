#include "support.hpp"

namespace shd::check {

std::string fixture_path(const std::string& name) { return std::string(SHD_FIXTURE_DIR) + "/" + name; }

Document load_fixture(const std::string& name) { return load_document(fixture_path(name)); }

const std::vector<std::string>& assoc_fixtures() {
  static const std::vector<std::string> names{"dual_numbers.json", "exterior_one_odd.json", "dg_unit_plus_acyclic.json"};
  return names;
}

const std::vector<std::string>& lie_fixtures() {
  static const std::vector<std::string> names{"solvable_lie.json"};
  return names;
}

namespace {

// Null space of the matrix with the given columns (one per unknown), by
// reduction to row echelon form over Q.
std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) != pivot_col.end()) continue;
    std::vector<Rational> v(cols, 0);
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[static_cast<std::size_t>(pivot_col[i])] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<GradedVector> closed_basis(const OperationFamily& M) {
  const auto& space = *M.space();
  std::map<int, std::vector<int>> by_degree;
  for (std::size_t i = 0; i < space.dim(); ++i) by_degree[space.degree(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<GradedVector> out;
  const MultilinearMap* f1 = M.at(1);
  for (const auto& [deg, idx] : by_degree) {
    std::vector<std::vector<Rational>> rows(space.dim(), std::vector<Rational>(idx.size(), 0));
    for (std::size_t c = 0; c < idx.size(); ++c)
      if (f1)
        if (const Coeffs* y = f1->at({idx[c]}))
          for (const auto& [b, x] : *y) rows[static_cast<std::size_t>(b)][c] = x;
    for (const auto& v : null_space(rows, idx.size())) {
      GradedVector g(M.space());
      for (std::size_t c = 0; c < idx.size(); ++c) g.add(idx[c], v[c]);
      out.push_back(std::move(g));
    }
  }
  return out;
}

SpacePtr random_space(std::mt19937_64& rng, int dim, int min_degree, int max_degree) {
  std::uniform_int_distribution<int> deg(min_degree, max_degree);
  std::vector<BasisElement> basis;
  for (int i = 0; i < dim; ++i) basis.push_back({"v" + std::to_string(i + 1), deg(rng)});
  return make_space(std::move(basis));
}

AInfinityStructure gauge_transform(const AInfinityStructure& M, const Coderivation& xi, int n) {
  Coderivation term = codifferential_from_ainfty(M);
  MapFamily total = M.maps();
  Rational factorial = 1;
  for (int t = 1; t < n; ++t) {
    term = bracket(xi, term, n);
    factorial *= t;
    if (term.projections().empty()) break;
    for (const auto& [a, f] : term.projections()) {
      auto it = total.find(a);
      if (it == total.end()) total.emplace(a, Rational(1) / factorial * f);
      else it->second += Rational(1) / factorial * f;
    }
  }
  MapFamily nonzero;
  for (auto& [a, f] : total)
    if (a <= n && !f.is_zero()) nonzero.emplace(a, std::move(f));
  return AInfinityStructure(M.space(), std::move(nonzero), n);
}

AInfinityStructure random_ainfty(std::mt19937_64& rng, int max_dim, int truncation) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::optional<AInfinityStructure> base;
  const int choice = pick(rng);
  if (choice < assoc_fixtures().size() && max_dim >= 3) {
    base = ainfty_from(load_fixture(assoc_fixtures()[static_cast<std::size_t>(choice)]));
    base = AInfinityStructure(base->space(), base->maps(), truncation);
  } else {
    std::uniform_int_distribution<int> dims(1, max_dim);
    SpacePtr space = random_space(rng, dims(rng));
    // square-zero differential: disjoint arrows v_i -> v_j with |v_j| = |v_i| + 1
    MultilinearMap d(space, 1, 1);
    std::vector<bool> used(space->dim(), false);
    std::bernoulli_distribution coin(0.7);
    std::uniform_int_distribution<int> coef(1, 2);
    for (std::size_t i = 0; i < space->dim(); ++i)
      for (std::size_t j = 0; j < space->dim(); ++j)
        if (i != j && !used[i] && !used[j] && space->degree(static_cast<int>(j)) == space->degree(static_cast<int>(i)) + 1 &&
            coin(rng)) {
          d.add({static_cast<int>(i)}, static_cast<int>(j), coef(rng));
          used[i] = used[j] = true;
        }
    MapFamily m;
    if (!d.is_zero()) m.emplace(1, d);
    base = AInfinityStructure(space, std::move(m), truncation);
  }
  const Coderivation xi = random_coderivation(base->space(), 0, Flavor::Tensor, 2, truncation - 1, rng,
                                              RandomMapOptions{0.35, 1});
  return gauge_transform(*base, xi, truncation);
}

bool same_family(const OperationFamily& a, const OperationFamily& b, int n) {
  for (int i = 1; i <= n; ++i)
    if (!(a.get(i) == b.get(i))) return false;
  return true;
}

}  // namespace shd::check
