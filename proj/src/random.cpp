#include "shd/random.hpp"

namespace shd {

MultilinearMap random_map(const SpacePtr& space, int arity, int degree, std::mt19937_64& rng,
                          const RandomMapOptions& options) {
  std::map<int, std::vector<int>> by_degree;
  for (std::size_t i = 0; i < space->dim(); ++i) by_degree[space->degree(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::bernoulli_distribution hit(options.density);
  std::uniform_int_distribution<int> coef(-options.max_coefficient, options.max_coefficient);

  MultilinearMap f(space, arity, degree);
  for_each_tuple(space->dim(), arity, [&](const BasisTuple& t) {
    auto it = by_degree.find(space->tuple_degree(t) + degree);
    if (it == by_degree.end()) return;
    Coeffs value;
    for (int b : it->second) {
      if (!hit(rng)) continue;
      if (int c = coef(rng); c != 0) value[b] = c;
    }
    if (!value.empty()) f.add(t, value);
  });
  return f;
}

MultilinearMap random_symmetric_map(const SpacePtr& space, int arity, int degree, std::mt19937_64& rng,
                                    const RandomMapOptions& options) {
  return compose_chi(random_map(space, arity, degree, rng, options));
}

Coderivation random_coderivation(const SpacePtr& space, int degree, Flavor flavor, int min_arity, int max_arity,
                                 std::mt19937_64& rng, const RandomMapOptions& options) {
  MapFamily projections;
  for (int n = std::max(1, min_arity); n <= max_arity; ++n) {
    MultilinearMap f = flavor == Flavor::Tensor ? random_map(space, n, degree, rng, options)
                                                : random_symmetric_map(space, n, degree, rng, options);
    if (!f.is_zero()) projections.emplace(n, std::move(f));
  }
  return Coderivation(space, degree, flavor, std::move(projections));
}

}  // namespace shd
