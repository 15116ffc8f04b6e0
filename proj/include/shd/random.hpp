#pragma once

// Seeded random tables for exploratory derivations (reservoir mode) and tests.
// Coefficients are small integers; every run is reproducible from its seed.

#include <random>

#include "shd/coalgebra.hpp"

namespace shd {

struct RandomMapOptions {
  double density = 0.5;  // chance that a tuple gets a nonzero value
  int max_coefficient = 2;
};

/// Homogeneous map with random values on a random subset of basis tuples.
MultilinearMap random_map(const SpacePtr& space, int arity, int degree, std::mt19937_64& rng,
                          const RandomMapOptions& options = {});

/// Graded symmetric map: a random map composed with chi.
MultilinearMap random_symmetric_map(const SpacePtr& space, int arity, int degree, std::mt19937_64& rng,
                                    const RandomMapOptions& options = {});

/// Coderivation with random projections of arities min_arity..max_arity.
Coderivation random_coderivation(const SpacePtr& space, int degree, Flavor flavor, int min_arity, int max_arity,
                                 std::mt19937_64& rng, const RandomMapOptions& options = {});

}  // namespace shd
