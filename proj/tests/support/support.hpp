#pragma once

// Shared helpers for the test suites: fixture loading, closed elements,
// and random A-infinity / L-infinity structures that are verified by
// construction (gauge transforms of strict ones).

#include <random>
#include <string>
#include <vector>

#include "shd/io.hpp"
#include "shd/random.hpp"

namespace shd::check {

std::string fixture_path(const std::string& name);
Document load_fixture(const std::string& name);

/// Fixtures that describe dg associative algebras and dg Lie algebras.
const std::vector<std::string>& assoc_fixtures();
const std::vector<std::string>& lie_fixtures();

/// A basis of ker(f_1) in each degree (all basis vectors when f_1 = 0).
std::vector<GradedVector> closed_basis(const OperationFamily& M);

SpacePtr random_space(std::mt19937_64& rng, int dim, int min_degree = -1, int max_degree = 1);

/// exp(ad xi) applied to the coderivation of M, truncated at arity n.
AInfinityStructure gauge_transform(const AInfinityStructure& M, const Coderivation& xi, int n);

/// A random structure on a random space of dimension <= max_dim: a random
/// square-zero m_1 or a fixture, conjugated by a random degree-0 gauge.
AInfinityStructure random_ainfty(std::mt19937_64& rng, int max_dim, int truncation);

/// Compares two families arity by arity up to n.
bool same_family(const OperationFamily& a, const OperationFamily& b, int n);

}  // namespace shd::check
