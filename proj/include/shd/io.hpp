#pragma once

// JSON documents: a graded basis, named multilinear maps, and optional
// structure metadata telling how the maps assemble.
//
//   {"basis":    [{"label": "e", "degree": 0}, ...],
//    "maps":     [{"name": "mu", "arity": 2, "degree": 0,
//                  "entries": [{"in": ["e","e"], "out": [{"label": "e", "num": "1", "den": "1"}]}]}],
//    "structure": "ainfty" | "linfty" | "dga" | "dgla",
//    "m": ["m1", "m2"], "theta": ["theta1"], "k": 0, "truncation": 4,
//    "product": "mu", "bracket": "b", "differential": "d",
//    "coderivation": {"degree": 0, "flavor": "tensor", "projections": ["xi2"], "theta0": [...]},
//    "note": "..."}
//
// "m" and "theta" list map names; arities come from the maps themselves.

#include <json.hpp>
#include <string>
#include <vector>

#include "shd/coalgebra.hpp"

namespace shd {

struct Document {
  SpacePtr space;
  std::vector<std::pair<std::string, MultilinearMap>> maps;
  nlohmann::json meta = nlohmann::json::object();  // every top-level field except basis and maps

  const MultilinearMap& map(const std::string& name) const;
  bool has_map(const std::string& name) const;
  std::string structure() const { return meta.value("structure", std::string()); }
};

/// Throws InputError on malformed documents.
Document parse_document(const nlohmann::json& j);
Document load_document(const std::string& path);
nlohmann::json to_json(const Document& doc);

nlohmann::json element_to_json(const GradedVectorSpace& space, const Coeffs& c);
Coeffs element_from_json(const GradedVectorSpace& space, const nlohmann::json& j);

/// Parses "e", "2*e", "e + 1/2*f - x" into a vector of the space.
GradedVector parse_element(const SpacePtr& space, const std::string& text);

/// The A-infinity structure described by a document: "dga" documents go
/// through from_dga, "ainfty" documents list their operations in "m".
AInfinityStructure ainfty_from(const Document& doc);
/// "dgla" through from_dgla, "linfty" from the names in "m", "ainfty"/"dga" by symmetrization.
LInfinityStructure linfty_from(const Document& doc);
SHDerivationA derivation_a_from(const Document& doc);
SHDerivationL derivation_l_from(const Document& doc);
/// The coderivation stored under "coderivation", if any.
std::optional<Coderivation> coderivation_from_document(const Document& doc);

Document document_from(const AInfinityStructure& M, const SHDerivationA* theta = nullptr);
Document document_from(const LInfinityStructure& L, const SHDerivationL* theta = nullptr);

}  // namespace shd
