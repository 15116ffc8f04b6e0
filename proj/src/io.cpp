#include "shd/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace shd {

using nlohmann::json;

namespace {

Rational rational_from(const json& num, const json& den) {
  auto text = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InputError("rational components must be integers or decimal strings");
  };
  Rational r;
  try {
    r = Rational(mpz_class(text(num)), mpz_class(text(den)));
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational " + num.dump() + "/" + den.dump());
  }
  if (r.get_den() == 0) throw InputError("zero denominator");
  r.canonicalize();
  return r;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw InputError(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

MultilinearMap map_from_json(const SpacePtr& space, const json& j) {
  const int arity = int_field(j, "arity");
  const int degree = int_field(j, "degree");
  if (arity < 0) throw InputError("negative arity");
  MultilinearMap f(space, arity, degree);
  for (const json& e : field(j, "entries")) {
    BasisTuple t;
    for (const json& l : field(e, "in")) t.push_back(space->index(l.get<std::string>()));
    if (static_cast<int>(t.size()) != arity) throw InputError("entry arity does not match map arity");
    try {
      f.add(t, element_from_json(*space, field(e, "out")));
    } catch (const SignConventionError& err) {
      throw InputError(std::string("map \"") + j.value("name", "") + "\": " + err.what());
    }
  }
  return f;
}

json map_to_json(const std::string& name, const MultilinearMap& f) {
  const auto& space = *f.space();
  json entries = json::array();
  for (const auto& [t, value] : f.entries()) {
    json in = json::array();
    for (int v : t) in.push_back(space.label(v));
    entries.push_back({{"in", in}, {"out", element_to_json(space, value)}});
  }
  return {{"name", name}, {"arity", f.arity()}, {"degree", f.degree()}, {"entries", entries}};
}

std::vector<std::string> name_list(const Document& doc, const char* key) {
  std::vector<std::string> out;
  if (!doc.meta.contains(key)) return out;
  const json& v = doc.meta.at(key);
  if (!v.is_array()) throw InputError(std::string("\"") + key + "\" must be a list of map names");
  for (const json& n : v) out.push_back(n.get<std::string>());
  return out;
}

MapFamily family_from(const Document& doc, const char* key) {
  MapFamily out;
  for (const auto& name : name_list(doc, key)) {
    const MultilinearMap& f = doc.map(name);
    if (!out.emplace(f.arity(), f).second)
      throw InputError(std::string("two maps of arity ") + std::to_string(f.arity()) + " in \"" + key + "\"");
  }
  return out;
}

int truncation_of(const Document& doc, const MapFamily& maps) {
  if (doc.meta.contains("truncation")) return doc.meta.at("truncation").get<int>();
  return maps.empty() ? 1 : std::max(1, maps.rbegin()->first);
}

int degree_k(const Document& doc) {
  if (!doc.meta.contains("k") || !doc.meta.at("k").is_number_integer())
    throw InputError("derivation documents need an integer \"k\"");
  return doc.meta.at("k").get<int>();
}

}  // namespace

const MultilinearMap& Document::map(const std::string& name) const {
  for (const auto& [n, f] : maps)
    if (n == name) return f;
  throw InputError("no map named \"" + name + "\"");
}

bool Document::has_map(const std::string& name) const {
  for (const auto& [n, f] : maps)
    if (n == name) return true;
  return false;
}

Coeffs element_from_json(const GradedVectorSpace& space, const json& j) {
  if (!j.is_array()) throw InputError("an element is a list of {label, num, den} terms");
  Coeffs out;
  for (const json& term : j) {
    const int b = space.index(field(term, "label").get<std::string>());
    const Rational c = rational_from(field(term, "num"), term.contains("den") ? term.at("den") : json(1));
    add_scaled(out, Coeffs{{b, c}}, 1);
  }
  return out;
}

json element_to_json(const GradedVectorSpace& space, const Coeffs& c) {
  json out = json::array();
  for (const auto& [b, x] : c)
    out.push_back({{"label", space.label(b)}, {"num", x.get_num().get_str()}, {"den", x.get_den().get_str()}});
  return out;
}

Document parse_document(const json& j) {
  if (!j.is_object()) throw InputError("document must be a JSON object");
  std::vector<BasisElement> basis;
  for (const json& b : field(j, "basis")) basis.push_back({field(b, "label").get<std::string>(), int_field(b, "degree")});
  Document doc;
  doc.space = make_space(std::move(basis));
  if (j.contains("maps")) {
    for (const json& m : j.at("maps")) {
      std::string name = field(m, "name").get<std::string>();
      if (doc.has_map(name)) throw InputError("duplicate map name \"" + name + "\"");
      doc.maps.emplace_back(name, map_from_json(doc.space, m));
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "basis" && it.key() != "maps") doc.meta[it.key()] = it.value();
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return parse_document(j);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

json to_json(const Document& doc) {
  json out = json::object();
  json basis = json::array();
  for (const auto& b : doc.space->basis()) basis.push_back({{"label", b.label}, {"degree", b.degree}});
  out["basis"] = basis;
  json maps = json::array();
  for (const auto& [name, f] : doc.maps) maps.push_back(map_to_json(name, f));
  out["maps"] = maps;
  for (auto it = doc.meta.begin(); it != doc.meta.end(); ++it) out[it.key()] = it.value();
  return out;
}

GradedVector parse_element(const SpacePtr& space, const std::string& text) {
  static const std::regex term(R"(\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_][A-Za-z0-9_']*)\s*)");
  GradedVector out(space);
  auto pos = text.cbegin();
  std::smatch m;
  bool first = true;
  while (pos != text.cend()) {
    if (!std::regex_search(pos, text.cend(), m, term, std::regex_constants::match_continuous))
      throw InputError("cannot parse element \"" + text + "\"");
    if (!first && !m[1].matched) throw InputError("missing sign between terms in \"" + text + "\"");
    Rational c = m[2].matched ? Rational(m[2].str()) : Rational(1);
    c.canonicalize();
    if (m[1].matched && m[1].str() == "-") c = -c;
    out.add(space->index(m[3].str()), c);
    pos = m[0].second;
    first = false;
  }
  if (first) throw InputError("empty element");
  return out;
}

AInfinityStructure ainfty_from(const Document& doc) {
  const std::string s = doc.structure();
  if (s == "dga") {
    const std::string d = doc.meta.value("differential", std::string());
    MultilinearMap diff = d.empty() ? MultilinearMap(doc.space, 1, 1) : doc.map(d);
    return from_dga(doc.map(doc.meta.value("product", std::string("mu"))), diff);
  }
  if (s == "ainfty") {
    MapFamily m = family_from(doc, "m");
    const int n = truncation_of(doc, m);
    return AInfinityStructure(doc.space, std::move(m), n);
  }
  throw InputError("document does not describe an A-infinity structure (structure = \"" + s + "\")");
}

LInfinityStructure linfty_from(const Document& doc) {
  const std::string s = doc.structure();
  if (s == "dgla") {
    const std::string d = doc.meta.value("differential", std::string());
    MultilinearMap diff = d.empty() ? MultilinearMap(doc.space, 1, 1) : doc.map(d);
    return from_dgla(doc.map(doc.meta.value("bracket", std::string("bracket"))), diff);
  }
  if (s == "linfty") {
    MapFamily l = family_from(doc, "m");
    const int n = truncation_of(doc, l);
    return LInfinityStructure(doc.space, std::move(l), n);
  }
  if (s == "ainfty" || s == "dga") return symmetrize_structure(ainfty_from(doc));
  throw InputError("document does not describe an L-infinity structure (structure = \"" + s + "\")");
}

SHDerivationA derivation_a_from(const Document& doc) {
  MapFamily theta = family_from(doc, "theta");
  if (!doc.meta.contains("theta")) throw InputError("document has no \"theta\" derivation");
  const int n = doc.meta.contains("theta_truncation") ? doc.meta.at("theta_truncation").get<int>()
                                                      : (theta.empty() ? 1 : theta.rbegin()->first);
  const AInfinityStructure M = ainfty_from(doc);
  return SHDerivationA(M.space(), degree_k(doc), std::move(theta), n);
}

SHDerivationL derivation_l_from(const Document& doc) {
  MapFamily theta = family_from(doc, "theta");
  if (!doc.meta.contains("theta")) throw InputError("document has no \"theta\" derivation");
  const int n = doc.meta.contains("theta_truncation") ? doc.meta.at("theta_truncation").get<int>()
                                                      : (theta.empty() ? 1 : theta.rbegin()->first);
  const LInfinityStructure L = linfty_from(doc);
  return SHDerivationL(L.space(), degree_k(doc), std::move(theta), n);
}

std::optional<Coderivation> coderivation_from_document(const Document& doc) {
  if (!doc.meta.contains("coderivation")) return std::nullopt;
  const json& c = doc.meta.at("coderivation");
  const std::string flavor = c.value("flavor", std::string("tensor"));
  if (flavor != "tensor" && flavor != "symmetric") throw InputError("coderivation flavor must be tensor or symmetric");
  MapFamily projections;
  for (const json& n : field(c, "projections")) {
    const MultilinearMap& f = doc.map(n.get<std::string>());
    projections.emplace(f.arity(), f);
  }
  std::optional<GradedVector> theta0;
  if (c.contains("theta0")) theta0 = GradedVector(doc.space, element_from_json(*doc.space, c.at("theta0")));
  return Coderivation(doc.space, int_field(c, "degree"), flavor == "tensor" ? Flavor::Tensor : Flavor::Symmetric,
                      std::move(projections), std::move(theta0));
}

namespace {

Document family_document(const OperationFamily& M, const OperationFamily* theta, const char* structure,
                         const char* prefix) {
  Document doc;
  doc.space = M.space();
  json m = json::array(), t = json::array();
  for (const auto& [n, f] : M.maps()) {
    const std::string name = prefix + std::to_string(n);
    doc.maps.emplace_back(name, f);
    m.push_back(name);
  }
  doc.meta["structure"] = structure;
  doc.meta["m"] = m;
  doc.meta["truncation"] = M.truncation();
  if (theta) {
    if (!(*theta->space() == *M.space())) throw InputError("derivation and structure live on different spaces");
    for (const auto& [n, f] : theta->maps()) {
      const std::string name = "theta" + std::to_string(n);
      doc.maps.emplace_back(name, f);
      t.push_back(name);
    }
    doc.meta["theta"] = t;
    doc.meta["k"] = theta->degree();
    doc.meta["theta_truncation"] = theta->truncation();
  }
  return doc;
}

}  // namespace

Document document_from(const AInfinityStructure& M, const SHDerivationA* theta) {
  return family_document(M, theta, "ainfty", "m");
}

Document document_from(const LInfinityStructure& L, const SHDerivationL* theta) {
  return family_document(L, theta, "linfty", "l");
}

}  // namespace shd
