#include "shd/shd.h"

#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "shd/io.hpp"
#include "shd/operad.hpp"
#include "shd/random.hpp"

struct shd_document {
  shd::Document doc;
};

using namespace shd;

namespace {

thread_local std::string last_error;

shd_status fail(shd_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
shd_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const InputError& e) {
    return fail(SHD_INPUT_ERROR, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SHD_INPUT_ERROR, std::string("malformed JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    return fail(SHD_PRECONDITION, e.what());
  } catch (const std::exception& e) {
    return fail(SHD_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InputError(std::string(what) + " is null");
}

void require_arity(int max_arity) {
  if (max_arity < 1) throw InputError("max arity must be at least 1");
}

bool is_lie(const Document& doc) {
  const std::string s = doc.structure();
  return s == "linfty" || s == "dgla";
}

class Report {
public:
  explicit Report(std::string title) { os_ << title << "\n"; }

  void relation(const std::string& what, int n, const MultilinearMap& defect) {
    os_ << "  " << what << " arity " << n << ": ";
    if (auto where = first_failure(defect)) {
      os_ << "fails at " << *where << "\n";
      if (first_.empty()) first_ = what + " arity " + std::to_string(n) + " at " + *where;
    } else {
      os_ << "0\n";
    }
  }

  void failure(const std::string& message) {
    os_ << "  " << message << "\n";
    if (first_.empty()) first_ = message;
  }

  bool ok() const { return first_.empty(); }

  std::string finish() {
    if (ok())
      os_ << "PASS\n";
    else
      os_ << "FAIL: " << first_ << "\n";
    return os_.str();
  }

private:
  std::ostringstream os_;
  std::string first_;
};

void scan(Report& r, const AInfinityStructure& M, int N) {
  for (int n = 1; n <= N; ++n) r.relation("A-infinity relation", n, ainfty_defect(M, n));
}

void scan(Report& r, const LInfinityStructure& L, int N) {
  for (int n = 1; n <= N; ++n) r.relation("higher Jacobi relation", n, linfty_defect(L, n));
}

template <typename Structure, typename Derivation>
void scan(Report& r, const Structure& S, const Derivation& theta, int N) {
  for (int q = 1; q <= N; ++q) r.relation("derivation relation", q, sh_defect(S, theta, q));
}

// Builds the structure of a document, turning failed dga/dgla axioms into report lines.
template <typename Build>
auto structure_or_report(Report& r, Build&& build) -> std::optional<decltype(build())> {
  try {
    return build();
  } catch (const PreconditionError& e) {
    r.failure(e.what());
    return std::nullopt;
  }
}

// The structure must satisfy its relations before anything is derived from it.
template <typename Structure>
void require_verified(const Structure& S, int N) {
  Report r("");
  scan(r, S, N);
  if (!r.ok()) throw PreconditionError("input structure is not verified: " + r.finish().substr(1));
}

GradedVector element_of(const SpacePtr& space, const std::string& text) {
  if (text.find_first_not_of(" \t0") == std::string::npos && text.find('0') != std::string::npos)
    return GradedVector(space);
  return parse_element(space, text);
}

bool same_structure(const OperationFamily& a, const OperationFamily& b) {
  if (!(*a.space() == *b.space())) return false;
  const int n = std::max(a.truncation(), b.truncation());
  for (int i = 1; i <= n; ++i) {
    const auto* f = a.at(i);
    const auto* g = b.at(i);
    const bool fz = !f || f->is_zero(), gz = !g || g->is_zero();
    if (fz != gz) return false;
    if (!fz && !(*f == *g)) return false;
  }
  return true;
}

shd_status emit(Document doc, shd_document** out) {
  *out = new shd_document{std::move(doc)};
  return SHD_OK;
}

}  // namespace

extern "C" {

const char* shd_version(void) { return "1.0.0"; }

const char* shd_last_error(void) { return last_error.c_str(); }

void shd_string_free(char* s) { std::free(s); }

shd_status shd_document_load(const char* path, shd_document** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output handle");
    return emit(load_document(path), out);
  });
}

shd_status shd_document_parse(const char* json_text, shd_document** out) {
  return guarded([&] {
    require(json_text, "JSON text");
    require(out, "output handle");
    return emit(parse_document(nlohmann::json::parse(json_text)), out);
  });
}

shd_status shd_document_to_json(const shd_document* doc, char** out) {
  return guarded([&] {
    require(doc, "document");
    require(out, "output string");
    *out = duplicate(to_json(doc->doc).dump(2) + "\n");
    return SHD_OK;
  });
}

void shd_document_free(shd_document* doc) { delete doc; }

shd_status shd_verify(const shd_document* doc, const char* kind, int max_arity, char** report) {
  return guarded([&] {
    require(doc, "document");
    require(kind, "kind");
    require(report, "report");
    require_arity(max_arity);
    const Document& d = doc->doc;
    const std::string k = kind;
    Report r("verify " + k + " up to arity " + std::to_string(max_arity));
    if (k == "ainfty") {
      if (auto M = structure_or_report(r, [&] { return ainfty_from(d); })) scan(r, *M, max_arity);
    } else if (k == "linfty") {
      if (auto L = structure_or_report(r, [&] { return linfty_from(d); })) scan(r, *L, max_arity);
    } else if (k == "sh-derivation") {
      if (!d.meta.contains("theta")) throw InputError("document has no derivation (field \"theta\")");
      if (is_lie(d)) {
        if (auto L = structure_or_report(r, [&] { return linfty_from(d); })) {
          scan(r, *L, max_arity);
          scan(r, *L, derivation_l_from(d), max_arity);
        }
      } else if (auto M = structure_or_report(r, [&] { return ainfty_from(d); })) {
        scan(r, *M, max_arity);
        scan(r, *M, derivation_a_from(d), max_arity);
      }
    } else {
      throw InputError("unknown kind '" + k + "' (expected ainfty, linfty or sh-derivation)");
    }
    const bool ok = r.ok();
    *report = duplicate(r.finish());
    return ok ? SHD_OK : SHD_DEFECT;
  });
}

shd_status shd_derive(const shd_document* doc, const char* mode, const char* element, int k, uint64_t seed,
                      int max_arity, shd_document** out) {
  return guarded([&] {
    require(doc, "document");
    require(mode, "mode");
    require(out, "output handle");
    require_arity(max_arity);
    const Document& d = doc->doc;
    const std::string m = mode;
    if (m != "inner" && m != "tautological" && m != "reservoir")
      throw InputError("unknown mode '" + m + "' (expected inner, tautological or reservoir)");
    if (m == "inner" && !element) throw InputError("inner derivations need an element");
    std::mt19937_64 rng(seed);
    const RandomMapOptions opts{0.5, 2};
    Document result;
    if (is_lie(d)) {
      const LInfinityStructure L = linfty_from(d);
      require_verified(L, max_arity);
      const SHDerivationL theta =
          m == "inner"          ? inner_derivation(L, element_of(L.space(), element))
          : m == "tautological" ? tautological_derivation(L)
                                : reservoir_derivation(L, random_coderivation(L.space(), k - 1, Flavor::Symmetric, 1, 2,
                                                                              rng, opts));
      result = document_from(L, &theta);
    } else {
      const AInfinityStructure M = ainfty_from(d);
      require_verified(M, max_arity);
      const SHDerivationA theta =
          m == "inner"          ? inner_derivation(M, element_of(M.space(), element))
          : m == "tautological" ? tautological_derivation(M)
                                : reservoir_derivation(M, random_coderivation(M.space(), k - 1, Flavor::Tensor, 1, 2,
                                                                              rng, opts));
      result = document_from(M, &theta);
    }
    result.meta["derived"] = m == "reservoir" ? m + " (seed " + std::to_string(seed) + ")" : m;
    return emit(std::move(result), out);
  });
}

shd_status shd_symmetrize(const shd_document* doc, int max_arity, shd_document** out) {
  return guarded([&] {
    require(doc, "document");
    require(out, "output handle");
    require_arity(max_arity);
    const Document& d = doc->doc;
    if (is_lie(d)) throw InputError("symmetrize expects an A-infinity or dg associative document");
    const AInfinityStructure M = ainfty_from(d);
    require_verified(M, max_arity);
    const LInfinityStructure L = symmetrize_structure(M);
    if (!d.meta.contains("theta")) return emit(document_from(L), out);
    const SHDerivationA theta = derivation_a_from(d);
    Report r("");
    scan(r, M, theta, max_arity);
    if (!r.ok()) throw PreconditionError("input derivation is not verified: " + r.finish().substr(1));
    const SHDerivationL sym = symmetrize_derivation(M, theta);
    return emit(document_from(L, &sym), out);
  });
}

shd_status shd_bracket(const shd_document* a, const shd_document* b, shd_document** out) {
  return guarded([&] {
    require(a, "first document");
    require(b, "second document");
    require(out, "output handle");
    const Document& da = a->doc;
    const Document& db = b->doc;
    if (!da.meta.contains("theta") || !db.meta.contains("theta"))
      throw InputError("both documents must carry a derivation (field \"theta\")");
    if (is_lie(da) != is_lie(db)) throw InputError("cannot bracket an A-infinity and an L-infinity derivation");
    if (is_lie(da)) {
      const LInfinityStructure L = linfty_from(da);
      if (!same_structure(L, linfty_from(db))) throw InputError("the derivations belong to different structures");
      const SHDerivationL theta = derivation_bracket(derivation_l_from(da), derivation_l_from(db));
      return emit(document_from(L, &theta), out);
    }
    const AInfinityStructure M = ainfty_from(da);
    if (!same_structure(M, ainfty_from(db))) throw InputError("the derivations belong to different structures");
    const SHDerivationA theta = derivation_bracket(derivation_a_from(da), derivation_a_from(db));
    return emit(document_from(M, &theta), out);
  });
}

shd_status shd_operad_differential(const char* preset, int k, int n, int latex, char** out) {
  return guarded([&] {
    require(preset, "preset");
    require(out, "output string");
    if (n < 2) throw InputError("generators start at arity 2");
    const Resolution R = make_resolution(parse_preset(preset), k, n);
    auto render = [&](const FreeOperadElement& e) { return latex ? to_latex(e) : to_text(e); };
    const std::string x = "x^" + std::to_string(n), xbar = "xbar^" + std::to_string(n);
    std::string text = (latex ? "\\partial x^{" + std::to_string(n) + "} = " : "d(" + x + ") = ") +
                       render(generator_differential(R, x)) + "\n";
    text += (latex ? "\\partial \\underline{x}^{" + std::to_string(n) + "} = " : "d(" + xbar + ") = ") +
            render(generator_differential(R, xbar)) + "\n";
    *out = duplicate(text);
    return SHD_OK;
  });
}

shd_status shd_operad_check_d2(const char* preset, int k, int max_arity, const char* flip_generator,
                               const char* flip_site, int latex, char** report) {
  return guarded([&] {
    require(preset, "preset");
    require(report, "report");
    std::optional<SignFlip> flip;
    if (flip_generator || flip_site) {
      if (!flip_generator || !flip_site) throw InputError("a sign flip needs both a generator and a site");
      const Resolution R = make_resolution(parse_preset(preset), k, max_arity);
      const auto sites = sign_sites(R, flip_generator);
      if (std::find(sites.begin(), sites.end(), flip_site) == sites.end())
        throw InputError(std::string("generator ") + flip_generator + " has no sign site '" + flip_site + "'");
      flip = SignFlip{flip_generator, flip_site};
    }
    const DSquaredReport r = check_d_squared(parse_preset(preset), k, max_arity, flip);
    *report = duplicate(r.to_text(latex != 0));
    return r.ok() ? SHD_OK : SHD_DEFECT;
  });
}

shd_status shd_operad_sign_sites(const char* preset, int k, int max_arity, const char* generator, char** out) {
  return guarded([&] {
    require(preset, "preset");
    require(generator, "generator");
    require(out, "output string");
    const Resolution R = make_resolution(parse_preset(preset), k, max_arity);
    std::string text;
    for (const auto& s : sign_sites(R, generator)) text += s + "\n";
    *out = duplicate(text);
    return SHD_OK;
  });
}

}  // extern "C"
