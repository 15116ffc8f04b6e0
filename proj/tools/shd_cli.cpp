// Command-line front end. Talks to the engine only through the C interface.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shd/shd.h"

namespace {

constexpr int kDefaultMaxArity = 4;
const std::vector<int> kDefaultWindow{-1, 0, 1, 2};

struct Common {
  std::optional<int> max_arity;
  std::string format;  // empty: the subcommand default
  std::string out;
  std::uint64_t seed = 0;
};

struct Failure {
  int code;
};

int exit_code(shd_status s) {
  switch (s) {
    case SHD_OK: return 0;
    case SHD_DEFECT:
    case SHD_PRECONDITION: return 1;
    case SHD_INPUT_ERROR: return 2;
    default: return 3;
  }
}

int max_arity(const Common& c) {
  if (c.max_arity) return *c.max_arity;
  if (const char* env = std::getenv("SHD_MAX_ARITY")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: SHD_MAX_ARITY is not an integer: " << env << "\n";
      throw Failure{2};
    }
  }
  return kDefaultMaxArity;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-arity", c.max_arity, "Largest arity checked (default 4, or $SHD_MAX_ARITY)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "text or latex (operad --print-diff defaults to latex)")->check(CLI::IsMember({"text", "latex"}));
  cmd->add_option("--out", c.out, "Write the result here instead of stdout");
  cmd->add_option("--seed", c.seed, "Seed for random instances");
}

// Checks a status; on failure prints the library message and leaves with its exit code.
void check(shd_status s) {
  if (s == SHD_OK) return;
  std::cerr << "error: " << shd_last_error() << "\n";
  throw Failure{exit_code(s)};
}

struct StringDeleter {
  void operator()(char* s) const { shd_string_free(s); }
};
struct DocumentDeleter {
  void operator()(shd_document* d) const { shd_document_free(d); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;
using OwnedDocument = std::unique_ptr<shd_document, DocumentDeleter>;

OwnedDocument load(const std::string& path) {
  shd_document* d = nullptr;
  check(shd_document_load(path.c_str(), &d));
  return OwnedDocument(d);
}

void write(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) {
    std::cerr << "error: cannot write " << c.out << "\n";
    throw Failure{2};
  }
  f << text;
}

void write_document(const Common& c, shd_document* raw) {
  OwnedDocument doc(raw);
  char* json = nullptr;
  check(shd_document_to_json(doc.get(), &json));
  write(c, OwnedString(json).get());
}

// Prints a report; a defect still prints before the exit status is set.
int report(const Common& c, shd_status s, char* text) {
  if (s != SHD_OK && s != SHD_DEFECT) check(s);
  write(c, OwnedString(text).get());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong homotopy derivations: verify, construct and compare"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(shd_version()));

  Common common;
  int result = 0;

  std::string verify_path, kind;
  auto* verify = app.add_subcommand("verify", "Check the relations of a structure or derivation file");
  verify->add_option("path", verify_path, "Input document")->required();
  verify->add_option("--kind", kind, "What to verify")
      ->required()
      ->check(CLI::IsMember({"ainfty", "linfty", "sh-derivation"}));
  add_common(verify, common);

  std::string derive_path, mode, element;
  int derive_k = 1;
  auto* derive = app.add_subcommand("derive", "Construct a derivation of a verified structure");
  derive->add_option("path", derive_path, "Input document")->required();
  derive->add_option("--mode", mode, "Construction")
      ->required()
      ->check(CLI::IsMember({"inner", "tautological", "reservoir"}));
  derive->add_option("--element", element, "Closed element for inner mode, e.g. \"2*e - f\"");
  derive->add_option("--k", derive_k, "Degree of the derivation in reservoir mode");
  add_common(derive, common);

  std::string sym_path;
  auto* symmetrize = app.add_subcommand("symmetrize", "Symmetrize an A-infinity structure and its derivation");
  symmetrize->add_option("path", sym_path, "Input document")->required();
  add_common(symmetrize, common);

  std::string bracket_a, bracket_b;
  auto* bracket = app.add_subcommand("bracket", "Bracket of two derivations of the same structure");
  bracket->add_option("first", bracket_a, "First derivation document")->required();
  bracket->add_option("second", bracket_b, "Second derivation document")->required();
  add_common(bracket, common);

  std::string preset, flip, sites_of;
  std::optional<int> operad_k, print_diff;
  bool check_d2 = false;
  auto* operad = app.add_subcommand("operad", "Symbolic differentials of the resolutions of Ass and Lie");
  operad->add_option("preset", preset, "ass or lie")->required()->check(CLI::IsMember({"ass", "lie"}));
  operad->add_option("--k", operad_k, "Degree of the derivation generator (default: the window -1..2)");
  auto* pd = operad->add_option("--print-diff", print_diff, "Print d(x^n) and d(xbar^n)")->check(CLI::Range(2, 64));
  auto* cd = operad->add_flag("--check-d2", check_d2, "Check d^2 = 0 on all generators up to --max-arity");
  auto* ls = operad->add_option("--list-sites", sites_of, "List the sign exponents of a generator's differential");
  operad->add_option("--flip", flip, "Negate one sign exponent, as GENERATOR:SITE")->needs(cd);
  pd->excludes(cd)->excludes(ls);
  cd->excludes(ls);
  add_common(operad, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version come through here with code 0; anything else is bad input.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      auto doc = load(verify_path);
      char* text = nullptr;
      const shd_status st = shd_verify(doc.get(), kind.c_str(), max_arity(common), &text);
      result = report(common, st, text);
    } else if (derive->parsed()) {
      auto doc = load(derive_path);
      shd_document* out = nullptr;
      check(shd_derive(doc.get(), mode.c_str(), element.empty() ? nullptr : element.c_str(), derive_k, common.seed,
                       max_arity(common), &out));
      write_document(common, out);
    } else if (symmetrize->parsed()) {
      auto doc = load(sym_path);
      shd_document* out = nullptr;
      check(shd_symmetrize(doc.get(), max_arity(common), &out));
      write_document(common, out);
    } else if (bracket->parsed()) {
      auto a = load(bracket_a);
      auto b = load(bracket_b);
      shd_document* out = nullptr;
      check(shd_bracket(a.get(), b.get(), &out));
      write_document(common, out);
    } else if (operad->parsed()) {
      const bool latex = common.format == "latex";
      const std::vector<int> ks = operad_k ? std::vector<int>{*operad_k} : kDefaultWindow;
      if (print_diff) {
        std::string text;
        for (int k : ks) {
          char* s = nullptr;
          check(shd_operad_differential(preset.c_str(), k, *print_diff, common.format != "text", &s));
          text += "k = " + std::to_string(k) + "\n" + OwnedString(s).get();
        }
        write(common, text);
      } else if (!sites_of.empty()) {
        char* s = nullptr;
        check(shd_operad_sign_sites(preset.c_str(), ks.front(), max_arity(common), sites_of.c_str(), &s));
        write(common, OwnedString(s).get());
      } else if (check_d2) {
        std::string gen, site;
        if (!flip.empty()) {
          const auto colon = flip.find(':');
          if (colon == std::string::npos) {
            std::cerr << "error: --flip expects GENERATOR:SITE\n";
            return 2;
          }
          gen = flip.substr(0, colon);
          site = flip.substr(colon + 1);
        }
        std::string text;
        for (int k : ks) {
          char* s = nullptr;
          const shd_status st = shd_operad_check_d2(preset.c_str(), k, max_arity(common), flip.empty() ? nullptr : gen.c_str(),
                                                    flip.empty() ? nullptr : site.c_str(), latex, &s);
          if (st != SHD_OK && st != SHD_DEFECT) check(st);
          text += OwnedString(s).get();
          result = std::max(result, exit_code(st));
        }
        write(common, text);
      } else {
        std::cerr << "error: operad needs --print-diff N, --check-d2 or --list-sites GENERATOR\n";
        return 2;
      }
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return result;
}
