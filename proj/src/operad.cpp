#include "shd/operad.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

namespace shd {

Signature::Signature(std::vector<GeneratorSpec> generators) : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].arity < 0) throw InputError("generator " + generators_[i].name + " has negative arity");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[j].name == generators_[i].name)
        throw InputError("duplicate generator name " + generators_[i].name);
  }
}

std::optional<int> Signature::find(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int Signature::index(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw InputError("unknown generator " + name);
}

// --- trees -------------------------------------------------------------------------

Tree Tree::leaf(int label) {
  Tree t;
  t.label = label;
  return t;
}

Tree Tree::corolla(int gen, int arity) {
  Tree t;
  t.gen = gen;
  for (int i = 1; i <= arity; ++i) t.children.push_back(leaf(i));
  return t;
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.is_leaf()) return a.label <=> b.label;
  if (auto c = a.gen <=> b.gen; c != 0) return c;
  return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(), b.children.begin(),
                                                b.children.end());
}

bool operator==(const Tree& a, const Tree& b) { return (a <=> b) == 0; }

int tree_arity(const Tree& t) {
  if (t.is_leaf()) return 1;
  int n = 0;
  for (const auto& c : t.children) n += tree_arity(c);
  return n;
}

int tree_weight(const Tree& t) {
  if (t.is_leaf()) return 0;
  int w = 1;
  for (const auto& c : t.children) w += tree_weight(c);
  return w;
}

int tree_degree(const Tree& t, const Signature& sig) {
  if (t.is_leaf()) return 0;
  int d = sig.at(t.gen).degree;
  for (const auto& c : t.children) d += tree_degree(c, sig);
  return d;
}

namespace {

void collect_leaves(const Tree& t, std::vector<int>& out) {
  if (t.is_leaf()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

int min_label(const Tree& t) {
  if (t.is_leaf()) return t.label;
  int m = std::numeric_limits<int>::max();
  for (const auto& c : t.children) m = std::min(m, min_label(c));
  return m;
}

void relabel(Tree& t, const std::function<int(int)>& f) {
  if (t.is_leaf()) {
    t.label = f(t.label);
    return;
  }
  for (auto& c : t.children) relabel(c, f);
}

}  // namespace

std::vector<int> leaf_word(const Tree& t) {
  std::vector<int> out;
  collect_leaves(t, out);
  return out;
}

Sign canonicalize(Tree& t, const Signature& sig) {
  if (t.is_leaf()) return 1;
  Sign s = 1;
  for (auto& c : t.children) s *= canonicalize(c, sig);
  const auto& spec = sig.at(t.gen);
  if (static_cast<int>(t.children.size()) != spec.arity)
    throw InputError("vertex " + spec.name + " has " + std::to_string(t.children.size()) + " inputs");
  if (spec.rep == Rep::Regular) return s;
  std::vector<int> keys, degs;
  for (const auto& c : t.children) {
    keys.push_back(min_label(c));
    degs.push_back(tree_degree(c, sig));
  }
  const Permutation p = sorting_permutation(std::span<const int>(keys));
  if (p == Permutation::identity(keys.size())) return s;
  s *= koszul_sign(p, degs);
  if (spec.rep == Rep::Sign) s *= sgn(p);
  t.children = p.act(t.children);
  return s;
}

// --- elements ----------------------------------------------------------------------

FreeOperadElement::FreeOperadElement(SignaturePtr sig, int arity) : sig_(std::move(sig)), arity_(arity) {
  if (!sig_) throw InputError("free operad element without a signature");
  if (arity < 0) throw InputError("negative arity");
}

FreeOperadElement FreeOperadElement::generator(SignaturePtr sig, const std::string& name) {
  const int g = sig->index(name);
  const int n = sig->at(g).arity;
  return from_tree(std::move(sig), Tree::corolla(g, n));
}

FreeOperadElement FreeOperadElement::identity(SignaturePtr sig) { return from_tree(std::move(sig), Tree::leaf(1)); }

FreeOperadElement FreeOperadElement::from_tree(SignaturePtr sig, Tree t, const Rational& c) {
  std::vector<int> labels = leaf_word(t);
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != static_cast<int>(i) + 1) throw InputError("tree leaves are not labelled 1..n");
  FreeOperadElement e(std::move(sig), static_cast<int>(labels.size()));
  e.add(std::move(t), c);
  return e;
}

std::optional<int> FreeOperadElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  return degree_;
}

Rational FreeOperadElement::coefficient(Tree t) const {
  const Sign s = canonicalize(t, *sig_);
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : Rational(s) * it->second;
}

void FreeOperadElement::add(Tree t, const Rational& c) {
  if (c == 0) return;
  if (tree_arity(t) != arity_) throw InputError("tree arity does not match the element");
  const int d = tree_degree(t, *sig_);
  if (!terms_.empty() && d != degree_)
    throw InputError("inhomogeneous element: degree " + std::to_string(d) + " added to degree " +
                     std::to_string(degree_));
  degree_ = d;
  const Sign s = canonicalize(t, *sig_);
  auto [it, inserted] = terms_.try_emplace(std::move(t), 0);
  it->second += Rational(s) * c;
  if (it->second == 0) terms_.erase(it);
}

void FreeOperadElement::check_compatible(const FreeOperadElement& other, const char* what) const {
  if (sig_ != other.sig_ && sig_->generators().size() != other.sig_->generators().size())
    throw InputError(std::string(what) + ": elements over different signatures");
  if (arity_ != other.arity_) throw InputError(std::string(what) + ": arity mismatch");
}

FreeOperadElement& FreeOperadElement::operator+=(const FreeOperadElement& other) {
  check_compatible(other, "sum");
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

FreeOperadElement& FreeOperadElement::operator-=(const FreeOperadElement& other) {
  check_compatible(other, "difference");
  for (const auto& [t, c] : other.terms_) add(t, -c);
  return *this;
}

FreeOperadElement& FreeOperadElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

bool FreeOperadElement::operator==(const FreeOperadElement& other) const {
  return arity_ == other.arity_ && terms_ == other.terms_;
}

// --- composition -------------------------------------------------------------------

namespace {

// Grafts b onto the leaf of a labelled slot and returns the sign
// (-1)^{|b| * (degrees of the vertices of a after that leaf)}.
Sign graft_at(Tree& a, int slot, const Tree& b, int b_arity, int b_degree, const Signature& sig) {
  bool found = false;
  long long after = 0;
  std::function<void(Tree&)> walk = [&](Tree& t) {
    if (t.is_leaf()) {
      if (t.label == slot) {
        t = b;
        relabel(t, [&](int l) { return l + slot - 1; });
        found = true;
      } else if (t.label > slot) {
        t.label += b_arity - 1;
      }
      return;
    }
    if (found) after += sig.at(t.gen).degree;
    for (auto& c : t.children) walk(c);
  };
  walk(a);
  if (!found) throw InputError("no leaf labelled " + std::to_string(slot));
  return parity_sign(static_cast<long long>(b_degree) * after);
}

// Substitutes kids[i-1] for the leaf labelled i of s. The sign reorders the kids
// into the planar leaf order of s and moves each kid past the vertices of s
// that follow its leaf.
Sign graft_children(Tree& s, const std::vector<Tree>& kids, const std::vector<int>& kid_degrees,
                    const Signature& sig) {
  const std::vector<int> word = leaf_word(s);
  Sign sign = koszul_sign(Permutation(word), kid_degrees);
  long long inserted = 0;
  std::function<void(Tree&)> walk = [&](Tree& t) {
    if (t.is_leaf()) {
      const auto i = static_cast<std::size_t>(t.label - 1);
      inserted += kid_degrees[i];
      t = kids[i];
      return;
    }
    sign *= parity_sign(static_cast<long long>(sig.at(t.gen).degree) * inserted);
    for (auto& c : t.children) walk(c);
  };
  walk(s);
  return sign;
}

}  // namespace

FreeOperadElement tree_compose(const FreeOperadElement& a, int slot, const FreeOperadElement& b) {
  if (slot < 1 || slot > a.arity())
    throw InputError("tree_compose: slot " + std::to_string(slot) + " out of range 1.." + std::to_string(a.arity()));
  const Signature& sig = *a.signature();
  FreeOperadElement out(a.signature(), a.arity() + b.arity() - 1);
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      Tree t = ta;
      const Sign s = graft_at(t, slot, tb, b.arity(), tree_degree(tb, sig), sig);
      out.add(std::move(t), Rational(s) * ca * cb);
    }
  }
  return out;
}

FreeOperadElement sigma_act(const Permutation& p, const FreeOperadElement& e) {
  if (static_cast<int>(p.size()) != e.arity())
    throw InputError("sigma_act: permutation of size " + std::to_string(p.size()) + " on arity " +
                     std::to_string(e.arity()));
  FreeOperadElement out(e.signature(), e.arity());
  for (const auto& [t, c] : e.terms()) {
    Tree r = t;
    relabel(r, [&](int l) { return p(l); });
    out.add(std::move(r), c);
  }
  return out;
}

namespace {

using TermList = std::vector<std::pair<Tree, Rational>>;

// All terms of D(t), where `prefix` is the degree of the vertices preceding t.
void derive(const Tree& t, long long prefix, const DerivationRule& rule, int degree, const Signature& sig,
            TermList& out) {
  if (t.is_leaf()) return;
  auto it = rule.find(t.gen);
  if (it == rule.end()) throw InputError("derivation rule has no entry for " + sig.at(t.gen).name);
  std::vector<int> kid_degrees;
  for (const auto& c : t.children) kid_degrees.push_back(tree_degree(c, sig));
  const Sign outer = parity_sign(static_cast<long long>(degree) * prefix);
  for (const auto& [s, c] : it->second.terms()) {
    Tree g = s;
    const Sign sg = graft_children(g, t.children, kid_degrees, sig);
    out.emplace_back(std::move(g), Rational(outer * sg) * c);
  }
  long long before = prefix + sig.at(t.gen).degree;
  for (std::size_t j = 0; j < t.children.size(); ++j) {
    TermList sub;
    derive(t.children[j], before, rule, degree, sig, sub);
    for (auto& [child, c] : sub) {
      Tree copy = t;
      copy.children[j] = std::move(child);
      out.emplace_back(std::move(copy), c);
    }
    before += kid_degrees[j];
  }
}

}  // namespace

FreeOperadElement extend_derivation(const DerivationRule& rule, int degree, const FreeOperadElement& e) {
  const Signature& sig = *e.signature();
  for (const auto& [g, image] : rule)
    if (image.arity() != sig.at(g).arity)
      throw InputError("derivation rule for " + sig.at(g).name + " has arity " + std::to_string(image.arity()));
  FreeOperadElement out(e.signature(), e.arity());
  for (const auto& [t, c] : e.terms()) {
    TermList terms;
    derive(t, 0, rule, degree, sig, terms);
    for (auto& [u, cu] : terms) out.add(std::move(u), c * cu);
  }
  return out;
}

// --- resolutions -------------------------------------------------------------------

Preset parse_preset(const std::string& name) {
  if (name == "ass") return Preset::Ass;
  if (name == "lie") return Preset::Lie;
  throw InputError("unknown preset '" + name + "' (expected ass or lie)");
}

const char* preset_name(Preset p) { return p == Preset::Ass ? "ass" : "lie"; }

Resolution make_resolution(Preset preset, int k, int max_arity) {
  if (max_arity < 2) throw InputError("max arity must be at least 2");
  const Rep rep = preset == Preset::Ass ? Rep::Regular : Rep::Sign;
  std::vector<GeneratorSpec> gens;
  for (int n = 2; n <= max_arity; ++n)
    gens.push_back({"x^" + std::to_string(n), n, 2 - n, rep, "x^{" + std::to_string(n) + "}"});
  for (int n = 2; n <= max_arity; ++n)
    gens.push_back({"xbar^" + std::to_string(n), n, k + 1 - n, rep, "\\underline{x}^{" + std::to_string(n) + "}"});
  gens.push_back({"phi", 1, k, Rep::Regular, "\\phi"});
  return Resolution{preset, k, max_arity, std::make_shared<const Signature>(std::move(gens))};
}

namespace {

std::string x_name(int n) { return "x^" + std::to_string(n); }
std::string xbar_name(int n) { return "xbar^" + std::to_string(n); }

// Hands out the signs of the printed exponents, flipping the selected one and
// recording the site names.
class SiteSigns {
public:
  SiteSigns(std::string generator, const std::optional<SignFlip>& flip, std::vector<std::string>* sites)
      : generator_(std::move(generator)), flip_(flip), sites_(sites) {}

  Sign operator()(const std::string& site, long long exponent) const {
    if (sites_) sites_->push_back(site);
    Sign s = parity_sign(exponent);
    if (flip_ && flip_->generator == generator_ && flip_->site == site) s = -s;
    return s;
  }

private:
  std::string generator_;
  const std::optional<SignFlip>& flip_;
  std::vector<std::string>* sites_;
};

struct SourceBlock {
  std::string site;
  long long exponent;
  FreeOperadElement element;  // unsigned
};

// The summands of d(x^n) grouped by printed exponent.
std::vector<SourceBlock> source_blocks(const Resolution& R, int n) {
  const auto& sig = R.signature;
  std::vector<SourceBlock> out;
  for (int i = 2; i <= n - 1; ++i) {
    const int j = n + 1 - i;
    const auto xi = FreeOperadElement::generator(sig, x_name(i));
    const auto xj = FreeOperadElement::generator(sig, x_name(j));
    if (R.preset == Preset::Ass) {
      for (int l = 1; l <= i; ++l)
        out.push_back({"i=" + std::to_string(i) + ",l=" + std::to_string(l),
                       i + static_cast<long long>(l + 1) * (j + 1), tree_compose(xi, l, xj)});
    } else {
      const auto comp = tree_compose(xi, 1, xj);
      FreeOperadElement block(sig, n);
      for (const auto& sigma : unshuffles(j, i - 1)) block += Rational(sgn(sigma)) * sigma_act(sigma, comp);
      out.push_back({"i=" + std::to_string(i) + ",j=" + std::to_string(j),
                     static_cast<long long>(j) * (i - 1), std::move(block)});
    }
  }
  return out;
}

// s applied to a tree of x vertices: one term per vertex, that vertex barred,
// with the Koszul sign of s passing the earlier vertices. Every vertex after
// the first carries its own printed exponent.
FreeOperadElement apply_s(const Resolution& R, const FreeOperadElement& e, const std::string& site,
                          const SiteSigns& signs) {
  const Signature& sig = *R.signature;
  FreeOperadElement out(R.signature, e.arity());
  for (const auto& [t, c] : e.terms()) {
    int position = 0;
    long long prefix = 0;
    std::function<void(Tree&, Tree&)> walk = [&](Tree& node, Tree& root) {
      if (node.is_leaf()) return;
      const int g = node.gen;
      const int n = sig.at(g).arity;
      const int gen_degree = sig.at(g).degree;
      const Sign s = position == 0 ? Sign(1)
                                   : signs("(k+1)i:" + site + (position > 1 ? "#" + std::to_string(position) : ""),
                                           static_cast<long long>(R.k - 1) * prefix);
      node.gen = sig.index(xbar_name(n));
      out.add(root, Rational(s) * c);
      node.gen = g;
      ++position;
      prefix += gen_degree;
      for (auto& ch : node.children) walk(ch, root);
    };
    Tree copy = t;
    walk(copy, copy);
  }
  return out;
}

FreeOperadElement differential_impl(const Resolution& R, const std::string& generator,
                                    const std::optional<SignFlip>& flip, std::vector<std::string>* sites) {
  const auto& sig = R.signature;
  const int g = sig->index(generator);
  const auto& spec = sig->at(g);
  const SiteSigns signs(generator, flip, sites);
  FreeOperadElement out(sig, spec.arity);
  if (generator == "phi") return out;
  const bool bar = generator.rfind("xbar^", 0) == 0;
  const int n = spec.arity;
  const auto blocks = source_blocks(R, n);
  if (!bar) {
    for (const auto& b : blocks) out += Rational(signs(b.site, b.exponent)) * b.element;
    return out;
  }
  const auto phi = FreeOperadElement::generator(sig, "phi");
  const auto xn = FreeOperadElement::generator(sig, x_name(n));
  out += tree_compose(phi, 1, xn);
  FreeOperadElement right(sig, n);
  for (int l = 1; l <= n; ++l) right += tree_compose(xn, l, phi);
  out -= Rational(signs("nk", static_cast<long long>(n) * R.k)) * right;
  for (const auto& b : blocks)
    out -= Rational(signs("k+" + b.site, R.k + b.exponent)) * apply_s(R, b.element, b.site, signs);
  return out;
}

}  // namespace

FreeOperadElement generator_differential(const Resolution& R, const std::string& generator,
                                         const std::optional<SignFlip>& flip) {
  return differential_impl(R, generator, flip, nullptr);
}

std::vector<std::string> sign_sites(const Resolution& R, const std::string& generator) {
  std::vector<std::string> sites;
  differential_impl(R, generator, std::nullopt, &sites);
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

DerivationRule differential_rule(const Resolution& R, const std::optional<SignFlip>& flip) {
  DerivationRule rule;
  for (std::size_t g = 0; g < R.signature->size(); ++g)
    rule.emplace(static_cast<int>(g), generator_differential(R, R.signature->at(static_cast<int>(g)).name, flip));
  return rule;
}

DerivationRule suspension_rule(const Resolution& R) {
  DerivationRule rule;
  for (int n = 2; n <= R.max_arity; ++n)
    rule.emplace(R.signature->index(x_name(n)), FreeOperadElement::generator(R.signature, xbar_name(n)));
  return rule;
}

bool DSquaredReport::ok() const {
  return std::all_of(residues.begin(), residues.end(), [](const Residue& r) { return r.value.is_zero(); });
}

std::string DSquaredReport::to_text(bool latex) const {
  std::ostringstream os;
  os << "preset " << preset_name(preset) << ", k = " << k << ", max arity " << max_arity << "\n";
  for (const auto& r : residues) {
    os << "  d^2(" << r.generator << ") ";
    if (r.value.is_zero())
      os << "= 0\n";
    else
      os << "!= 0, residue: " << (latex ? to_latex(r.value) : shd::to_text(r.value)) << "\n";
  }
  os << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

DSquaredReport check_d_squared(Preset preset, int k, int max_arity, const std::optional<SignFlip>& flip) {
  const Resolution R = make_resolution(preset, k, max_arity);
  const DerivationRule rule = differential_rule(R, flip);
  std::vector<std::future<FreeOperadElement>> jobs;
  for (const auto& [g, image] : rule)
  {
    const FreeOperadElement* target = &image;
    jobs.push_back(std::async(std::launch::async, [&rule, target] { return extend_derivation(rule, 1, *target); }));
  }
  DSquaredReport report{preset, k, max_arity, {}};
  std::size_t i = 0;
  for (const auto& [g, image] : rule) report.residues.push_back({R.signature->at(g).name, jobs[i++].get()});
  return report;
}

// --- evaluation --------------------------------------------------------------------

namespace {

struct EvalContext {
  const Signature& sig;
  const std::vector<const MultilinearMap*>& maps;
  const GradedVectorSpace& space;
  const BasisTuple& tuple;

  int arg_degree(int label) const { return space.degree(tuple[static_cast<std::size_t>(label - 1)]); }
};

// Value of the subtree on the arguments selected by its leaf labels, taken in
// increasing label order. `labels` receives those labels, sorted.
Coeffs eval_tree(const Tree& t, const EvalContext& ctx, std::vector<int>& labels) {
  if (t.is_leaf()) {
    labels = {t.label};
    return Coeffs{{ctx.tuple[static_cast<std::size_t>(t.label - 1)], 1}};
  }
  std::vector<Coeffs> values;
  std::vector<int> word;
  long long sign_exp = 0;
  long long args_before = 0;
  for (const auto& c : t.children) {
    std::vector<int> sub;
    Coeffs v = eval_tree(c, ctx, sub);
    if (v.empty()) return {};
    sign_exp += static_cast<long long>(tree_degree(c, ctx.sig)) * args_before;
    for (int l : sub) {
      args_before += ctx.arg_degree(l);
      word.push_back(l);
    }
    values.push_back(std::move(v));
  }
  // Koszul sign of bringing the arguments from label order into grouped order.
  for (std::size_t a = 0; a < word.size(); ++a)
    for (std::size_t b = a + 1; b < word.size(); ++b)
      if (word[a] > word[b]) sign_exp += static_cast<long long>(ctx.arg_degree(word[a])) * ctx.arg_degree(word[b]);
  labels = word;
  std::sort(labels.begin(), labels.end());
  Coeffs out = apply_coeffs(*ctx.maps[static_cast<std::size_t>(t.gen)], values);
  if (parity_sign(sign_exp) < 0)
    for (auto& [i, c] : out) c = -c;
  return out;
}

}  // namespace

MultilinearMap evaluate(const FreeOperadElement& e, const Assignment& assign, const SpacePtr& space) {
  const Signature& sig = *e.signature();
  std::vector<const MultilinearMap*> maps(sig.size(), nullptr);
  for (const auto& [name, f] : assign) {
    const int g = sig.index(name);
    const auto& spec = sig.at(g);
    if (f.arity() != spec.arity)
      throw InputError("evaluate: " + name + " needs arity " + std::to_string(spec.arity) + ", got " +
                       std::to_string(f.arity()));
    if (!f.is_zero() && f.degree() != spec.degree)
      throw InputError("evaluate: " + name + " needs degree " + std::to_string(spec.degree) + ", got " +
                       std::to_string(f.degree()));
    if (!(*f.space() == *space)) throw InputError("evaluate: " + name + " lives on another space");
    maps[static_cast<std::size_t>(g)] = &f;
  }
  std::function<void(const Tree&)> require = [&](const Tree& t) {
    if (t.is_leaf()) return;
    if (!maps[static_cast<std::size_t>(t.gen)]) throw InputError("evaluate: no operation assigned to " + sig.at(t.gen).name);
    for (const auto& c : t.children) require(c);
  };
  for (const auto& [t, c] : e.terms()) require(t);

  MultilinearMap out(space, e.arity(), e.degree().value_or(0));
  for_each_tuple(space->dim(), e.arity(), [&](const BasisTuple& tuple) {
    const EvalContext ctx{sig, maps, *space, tuple};
    for (const auto& [t, c] : e.terms()) {
      std::vector<int> labels;
      const Coeffs v = eval_tree(t, ctx, labels);
      if (!v.empty()) out.add(tuple, v, c);
    }
  });
  return out;
}

// --- rendering ---------------------------------------------------------------------

namespace {

struct Style {
  bool latex;
  std::string name(const GeneratorSpec& g) const { return latex && !g.latex.empty() ? g.latex : g.name; }
  std::string circ(int slot) const {
    return latex ? "\\circ_{" + std::to_string(slot) + "}" : " o_" + std::to_string(slot) + " ";
  }
};

bool has_vertex_child(const Tree& t) {
  return std::any_of(t.children.begin(), t.children.end(), [](const Tree& c) { return !c.is_leaf(); });
}

std::string render_planar(const Tree& t, const Signature& sig, const Style& style) {
  std::string head = style.name(sig.at(t.gen));
  bool composite = false;
  int offset = 0;
  for (const auto& c : t.children) {
    if (!c.is_leaf()) {
      if (composite) head = "(" + head + ")";
      std::string sub = render_planar(c, sig, style);
      if (has_vertex_child(c)) sub = "(" + sub + ")";
      head += style.circ(offset + 1) + sub;
      composite = true;
    }
    offset += tree_arity(c);
  }
  return head;
}

std::string render_tree(const Tree& t, const Signature& sig, const Style& style) {
  if (t.is_leaf()) return style.latex ? "\\mathrm{id}" : "id";
  std::string body = render_planar(t, sig, style);
  const std::vector<int> word = leaf_word(t);
  if (std::is_sorted(word.begin(), word.end())) return body;
  std::string perm;
  for (std::size_t i = 0; i < word.size(); ++i) perm += (i ? "," : "") + std::to_string(word[i]);
  if (has_vertex_child(t)) body = "(" + body + ")";
  return style.latex ? "\\langle " + perm + "\\rangle\\cdot " + body : "<" + perm + ">." + body;
}

std::string render_coefficient(const Rational& c, const Style& style) {
  if (c == 1) return "";
  if (c.get_den() == 1) return c.get_num().get_str() + (style.latex ? "" : "*");
  if (style.latex) return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
  return c.get_str() + "*";
}

std::string render(const FreeOperadElement& e, const Style& style) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : e.terms()) {
    const bool negative = c < 0;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += render_coefficient(negative ? Rational(-c) : c, style) + render_tree(t, *e.signature(), style);
    first = false;
  }
  return out;
}

}  // namespace

std::string to_latex(const FreeOperadElement& e) { return render(e, Style{true}); }
std::string to_text(const FreeOperadElement& e) { return render(e, Style{false}); }

}  // namespace shd
