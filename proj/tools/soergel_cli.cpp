#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"
#include "soergel/hecke.hpp"
#include "soergel/realization.hpp"
#include "soergel/schubert.hpp"
#include "soergel/verify.hpp"

using namespace soergel;
using json = nlohmann::json;

namespace {

struct Options {
  std::string preset;
  std::string realization;
  std::string field;
  std::string s1, s2, s3;
  int degree_bound = 0;
  int length_bound = 64;
  std::uint64_t seed = kDefaultSeed;
  std::string output = "json";
  bool timing = false;
  std::vector<std::string> args;
};

// Lazily built context for one command.
class Env {
 public:
  explicit Env(const Options& o) : o_(o) {}

  const Realization& r() {
    if (!r_) r_ = std::make_unique<Realization>(load());
    return *r_;
  }
  const CoxeterGroup& w() {
    if (!w_) w_ = std::make_unique<CoxeterGroup>(r().coxeter, o_.length_bound);
    return *w_;
  }
  const Schubert& sc() {
    if (!sc_) sc_ = std::make_unique<Schubert>(r(), w());
    return *sc_;
  }
  const Hecke& h() {
    if (!h_) h_ = std::make_unique<Hecke>(w());
    return *h_;
  }
  Bimod& b() {
    if (!b_) {
      b_ = std::make_unique<Bimod>(r(), w(), sc(), h(), o_.seed);
      if (o_.degree_bound > 0) b_->set_degree_bound(o_.degree_bound);
    }
    return *b_;
  }
  SubsetMask s1() { return w().parse_subset(o_.s1); }
  SubsetMask s2() { return w().parse_subset(o_.s2); }
  SubsetMask s3() { return w().parse_subset(o_.s3); }
  const Options& opt() const { return o_; }

 private:
  Realization load() {
    std::optional<Field> f;
    if (!o_.field.empty()) f = parse_field(o_.field);
    if (!o_.realization.empty()) {
      if (!o_.preset.empty()) fail(ErrorCode::UsageError, "give either --preset or --realization, not both");
      std::ifstream in(o_.realization);
      if (!in) fail(ErrorCode::UsageError, "cannot read " + o_.realization);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        fail(ErrorCode::SchemaError, std::string("malformed realization document: ") + e.what());
      }
      if (f) {
        if (doc.is_string()) doc = json{{"preset", doc}};
        doc["field"] = f->p ? json{{"Fp", f->p}} : json("Q");
      }
      return load_realization(doc);
    }
    const std::string name = o_.preset.empty() ? "A2-GL3" : o_.preset;
    return f ? load_preset(name, &*f) : load_preset(name);
  }

  const Options& o_;
  std::unique_ptr<Realization> r_;
  std::unique_ptr<CoxeterGroup> w_;
  std::unique_ptr<Schubert> sc_;
  std::unique_ptr<Hecke> h_;
  std::unique_ptr<Bimod> b_;
};

struct Out {
  json j;
  std::optional<std::string> text;
};

// ---------------------------------------------------------------- serialization

json subset_json(Env& e, SubsetMask m) { return e.w().subset_names(m); }

json hecke_json(Env& e, const HeckeElt& h) {
  json j = json::object();
  for (auto& [w, c] : h.terms) j["H" + e.w().name(w)] = c.str();
  return j;
}

json sing_json(Env& e, const SingularHeckeElt& h) {
  json j = json::object();
  j["s1"] = subset_json(e, h.s1);
  j["s2"] = subset_json(e, h.s2);
  for (auto& [w, c] : h.terms) j["c:" + e.w().name(w)] = c.str();
  return j;
}

json coset_json(Env& e, const DoubleCoset& x) {
  return json{{"s1", subset_json(e, x.s1)}, {"s2", subset_json(e, x.s2)}, {"min", e.w().name(x.min)}, {"max", e.w().name(x.max)}};
}

json poly_json(const Polynomial& p) { return p.to_map(); }

json object_json(Env& e, const RegularObject& m) {
  json loc = json::array(), right = json::array();
  for (int c = 0; c < m.ncomp(); ++c)
    for (int i = 0; i < m.rank(); ++i)
      if (!m.loc[c][i].is_zero()) loc.push_back({{"component", c}, {"basis", i}, {"value", poly_json(m.loc[c][i])}});
  for (std::size_t k = 0; k < m.right.size(); ++k)
    for (int i = 0; i < m.rank(); ++i)
      for (int l = 0; l < m.rank(); ++l)
        if (!m.right[k][i][l].is_zero())
          right.push_back({{"variable", "e" + std::to_string(k + 1)}, {"row", i}, {"col", l}, {"value", poly_json(m.right[k][i][l])}});
  json weights = json::array();
  for (auto& w : m.weights) weights.push_back(e.w().name(w));
  return json{{"label", m.label},     {"rank", m.rank()},       {"degrees", m.degrees}, {"weights", weights},
              {"offsets", m.offsets}, {"localization", loc}, {"right_action", right}};
}

json singular_json(Env& e, const SingularObject& v) {
  json j = object_json(e, v.base);
  j["s1"] = subset_json(e, v.s1);
  j["s2"] = subset_json(e, v.s2);
  j["idempotent"] = v.idem.has_value();
  j["ch"] = sing_json(e, e.b().sing_ch(v));
  j["hilbert"] = e.b().hilbert(v).str();
  return j;
}

// ---------------------------------------------------------------- input parsing

// Sum of terms such as "3/2 e1^2 e2 - e3"; a term is a product of an optional coefficient and variables.
Polynomial parse_poly(Env& e, const std::string& text) {
  const int n = e.r().dim;
  const auto p = e.r().field.p;
  std::string t = text;
  if (!t.empty() && t.front() == '{') {
    try {
      return Polynomial::from_map(n, json::parse(t).get<std::map<std::string, std::string>>(), p);
    } catch (const json::exception& ex) {
      fail(ErrorCode::UsageError, std::string("bad polynomial map: ") + ex.what());
    }
  }
  Polynomial out(n);
  std::size_t i = 0;
  while (i < t.size()) {
    while (i < t.size() && t[i] == ' ') ++i;
    if (i >= t.size()) break;
    bool neg = false;
    if (t[i] == '+' || t[i] == '-') {
      neg = t[i] == '-';
      ++i;
    }
    std::size_t j = i;
    while (j < t.size() && t[j] != '+' && !(t[j] == '-' && j > i && t[j - 1] != '^')) ++j;
    std::string term = t.substr(i, j - i);
    for (auto& c : term)
      if (c == '*') c = ' ';
    Scalar coeff = e.r().field.one();
    std::string vars;
    std::istringstream in(term);
    std::string tok;
    bool any = false;
    while (in >> tok) {
      any = true;
      if (std::isdigit(static_cast<unsigned char>(tok[0]))) coeff *= Scalar::parse(tok, p);
      else vars += tok + " ";
    }
    if (!any) fail(ErrorCode::UsageError, "empty term in polynomial '" + text + "'");
    if (neg) coeff = -coeff;
    Monomial m;
    try {
      m = Polynomial::parse_monomial(vars, n);
    } catch (const Error& err) {
      fail(ErrorCode::UsageError, err.what());
    }
    out += Polynomial::from_terms(n, {{m, coeff}});
    i = j;
  }
  return out;
}

// Word of generator names, e.g. "sts" or "s,t,s"; "1" or "" is the empty word.
std::vector<Gen> parse_word(Env& e, const std::string& text) {
  std::vector<Gen> out;
  if (text.empty() || text == "1" || text == "-") return out;
  const auto& gens = e.r().coxeter.generators;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',' || text[i] == ' ') {
      ++i;
      continue;
    }
    int best = -1;
    std::size_t len = 0;
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (gens[g].size() > len && text.compare(i, gens[g].size(), gens[g]) == 0) {
        best = static_cast<int>(g);
        len = gens[g].size();
      }
    if (best < 0) fail(ErrorCode::UsageError, "unknown generator in word '" + text + "'");
    out.push_back(static_cast<Gen>(best));
    i += len;
  }
  return out;
}

const std::string& arg(Env& e, std::size_t i, const char* what) {
  if (e.opt().args.size() <= i) fail(ErrorCode::UsageError, std::string("missing argument: ") + what);
  return e.opt().args[i];
}

SingularObject pushed(Env& e, const std::string& word, SubsetMask s1, SubsetMask s2) {
  return e.b().push(e.b().bs(parse_word(e, word)), s1, s2);
}

HeckeElt parse_hecke(Env& e, const std::string& text) {
  try {
    return e.h().parse(text);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::SchemaError) fail(ErrorCode::UsageError, err.what());
    throw;
  }
}

// ---------------------------------------------------------------- commands

using Handler = std::function<Out(Env&)>;

std::map<std::string, std::map<std::string, Handler>> commands() {
  std::map<std::string, std::map<std::string, Handler>> c;

  c["realize"]["check"] = [](Env& e) {
    const auto& r = e.r();
    return Out{{{"status", "ok"}, {"preset", r.preset}, {"field", r.field.name()}, {"rank", r.rank()}, {"dim_v", r.dim},
                {"degenerate_coroot", r.degenerate_coroot}}};
  };
  c["realize"]["show"] = [](Env& e) { return Out{serialize(e.r())}; };

  c["coxeter"]["cosets"] = [](Env& e) {
    int bound = e.w().is_finite() ? -1 : e.opt().length_bound;
    json j = json::array();
    std::string text;
    for (auto& x : e.w().double_cosets(e.s1(), e.s2(), bound)) {
      j.push_back(coset_json(e, x));
      text += e.w().name(x.min) + "/" + e.w().name(x.max) + "\n";
    }
    return Out{j, text};
  };
  c["coxeter"]["bruhat"] = [](Env& e) {
    Element a = e.w().parse(arg(e, 0, "element")), b = e.w().parse(arg(e, 1, "element"));
    bool leq = e.w().bruhat_leq(a, b);
    return Out{{{"a", e.w().name(a)}, {"b", e.w().name(b)}, {"leq", leq}}, std::string(leq ? "true\n" : "false\n")};
  };
  c["coxeter"]["mul"] = [](Env& e) {
    Element p = e.w().identity();
    for (auto& a : e.opt().args) p = e.w().mul(p, e.w().parse(a));
    return Out{{{"product", e.w().name(p)}, {"length", p.length()}}, e.w().name(p) + "\n"};
  };

  auto hecke_out = [](Env& e, const HeckeElt& h) { return Out{hecke_json(e, h), e.h().str(h) + "\n"}; };
  auto sing_out = [](Env& e, const SingularHeckeElt& h) { return Out{sing_json(e, h), e.h().str(h) + "\n"}; };
  c["hecke"]["mul"] = [=](Env& e) {
    HeckeElt p = e.h().one();
    if (e.opt().args.empty()) fail(ErrorCode::UsageError, "missing argument: Hecke element");
    for (auto& a : e.opt().args) p = e.h().mul(p, parse_hecke(e, a));
    return hecke_out(e, p);
  };
  c["hecke"]["bar"] = [=](Env& e) { return hecke_out(e, e.h().bar(parse_hecke(e, arg(e, 0, "Hecke element")))); };
  c["hecke"]["omega"] = [=](Env& e) { return hecke_out(e, e.h().omega(parse_hecke(e, arg(e, 0, "Hecke element")))); };
  c["hecke"]["to-singular"] = [=](Env& e) {
    return sing_out(e, e.h().to_singular(parse_hecke(e, arg(e, 0, "Hecke element")), e.s1(), e.s2()));
  };
  c["hecke"]["star"] = [=](Env& e) {
    auto a = e.h().to_singular(parse_hecke(e, arg(e, 0, "first element")), e.s1(), e.s2());
    auto b = e.h().to_singular(parse_hecke(e, arg(e, 1, "second element")), e.s2(), e.s3());
    return sing_out(e, e.h().star(a, b));
  };
  c["hecke"]["klbasis"] = [=](Env& e) {
    if (!e.opt().args.empty()) return hecke_out(e, e.h().kl_element(e.w().parse(e.opt().args[0])));
    int bound = e.w().is_finite() ? -1 : e.opt().length_bound;
    auto cosets = e.w().double_cosets(e.s1(), e.s2(), bound);
    auto basis = e.h().bar_invariant_basis(e.s1(), e.s2(), bound);
    json j = json::object();
    std::string text;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      j[e.w().name(cosets[i].min)] = sing_json(e, basis[i]);
      text += e.w().name(cosets[i].min) + ": " + e.h().str(basis[i]) + "\n";
    }
    return Out{j, text};
  };
  c["hecke"]["push-char"] = [=](Env& e) { return sing_out(e, e.h().push_char(parse_hecke(e, arg(e, 0, "Hecke element")), e.s1(), e.s2())); };
  c["hecke"]["hom-grk"] = [](Env& e) {
    auto a = e.h().to_singular(parse_hecke(e, arg(e, 0, "first element")), e.s1(), e.s2());
    auto b = e.h().to_singular(parse_hecke(e, arg(e, 1, "second element")), e.s1(), e.s2());
    Laurent g = e.h().hom_grk_formula(a, b);
    return Out{{{"grk", g.str()}}, g.str() + "\n"};
  };

  c["schubert"]["demazure"] = [](Env& e) {
    auto word = parse_word(e, arg(e, 0, "word"));
    Polynomial f = parse_poly(e, arg(e, 1, "polynomial"));
    Polynomial g = e.sc().demazure_word(word, f);
    return Out{{{"result", poly_json(g)}}, g.str() + "\n"};
  };
  c["schubert"]["find-p"] = [](Env& e) {
    auto p = e.sc().find_p(e.s1());
    json j{{"subset", subset_json(e, e.s1())}};
    if (p) {
      j["status"] = "Found";
      j["p"] = poly_json(*p);
    } else {
      j["status"] = "Absent";
      j["reason"] = error_name(ErrorCode::AssumptionFailed);
    }
    return Out{j, p ? p->str() + "\n" : std::string("Absent\n")};
  };
  auto frob_json = [](Env& e, bool with_dual) {
    const auto& fd = e.sc().frobenius(e.s1());
    json elems = json::array(), basis = json::array(), dual = json::array();
    for (std::size_t i = 0; i < fd.elements.size(); ++i) {
      elems.push_back(e.w().name(fd.elements[i]));
      basis.push_back(poly_json(fd.basis[i]));
      dual.push_back(poly_json(fd.dual[i]));
    }
    json j{{"subset", subset_json(e, e.s1())}, {"elements", elems}, {"basis", basis}};
    if (with_dual) {
      j["p"] = poly_json(fd.p);
      j["dual"] = dual;
    }
    return Out{j};
  };
  c["schubert"]["basis"] = [=](Env& e) { return frob_json(e, false); };
  c["schubert"]["frobenius"] = [=](Env& e) { return frob_json(e, true); };
  c["schubert"]["f-elements"] = [](Env& e) {
    const auto& fe = e.sc().f_elements(e.s1());
    const auto& fd = e.sc().frobenius(e.s1());
    json roots = json::array(), f = json::array();
    for (auto& r : fe.roots) roots.push_back(poly_json(r));
    for (std::size_t i = 0; i < fe.f.size(); ++i) {
      json coeffs = json::array();
      for (auto& p : fe.f[i].coeffs) coeffs.push_back(poly_json(p));
      f.push_back({{"element", e.w().name(fd.elements[i])}, {"coeffs", coeffs}});
    }
    return Out{{{"subset", subset_json(e, e.s1())}, {"root_product", poly_json(fe.root_product)}, {"roots", roots}, {"f", f}}};
  };

  c["bimod"]["bs"] = [](Env& e) { return Out{object_json(e, e.b().bs(parse_word(e, arg(e, 0, "word"))))}; };
  c["bimod"]["frobenius"] = [](Env& e) { return Out{object_json(e, e.b().frobenius(e.s1()))}; };
  c["bimod"]["tensor"] = [](Env& e) {
    auto a = e.b().bs(parse_word(e, arg(e, 0, "word"))), b = e.b().bs(parse_word(e, arg(e, 1, "word")));
    auto t = e.b().tensor(a, b);
    json j = object_json(e, t);
    j["ch"] = hecke_json(e, e.b().ch(t));
    return Out{j};
  };
  c["bimod"]["push"] = [](Env& e) { return Out{singular_json(e, pushed(e, arg(e, 0, "word"), e.s1(), e.s2()))}; };
  c["bimod"]["pull"] = [](Env& e) {
    return Out{singular_json(e, e.b().pullback(pushed(e, arg(e, 0, "word"), e.s1(), e.s2()), 0, 0))};
  };
  c["bimod"]["convolve"] = [](Env& e) {
    auto a = pushed(e, arg(e, 0, "word"), e.s1(), e.s2()), b = pushed(e, arg(e, 1, "word"), e.s2(), e.s3());
    return Out{singular_json(e, e.b().convolve(a, b))};
  };
  c["bimod"]["ch"] = [](Env& e) {
    auto v = pushed(e, arg(e, 0, "word"), e.s1(), e.s2());
    auto ch = e.b().sing_ch(v);
    if (!e.s1() && !e.s2()) {
      HeckeElt h = e.h().from_singular(ch);
      return Out{hecke_json(e, h), e.h().str(h) + "\n"};
    }
    return Out{sing_json(e, ch), e.h().str(ch) + "\n"};
  };
  c["bimod"]["dual"] = [](Env& e) { return Out{singular_json(e, e.b().sing_dual(pushed(e, arg(e, 0, "word"), e.s1(), e.s2())))}; };
  c["bimod"]["hom"] = [](Env& e) {
    auto a = pushed(e, arg(e, 0, "word"), e.s1(), e.s2()), b = pushed(e, arg(e, 1, "word"), e.s1(), e.s2());
    HomResult r;
    if (e.opt().degree_bound > 0) {
      int lo = b.base.min_degree() - a.base.max_degree() - 2 * e.w().parabolic(a.s1).longest.length();
      r = e.b().hom(a, b, lo, e.opt().degree_bound);
    } else {
      r = e.b().hom(a, b);
    }
    Laurent formula = e.h().hom_grk_formula(e.b().sing_ch(a), e.b().sing_ch(b));
    json j{{"grk", r.grk.str()}, {"hilbert", r.hilbert.str()}, {"lo", r.lo}, {"hi", r.hi}, {"stable", r.stable}, {"formula", formula.str()}};
    return Out{j, r.grk.str() + (r.stable ? "\n" : " (not stable)\n")};
  };
  c["bimod"]["decompose"] = [](Env& e) {
    auto v = pushed(e, arg(e, 0, "word"), e.s1(), e.s2());
    auto d = e.b().decompose(v);
    std::vector<std::pair<std::pair<Element, int>, int>> groups;
    for (auto& sm : d.summands) {
      if (!groups.empty() && groups.back().first == std::make_pair(sm.coset_min, sm.shift)) ++groups.back().second;
      else groups.push_back({{sm.coset_min, sm.shift}, 1});
    }
    json j = json::array();
    std::string text;
    for (auto& [key, mult] : groups) {
      const auto& x = e.w().coset_of(v.s1, v.s2, key.first);
      j.push_back({{"coset", coset_json(e, x)}, {"shift", key.second}, {"multiplicity", mult}});
      text += "B(" + e.w().name(x.min) + ")(" + std::to_string(key.second) + ") x" + std::to_string(mult) + "\n";
    }
    return Out{j, text};
  };
  return c;
}

std::string describe(const std::string& group, const std::string& name) {
  static const std::map<std::string, std::string> text{
      {"realize check", "Load and validate a realization"},
      {"realize show", "Print the realization document"},
      {"coxeter cosets", "Double cosets for --s1, --s2"},
      {"coxeter bruhat", "Bruhat comparison: A B"},
      {"coxeter mul", "Product of group elements"},
      {"hecke mul", "Product of Hecke elements"},
      {"hecke bar", "Bar involution"},
      {"hecke omega", "Anti-involution H_w -> H_{w^-1}"},
      {"hecke to-singular", "Coordinates in the singular basis for --s1, --s2"},
      {"hecke star", "Singular product of two elements (--s1, --s2, --s3)"},
      {"hecke klbasis", "Kazhdan-Lusztig element of W, or the bar-invariant singular basis"},
      {"hecke push-char", "Character of the push-forward to (--s1, --s2)"},
      {"hecke hom-grk", "Predicted graded rank of Hom between two characters"},
      {"schubert demazure", "Apply a Demazure word to a polynomial: WORD POLY"},
      {"schubert find-p", "Element of unit trace for --s1"},
      {"schubert basis", "Demazure basis d_w(p) for --s1"},
      {"schubert frobenius", "Dual bases for --s1"},
      {"schubert f-elements", "Elements F_w of R (x) R over the invariants of --s1"},
      {"bimod bs", "Bott-Samelson object of a word"},
      {"bimod frobenius", "R (x) R over the invariants of --s1"},
      {"bimod tensor", "Tensor product of two Bott-Samelson objects"},
      {"bimod push", "Push-forward of BS(WORD) to (--s1, --s2)"},
      {"bimod pull", "Pull-back to the regular category of the push-forward of BS(WORD)"},
      {"bimod convolve", "Convolution of two push-forwards over --s2"},
      {"bimod ch", "Character of the push-forward of BS(WORD)"},
      {"bimod dual", "Dual of the push-forward of BS(WORD)"},
      {"bimod hom", "Graded rank of Hom between two push-forwards"},
      {"bimod decompose", "Indecomposable summands of the push-forward of BS(WORD)"},
  };
  auto it = text.find(group + " " + name);
  return it == text.end() ? std::string() : it->second;
}

int emit_error(const Options& o, const Error& err) {
  const int code = err.code() == ErrorCode::UsageError ? 2 : 1;
  if (o.output == "json") std::cout << json{{"error", err.name()}, {"message", err.what()}}.dump(2) << "\n";
  else std::cerr << "error: " << err.name() << ": " << err.what() << "\n";
  return code;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--preset", o.preset, "Built-in realization (default A2-GL3)");
  app->add_option("--realization", o.realization, "Realization document (JSON)");
  app->add_option("--field", o.field, "Coefficient field: Q or F<p>");
  app->add_option("--s1", o.s1, "First subset, e.g. s,t");
  app->add_option("--s2", o.s2, "Second subset");
  app->add_option("--s3", o.s3, "Third subset");
  app->add_option("--degree-bound", o.degree_bound, "Degree bound D")->check(CLI::PositiveNumber);
  app->add_option("--length-bound", o.length_bound, "Length bound for infinite groups")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "Seed for randomized choices");
  app->add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "text"}));
  app->add_flag("--timing", o.timing, "Include timings in verification reports");
  app->add_option("args", o.args, "Positional arguments");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular Soergel bimodule calculator"};
  app.require_subcommand(1);
  Options o;
  auto table = commands();
  std::map<CLI::App*, std::pair<std::string, std::string>> leaves;
  for (auto& [group, cmds] : table) {
    auto* g = app.add_subcommand(group, group + " commands");
    g->require_subcommand(1);
    for (auto& [name, h] : cmds) {
      auto* leaf = g->add_subcommand(name, describe(group, name));
      add_common(leaf, o);
      leaves[leaf] = {group, name};
    }
  }
  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  add_common(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    Env env(o);
    if (verify->parsed()) {
      VerifyOptions vo;
      vo.seed = o.seed;
      if (o.degree_bound > 0) vo.degree_bound = o.degree_bound;
      auto results = run_suite(suite, env.r(), vo);
      if (o.output == "json") {
        std::cout << report_json(results, o.timing).dump(2) << "\n";
      } else {
        for (auto& c : results) {
          std::cout << status_name(c.status) << "  " << c.name << "  " << c.detail;
          if (o.timing) std::cout << "  (" << std::fixed << std::setprecision(2) << c.seconds << "s)";
          std::cout << "\n";
          if (c.status == CheckStatus::Fail) std::cout << "    witness: " << c.witness.dump() << "\n";
        }
        std::cout << (report_passed(results) ? "pass" : "fail") << "\n";
      }
      return report_passed(results) ? 0 : 1;
    }
    for (auto& [leaf, key] : leaves) {
      if (!leaf->parsed()) continue;
      Out out = table[key.first][key.second](env);
      if (o.output == "json") std::cout << out.j.dump(2) << "\n";
      else std::cout << (out.text ? *out.text : out.j.dump(2) + "\n");
      return 0;
    }
    std::cerr << app.help();
    return 2;
  } catch (const Error& err) {
    return emit_error(o, err);
  }
}
