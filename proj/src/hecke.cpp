#include "soergel/hecke.hpp"

#include <cctype>

#include "soergel/errors.hpp"

namespace soergel {

namespace {

const Laurent& v_inv_minus_v() {
  static const Laurent x = Laurent::monomial(-1) - Laurent::monomial(1);
  return x;
}

template <class Map, class Key>
void add_term(Map& terms, const Key& k, const Laurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

Laurent HeckeElt::coeff(const Element& w) const {
  auto it = terms.find(w);
  return it == terms.end() ? Laurent() : it->second;
}

void HeckeElt::add(const Element& w, const Laurent& c) { add_term(terms, w, c); }

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  for (auto& [w, c] : o.terms) add(w, -c);
  return *this;
}

HeckeElt operator*(const Laurent& c, const HeckeElt& h) {
  HeckeElt out;
  if (c.is_zero()) return out;
  for (auto& [w, a] : h.terms) out.add(w, c * a);
  return out;
}

Laurent SingularHeckeElt::coeff(const Element& xmin) const {
  auto it = terms.find(xmin);
  return it == terms.end() ? Laurent() : it->second;
}

void SingularHeckeElt::add(const Element& xmin, const Laurent& c) { add_term(terms, xmin, c); }

SingularHeckeElt& SingularHeckeElt::operator+=(const SingularHeckeElt& o) {
  if (o.s1 != s1 || o.s2 != s2) fail(ErrorCode::MiddleMismatch, "adding singular elements of different modules");
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

SingularHeckeElt& SingularHeckeElt::operator-=(const SingularHeckeElt& o) {
  if (o.s1 != s1 || o.s2 != s2) fail(ErrorCode::MiddleMismatch, "subtracting singular elements of different modules");
  for (auto& [w, c] : o.terms) add(w, -c);
  return *this;
}

SingularHeckeElt operator*(const Laurent& c, const SingularHeckeElt& h) {
  SingularHeckeElt out;
  out.s1 = h.s1;
  out.s2 = h.s2;
  if (c.is_zero()) return out;
  for (auto& [w, a] : h.terms) out.add(w, c * a);
  return out;
}

HeckeElt Hecke::standard(const Element& w, const Laurent& c) const {
  HeckeElt h;
  h.add(w, c);
  return h;
}

HeckeElt Hecke::lmul_gen(int s, const HeckeElt& h) const {
  HeckeElt out;
  for (auto& [w, c] : h.terms) {
    Element sw = w_.lmul(s, w);
    out.add(sw, c);
    if (sw.length() < w.length()) out.add(w, c * v_inv_minus_v());
  }
  return out;
}

HeckeElt Hecke::rmul_gen(const HeckeElt& h, int s) const {
  HeckeElt out;
  for (auto& [w, c] : h.terms) {
    Element ws = w_.rmul(w, s);
    out.add(ws, c);
    if (ws.length() < w.length()) out.add(w, c * v_inv_minus_v());
  }
  return out;
}

HeckeElt Hecke::mul(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt out;
  if (a.is_zero() || b.is_zero()) return out;
  if (a.terms.size() <= b.terms.size()) {
    for (auto& [w, c] : a.terms) {
      HeckeElt t = b;
      for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) t = lmul_gen(*it, t);
      out += c * t;
    }
  } else {
    for (auto& [w, c] : b.terms) {
      HeckeElt t = a;
      for (Gen g : w.word) t = rmul_gen(t, g);
      out += c * t;
    }
  }
  return out;
}

HeckeElt Hecke::longest_kl(SubsetMask s) const {
  const auto& p = w_.parabolic(s);
  HeckeElt h;
  for (auto& w : p.elements) h.add(w, Laurent::monomial(p.longest.length() - w.length()));
  return h;
}

Laurent Hecke::poincare(SubsetMask s) const {
  const auto& p = w_.parabolic(s);
  Laurent l;
  for (auto& w : p.elements) l += Laurent::monomial(p.longest.length() - 2 * w.length());
  return l;
}

const HeckeElt& Hecke::bar_standard(const Element& w) const {
  auto it = bar_cache_.find(w);
  if (it != bar_cache_.end()) return it->second;
  HeckeElt res;
  if (w.is_identity()) {
    res = one();
  } else {
    int s = w.word.front();
    Element rest{std::vector<Gen>(w.word.begin() + 1, w.word.end())};
    HeckeElt br = bar_standard(rest);
    // bar(H_s) = H_s + v - v^-1
    res = lmul_gen(s, br) - v_inv_minus_v() * br;
  }
  return bar_cache_.emplace(w, std::move(res)).first->second;
}

HeckeElt Hecke::bar(const HeckeElt& h) const {
  HeckeElt out;
  for (auto& [w, c] : h.terms) out += c.bar() * bar_standard(w);
  return out;
}

HeckeElt Hecke::omega(const HeckeElt& h) const {
  // H_w^{-1} = bar(H_{w^{-1}})
  HeckeElt out;
  for (auto& [w, c] : h.terms) out += c.bar() * bar_standard(w_.inv(w));
  return out;
}

HeckeElt Hecke::singular_basis(const DoubleCoset& x) const {
  HeckeElt h;
  for (auto& a : x.members) h.add(a, Laurent::monomial(x.max.length() - a.length()));
  return h;
}

HeckeElt Hecke::from_singular(const SingularHeckeElt& h) const {
  HeckeElt out;
  for (auto& [m, c] : h.terms) out += c * singular_basis(w_.coset_of(h.s1, h.s2, m));
  return out;
}

SingularHeckeElt Hecke::to_singular(const HeckeElt& h, SubsetMask s1, SubsetMask s2) const {
  SingularHeckeElt out;
  out.s1 = s1;
  out.s2 = s2;
  std::map<Element, const DoubleCoset*> cosets;
  for (auto& [w, c] : h.terms) {
    const DoubleCoset& x = w_.coset_of(s1, s2, w);
    cosets.emplace(x.min, &x);
  }
  for (auto& [m, x] : cosets) out.add(m, h.coeff(x->max));
  HeckeElt diff = h - from_singular(out);
  if (!diff.is_zero()) {
    auto& [w, c] = *diff.terms.begin();
    fail(ErrorCode::NotInParabolicModule, "coefficient of H_" + w_.name(w) + " breaks the pattern of its double coset (off by " +
                                              c.str() + ")");
  }
  return out;
}

SingularHeckeElt Hecke::sing_basis_elt(SubsetMask s1, SubsetMask s2, const Element& w, const Laurent& c) const {
  SingularHeckeElt h;
  h.s1 = s1;
  h.s2 = s2;
  h.add(w_.coset_of(s1, s2, w).min, c);
  return h;
}

SingularHeckeElt Hecke::star(const SingularHeckeElt& a, const SingularHeckeElt& b) const {
  if (a.s2 != b.s1) fail(ErrorCode::MiddleMismatch, "star product needs matching middle subsets");
  HeckeElt prod = mul(from_singular(a), from_singular(b));
  Laurent p = poincare(a.s2);
  HeckeElt q;
  for (auto& [w, c] : prod.terms) q.add(w, c.exact_div(p));
  return to_singular(q, a.s1, b.s2);
}

SingularHeckeElt Hecke::sing_bar(const SingularHeckeElt& h) const { return to_singular(bar(from_singular(h)), h.s1, h.s2); }

SingularHeckeElt Hecke::sing_omega(const SingularHeckeElt& h) const {
  return to_singular(omega(from_singular(h)), h.s2, h.s1);
}

SingularHeckeElt Hecke::push_char(const HeckeElt& h, SubsetMask s1, SubsetMask s2) const {
  HeckeElt x = mul(mul(longest_kl(s1), h), longest_kl(s2));
  return to_singular(Laurent::monomial(-w_.parabolic(s2).longest.length()) * x, s1, s2);
}

Laurent Hecke::hom_grk_formula(const SingularHeckeElt& h1, const SingularHeckeElt& h2) const {
  if (h1.s1 != h2.s1 || h1.s2 != h2.s2) fail(ErrorCode::MiddleMismatch, "Hom formula needs elements of the same module");
  SingularHeckeElt prod = star(h2, sing_omega(h1));
  return Laurent::monomial(w_.parabolic(h1.s2).longest.length()) * bar_eps(from_singular(prod));
}

std::vector<SingularHeckeElt> Hecke::bar_invariant_basis(SubsetMask s1, SubsetMask s2, int bound) const {
  auto cosets = w_.double_cosets(s1, s2, bound);
  const std::size_t n = cosets.size();
  // r[y][z]: coefficient of N_y in bar(N_z)
  std::vector<SingularHeckeElt> bars;
  for (auto& z : cosets) bars.push_back(sing_bar(sing_basis_elt(s1, s2, z.min)));
  std::vector<SingularHeckeElt> out;
  for (std::size_t xi = 0; xi < n; ++xi) {
    std::vector<Laurent> p(n);
    p[xi] = Laurent(1);
    for (std::size_t yi = xi; yi-- > 0;) {
      Laurent q;
      for (std::size_t zi = yi + 1; zi <= xi; ++zi)
        if (!p[zi].is_zero()) q += p[zi].bar() * bars[zi].coeff(cosets[yi].min);
      if (q.is_zero()) continue;
      if (q.coeff(0) != 0 || q.bar() != -q)
        fail(ErrorCode::NonUnitriangularBar, "bar matrix is not unitriangular at coset " + w_.name(cosets[yi].min));
      p[yi] = q.restrict(1, q.max_exp());
    }
    SingularHeckeElt b;
    b.s1 = s1;
    b.s2 = s2;
    for (std::size_t i = 0; i < n; ++i) b.add(cosets[i].min, p[i]);
    if (sing_bar(b) != b) fail(ErrorCode::NonUnitriangularBar, "triangular solution is not bar invariant");
    out.push_back(std::move(b));
  }
  return out;
}

HeckeElt Hecke::kl_element(const Element& w) const {
  auto cosets = w_.double_cosets(0, 0, w.length());
  auto basis = bar_invariant_basis(0, 0, w.length());
  for (std::size_t i = 0; i < cosets.size(); ++i)
    if (cosets[i].min == w) return from_singular(basis[i]);
  fail(ErrorCode::NonUnitriangularBar, "no canonical basis element for " + w_.name(w));
}

namespace {

class Parser {
 public:
  Parser(const Hecke& h, const std::string& text) : h_(h), s_(text) {}

  HeckeElt parse() {
    HeckeElt e = expr();
    skip();
    if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::SchemaError, "cannot parse Hecke element '" + s_ + "': " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }

  HeckeElt expr() {
    HeckeElt acc;
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[i_] == '-' ? -1 : 1;
        ++i_;
      } else if (!first) {
        break;
      }
      HeckeElt t = term();
      acc += Laurent(sign) * t;
      first = false;
      skip();
      if (i_ >= s_.size() || s_[i_] == ')') break;
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return c == '(' || c == 'v' || c == 'H' || std::isdigit(static_cast<unsigned char>(c)) || s_.compare(i_, 2, "uH") == 0;
  }

  HeckeElt term() {
    HeckeElt t = factor();
    for (;;) {
      if (peek('*')) {
        ++i_;
        t = h_.mul(t, factor());
      } else if (starts_factor()) {
        t = h_.mul(t, factor());
      } else {
        break;
      }
    }
    return t;
  }

  long integer() {
    std::size_t start = i_;
    if (i_ < s_.size() && s_[i_] == '-') ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) error("expected a number");
    return std::stol(s_.substr(start, i_ - start));
  }

  Element word() {
    const auto& g = h_.group();
    std::vector<Gen> letters;
    if (i_ < s_.size() && s_[i_] == '1') {
      ++i_;
      return g.identity();
    }
    while (i_ < s_.size()) {
      if (s_.compare(i_, 2, "uH") == 0) break;
      int best = -1;
      std::size_t len = 0;
      for (int s = 0; s < g.rank(); ++s) {
        const auto& name = g.data().generators[s];
        if (name.size() > len && s_.compare(i_, name.size(), name) == 0) {
          best = s;
          len = name.size();
        }
      }
      if (best < 0) break;
      letters.push_back(static_cast<Gen>(best));
      i_ += len;
    }
    if (letters.empty()) error("expected a group element after H");
    return g.reduce(letters);
  }

  HeckeElt factor() {
    skip();
    if (i_ >= s_.size()) error("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      HeckeElt e = expr();
      if (!peek(')')) error("missing ')'");
      ++i_;
      return e;
    }
    if (c == 'v') {
      ++i_;
      int e = 1;
      if (peek('^')) {
        ++i_;
        skip();
        e = static_cast<int>(integer());
      }
      return h_.standard(h_.group().identity(), Laurent::monomial(e));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return h_.standard(h_.group().identity(), Laurent(integer()));
    if (s_.compare(i_, 2, "uH") == 0) {
      i_ += 2;
      if (peek('{')) {
        std::size_t close = s_.find('}', i_);
        if (close == std::string::npos) error("missing '}'");
        SubsetMask m = h_.group().parse_subset(s_.substr(i_ + 1, close - i_ - 1));
        i_ = close + 1;
        return h_.longest_kl(m);
      }
      return h_.kl_element(word());
    }
    if (c == 'H') {
      ++i_;
      return h_.standard(word());
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const Hecke& h_;
  std::string s_;
  std::size_t i_ = 0;
};

std::string join_terms(const std::vector<std::pair<std::string, Laurent>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (auto& [name, c] : terms) {
    if (!out.empty()) out += " + ";
    if (c == Laurent(1)) out += name;
    else out += "(" + c.str() + ")" + name;
  }
  return out;
}

}  // namespace

HeckeElt Hecke::parse(const std::string& text) const { return Parser(*this, text).parse(); }

std::string Hecke::str(const HeckeElt& h) const {
  std::vector<std::pair<std::string, Laurent>> t;
  for (auto& [w, c] : h.terms) t.emplace_back("H" + w_.name(w), c);
  return join_terms(t);
}

std::string Hecke::str(const SingularHeckeElt& h) const {
  std::vector<std::pair<std::string, Laurent>> t;
  for (auto& [w, c] : h.terms) t.emplace_back("N[" + w_.name(w) + "]", c);
  return join_terms(t);
}

}  // namespace soergel
