#include "soergel/polynomial.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

#include "soergel/errors.hpp"

namespace soergel {

int mono_exp(Monomial m, int var) { return static_cast<int>((m >> (8 * (kMaxVars - 1 - var))) & 0xff); }

Monomial mono_var(int var, int power) { return static_cast<Monomial>(power) << (8 * (kMaxVars - 1 - var)); }

int mono_degree(Monomial m) {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += static_cast<int>((m >> (8 * i)) & 0xff);
  return d;
}

Polynomial::Polynomial(int nvars, const Scalar& c) : nvars_(nvars) {
  if (!c.is_zero()) terms_.emplace_back(0, c);
}

Polynomial Polynomial::var(int nvars, int i, const Scalar& coeff) {
  Polynomial p(nvars);
  if (!coeff.is_zero()) p.terms_.emplace_back(mono_var(i), coeff);
  return p;
}

Polynomial Polynomial::from_terms(int nvars, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
  Polynomial p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_homogeneous() const {
  for (auto& t : terms_)
    if (mono_degree(t.first) != degree()) return false;
  return true;
}

Scalar Polynomial::coeff(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, Monomial v) { return t.first > v; });
  if (it != terms_.end() && it->first == m) return it->second;
  return Scalar();
}

namespace {
template <class Op>
std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a, const std::vector<Polynomial::Term>& b, Op op) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, op(Scalar(), b[j].second));
      ++j;
    } else {
      Scalar s = op(a[i].second, b[j].second);
      if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (nvars_ == 0) nvars_ = o.nvars_;
  terms_ = merge(terms_, o.terms_, [](const Scalar& x, const Scalar& y) { return x + y; });
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  if (nvars_ == 0) nvars_ = o.nvars_;
  terms_ = merge(terms_, o.terms_, [](const Scalar& x, const Scalar& y) { return x - y; });
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.emplace_back(t.first, -t.second);
  return r;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  int nv = std::max(a.nvars_, b.nvars_);
  if (a.terms_.empty() || b.terms_.empty()) return Polynomial(nv);
  if (b.terms_.size() == 1 && b.terms_[0].first == 0) return a * b.terms_[0].second;
  if (a.terms_.size() == 1 && a.terms_[0].first == 0) return b * a.terms_[0].second;
  std::vector<Polynomial::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (auto& x : a.terms_)
    for (auto& y : b.terms_) prod.emplace_back(x.first + y.first, x.second * y.second);
  return Polynomial::from_terms(nv, std::move(prod));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
  return true;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
  // total order for use as map keys: by terms, monomials first
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].first != b.terms_[i].first) return a.terms_[i].first < b.terms_[i].first;
    if (a.terms_[i].second != b.terms_[i].second) return a.terms_[i].second.str() < b.terms_[i].second.str();
  }
  return a.terms_.size() < b.terms_.size();
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (terms_.empty()) return *this;
  std::vector<std::vector<Polynomial>> powers(nvars_);
  Polynomial out(nvars_);
  std::vector<Term> acc;
  for (auto& t : terms_) {
    Polynomial prod(nvars_, t.second);
    for (int v = 0; v < nvars_; ++v) {
      int e = mono_exp(t.first, v);
      if (!e) continue;
      auto& pw = powers[v];
      if (pw.empty()) pw.push_back(Polynomial(nvars_, Scalar::one(t.second.prime())));
      while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[v]);
      prod = prod * pw[e];
    }
    acc.insert(acc.end(), prod.terms_.begin(), prod.terms_.end());
  }
  return from_terms(nvars_, std::move(acc));
}

Polynomial Polynomial::divide_linear(const Polynomial& lin) const { return divide_exact(lin); }

Polynomial Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) fail(ErrorCode::InexactDivision, "division by zero polynomial");
  Polynomial rem = *this;
  std::vector<Term> q;
  const Monomial lm = d.terms_.front().first;
  const Scalar lcinv = d.terms_.front().second.inv();
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    // lt divisible by lm iff no byte of lt - lm borrows
    bool ok = true;
    for (int v = 0; v < kMaxVars; ++v)
      if (mono_exp(lt.first, v) < mono_exp(lm, v)) {
        ok = false;
        break;
      }
    if (!ok) fail(ErrorCode::InexactDivision, "polynomial division is not exact");
    Polynomial t(nvars_);
    t.terms_.emplace_back(lt.first - lm, lt.second * lcinv);
    q.push_back(t.terms_.front());
    rem -= t * d;
  }
  return from_terms(nvars_, std::move(q));
}

bool Polynomial::divisible_by(const Polynomial& d) const {
  try {
    (void)divide_exact(d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string Polynomial::monomial_str(Monomial m, int nvars) {
  std::string s;
  for (int v = 0; v < nvars; ++v) {
    int e = mono_exp(m, v);
    if (!e) continue;
    if (!s.empty()) s += " ";
    s += "e" + std::to_string(v + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

Monomial Polynomial::parse_monomial(const std::string& text, int nvars) {
  Monomial m = 0;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    std::size_t caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (name.size() < 2 || (name[0] != 'e' && name[0] != 'x'))
      fail(ErrorCode::SchemaError, "bad monomial '" + text + "'");
    int v = std::stoi(name.substr(1)) - 1;
    int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
    if (v < 0 || v >= nvars || e < 0 || e > 120) fail(ErrorCode::SchemaError, "bad monomial '" + text + "'");
    m += mono_var(v, e);
  }
  return m;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    std::string cs = c.str();
    bool neg = cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    if (m == 0) {
      out += cs;
    } else {
      if (cs != "1") out += cs + " ";
      out += monomial_str(m, nvars_);
    }
  }
  return out;
}

std::map<std::string, std::string> Polynomial::to_map() const {
  std::map<std::string, std::string> m;
  for (auto& [mono, c] : terms_) m[monomial_str(mono, nvars_)] = c.str();
  return m;
}

Polynomial Polynomial::from_map(int nvars, const std::map<std::string, std::string>& m, std::uint32_t p) {
  std::vector<Term> terms;
  for (auto& [k, v] : m) terms.emplace_back(parse_monomial(k, nvars), Scalar::parse(v, p));
  return from_terms(nvars, std::move(terms));
}

MonomialBasis::MonomialBasis(int nvars, int k) {
  // recursive enumeration in decreasing lex order
  std::vector<int> e(nvars, 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      e[var] = left;
      Monomial m = 0;
      for (int v = 0; v < nvars; ++v) m += mono_var(v, e[v]);
      monos_.push_back(m);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[var] = a;
      self(self, var + 1, left - a);
    }
  };
  if (nvars == 0) {
    if (k == 0) monos_.push_back(0);
  } else if (k >= 0) {
    rec(rec, 0, k);
  }
  for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = static_cast<long>(i);
}

const MonomialBasis& MonomialBasis::get(int nvars, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, k}];
  if (!slot) slot.reset(new MonomialBasis(nvars, k));
  return *slot;
}

long MonomialBasis::index(Monomial m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

std::size_t poly_dim(int nvars, int k) {
  if (k < 0) return 0;
  return MonomialBasis::get(nvars, k).size();
}

std::vector<Scalar> coords(const Polynomial& f, int k, const Field& field) {
  const auto& b = MonomialBasis::get(f.nvars(), k);
  std::vector<Scalar> c(b.size(), field.zero());
  for (auto& [m, v] : f.terms()) {
    long i = b.index(m);
    if (i < 0) fail(ErrorCode::Unsupported, "polynomial not homogeneous of the expected degree");
    c[static_cast<std::size_t>(i)] = v.in_field(field.p);
  }
  return c;
}

Polynomial from_coords(int nvars, int k, const std::vector<Scalar>& c) {
  const auto& b = MonomialBasis::get(nvars, k);
  std::vector<Polynomial::Term> t;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!c[i].is_zero()) t.emplace_back(b.monomials()[i], c[i]);
  return Polynomial::from_terms(nvars, std::move(t));
}

}  // namespace soergel
