#include "soergel/laurent.hpp"

#include <cctype>

#include "soergel/errors.hpp"

namespace soergel {

namespace {
std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Unsupported, "Laurent coefficient overflow");
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Unsupported, "Laurent coefficient overflow");
  return r;
}
}  // namespace

Laurent Laurent::monomial(int exp, std::int64_t c) {
  Laurent l;
  if (c) l.terms_[exp] = c;
  return l;
}

std::int64_t Laurent::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? 0 : it->second;
}

bool Laurent::nonnegative() const {
  for (auto& [e, c] : terms_)
    if (c < 0) return false;
  return true;
}

void Laurent::add_term(int e, std::int64_t c) {
  if (!c) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (fresh) return;
  it->second = checked_add(it->second, c);
  if (!it->second) terms_.erase(it);
}

Laurent Laurent::bar() const {
  Laurent r;
  for (auto& [e, c] : terms_) r.terms_[-e] = c;
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r;
  for (auto& [e, c] : terms_) r.terms_[e + k] = c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (auto& [e1, c1] : a.terms_)
    for (auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, checked_mul(c1, c2));
  return r;
}

Laurent Laurent::exact_div(const Laurent& b) const {
  if (b.is_zero()) fail(ErrorCode::InexactDivision, "division by zero Laurent polynomial");
  if (is_zero()) return {};
  Laurent rem = *this, q;
  const int bl = b.min_exp();
  const std::int64_t bc = b.coeff(bl);
  const int qmax = max_exp() - b.max_exp();
  while (!rem.is_zero()) {
    int e = rem.min_exp();
    std::int64_t c = rem.coeff(e);
    if (e - bl > qmax || c % bc != 0) fail(ErrorCode::InexactDivision, "Laurent division not exact");
    Laurent t = monomial(e - bl, c / bc);
    q += t;
    rem -= t * b;
  }
  return q;
}

Laurent Laurent::restrict(int lo, int hi) const {
  Laurent r;
  for (auto& [e, c] : terms_)
    if (e >= lo && e <= hi) r.terms_[e] = c;
  return r;
}

std::string Laurent::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [e, c] : terms_) {
    std::int64_t a = c < 0 ? -c : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += std::to_string(a);
      continue;
    }
    if (a != 1) out += std::to_string(a);
    out += "v";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// Grammar: sum of terms  [+|-] [int] [v[^int]]  with optional whitespace and parentheses.
Laurent Laurent::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '(' && ch != ')' && ch != '*') s += ch;
  if (s.empty()) fail(ErrorCode::UsageError, "empty Laurent polynomial");
  Laurent r;
  std::size_t i = 0;
  auto read_int = [&](std::int64_t& out) {
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    std::size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) return false;
    out = std::stoll(s.substr(i, k - i));
    i = k;
    return true;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::int64_t c = 1;
    bool have_c = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      read_int(c);
      have_c = true;
    }
    int e = 0;
    if (i < s.size() && s[i] == 'v') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::int64_t ee;
        if (!read_int(ee)) fail(ErrorCode::UsageError, "bad exponent in '" + text + "'");
        e = static_cast<int>(ee);
      }
    } else if (!have_c) {
      fail(ErrorCode::UsageError, "bad Laurent polynomial '" + text + "'");
    }
    r.add_term(e, sign * c);
    if (i < s.size() && s[i] != '+' && s[i] != '-') fail(ErrorCode::UsageError, "bad Laurent polynomial '" + text + "'");
  }
  return r;
}

}  // namespace soergel
