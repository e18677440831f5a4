#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace soergel {

// Integer Laurent polynomial in v. Zero coefficients are never stored.
class Laurent {
 public:
  Laurent() = default;
  Laurent(std::int64_t c) { if (c) terms_[0] = c; }  // NOLINT(google-explicit-constructor)
  static Laurent monomial(int exp, std::int64_t c = 1);
  static Laurent parse(const std::string& text);

  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coeff(int exp) const;
  int min_exp() const { return terms_.begin()->first; }
  int max_exp() const { return terms_.rbegin()->first; }
  bool nonnegative() const;

  // v -> v^-1
  Laurent bar() const;
  Laurent shifted(int k) const;  // multiply by v^k
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent operator-() const;
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  friend bool operator<(const Laurent& a, const Laurent& b) { return a.terms_ < b.terms_; }

  // Exact division; throws InexactDivision when b does not divide a.
  Laurent exact_div(const Laurent& b) const;
  // Part with exponents >= lo, resp. < 0 etc.
  Laurent restrict(int lo, int hi) const;

  // Human-readable form such as "v^-1 - v" or "2 + v^2".
  std::string str() const;

 private:
  void add_term(int e, std::int64_t c);
  std::map<int, std::int64_t> terms_;
};

}  // namespace soergel
