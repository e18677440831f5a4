#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "soergel/scalar.hpp"

namespace soergel {

// Exponent vector packed one byte per variable, variable 0 in the most significant byte,
// so integer comparison is lex order with e1 > e2 > ... . At most 8 variables.
using Monomial = std::uint64_t;
inline constexpr int kMaxVars = 8;

int mono_exp(Monomial m, int var);
Monomial mono_var(int var, int power = 1);
int mono_degree(Monomial m);

// Multivariate polynomial over a Field; terms sorted by decreasing Monomial.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Scalar>;
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  Polynomial(int nvars, const Scalar& c);
  static Polynomial var(int nvars, int i, const Scalar& coeff);
  static Polynomial from_terms(int nvars, std::vector<Term> terms);  // sorts and merges

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Polynomial degree of the leading term (all our polynomials are homogeneous); -1 for zero.
  int degree() const { return terms_.empty() ? -1 : mono_degree(terms_.front().first); }
  bool is_homogeneous() const;
  Scalar coeff(Monomial m) const;
  const Scalar& leading_coeff() const { return terms_.front().second; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator-() const;
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
  friend bool operator<(const Polynomial& a, const Polynomial& b);

  // Substitutes images[i] for variable i.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  // Exact quotient by a nonzero linear form; throws InexactDivision otherwise.
  Polynomial divide_linear(const Polynomial& lin) const;
  // Exact quotient by an arbitrary nonzero polynomial (lex leading-term division).
  Polynomial divide_exact(const Polynomial& d) const;
  bool divisible_by(const Polynomial& d) const;

  std::string str() const;  // "e1^2 e2 - 3 e3"
  std::map<std::string, std::string> to_map() const;
  static Polynomial from_map(int nvars, const std::map<std::string, std::string>& m, std::uint32_t p);
  static Monomial parse_monomial(const std::string& text, int nvars);
  static std::string monomial_str(Monomial m, int nvars);

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;
};

// Monomials of polynomial degree k in n variables, in decreasing lex order, with index lookup.
class MonomialBasis {
 public:
  static const MonomialBasis& get(int nvars, int k);
  const std::vector<Monomial>& monomials() const { return monos_; }
  std::size_t size() const { return monos_.size(); }
  // Index of m, or -1.
  long index(Monomial m) const;

 private:
  MonomialBasis(int nvars, int k);
  std::vector<Monomial> monos_;
  std::map<Monomial, long> index_;
};

// Dimension of the polynomial-degree-k part of a polynomial ring in n variables.
std::size_t poly_dim(int nvars, int k);

// Coordinates of a homogeneous polynomial of degree k in MonomialBasis::get(n, k).
std::vector<Scalar> coords(const Polynomial& f, int k, const Field& field);
Polynomial from_coords(int nvars, int k, const std::vector<Scalar>& c);

}  // namespace soergel
