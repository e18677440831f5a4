#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "soergel/coxeter.hpp"
#include "soergel/linalg.hpp"
#include "soergel/polynomial.hpp"

namespace soergel {

// Fraction num / den with den a product of normalized linear forms (leading coefficient 1).
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Polynomial num) : num_(std::move(num)) {}

  const Polynomial& num() const { return num_; }
  const std::map<Polynomial, int>& den_factors() const { return den_; }
  Polynomial den(int nvars, const Field& f) const;
  bool is_polynomial() const { return den_.empty(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  // Division by a nonzero linear form.
  RationalFunction divided_by_linear(const Polynomial& lin) const;
  // Division by c * (product of the given linear forms), with c a nonzero scalar.
  RationalFunction divided_by_factored(const Scalar& c, const std::vector<Polynomial>& linear) const;
  std::string str() const;

 private:
  void reduce();
  Polynomial num_;
  std::map<Polynomial, int> den_;
};

// Left-R coordinates of an element of R (x)_{R^S} R in the basis 1 (x) d_u(p), u in W_S.
struct TensorElt {
  std::vector<Polynomial> coeffs;
};

struct FrobeniusData {
  SubsetMask mask = 0;
  Polynomial p;
  Element longest;
  std::vector<Element> elements;  // W_S in ShortLex order
  std::vector<Polynomial> basis;  // d_w(p)
  std::vector<Polynomial> dual;   // q_w with d_{w_S}(d_x(p) q_y) = delta
  int index(const Element& w) const;
};

struct FElements {
  Polynomial root_product;           // product of alpha_t over reflections t in W_S
  std::vector<Polynomial> roots;     // the alpha_t
  std::vector<TensorElt> f;          // F_w, indexed like FrobeniusData::elements
  std::vector<TensorElt> basis;      // d^R_w(F_{w_S}), indexed likewise
};

struct Membership {
  bool member = false;
  std::vector<RationalFunction> coeffs;  // left-R coordinates in {d^R_w F_{w_S}}
  Polynomial witness;                    // a denominator factor when not a member
};

class Schubert {
 public:
  Schubert(const Realization& r, const CoxeterGroup& w) : r_(r), w_(w) {}
  const Realization& realization() const { return r_; }
  const CoxeterGroup& group() const { return w_; }
  int nvars() const { return r_.dim; }
  const Field& field() const { return r_.field; }

  Polynomial act(const Element& w, const Polynomial& f) const;
  Polynomial act_gen(int s, const Polynomial& f) const { return f.substitute(r_.generator_images(s)); }
  Polynomial demazure(int s, const Polynomial& f) const;
  // d_{w1} ... d_{wk}, rightmost letter first.
  Polynomial demazure_word(const std::vector<Gen>& word, const Polynomial& f) const;
  Polynomial demazure_element(const Element& w, const Polynomial& f) const { return demazure_word(w.word, f); }

  // p of polynomial degree l(w_S) with d_{w_S}(p) = 1; nullopt when the assumption fails.
  std::optional<Polynomial> find_p(SubsetMask s) const;
  bool assumption_holds(SubsetMask s) const { return find_p(s).has_value(); }
  // Throws AssumptionFailed.
  const FrobeniusData& frobenius(SubsetMask s) const;
  // Coefficients c_w in R^S with f = sum c_w d_w(p).
  std::vector<Polynomial> express(SubsetMask s, const Polynomial& f) const;
  Polynomial trace(SubsetMask s, const Polynomial& f) const;

  // Invariants of W_S in polynomial degree k.
  const std::vector<Polynomial>& invariant_basis(SubsetMask s, int k) const;
  // Homogeneous algebra generators of R^S, by degree.
  const std::vector<Polynomial>& invariant_generators(SubsetMask s) const;
  // Reflection roots alpha_t for t in W_S.
  std::vector<Polynomial> parabolic_roots(SubsetMask s) const;

  // R (x)_{R^S} R
  Polynomial phi(SubsetMask s, const Element& x, const TensorElt& f) const;
  TensorElt tensor_pure(SubsetMask s, const Polynomial& left, const Polynomial& right) const;
  TensorElt right_mul(SubsetMask s, const TensorElt& f, const Polynomial& g) const;
  TensorElt left_mul(const TensorElt& f, const Polynomial& g) const;
  TensorElt right_demazure(SubsetMask s, int gen, const TensorElt& f) const;
  TensorElt right_twist(SubsetMask s, const Element& y, const TensorElt& f) const;
  const FElements& f_elements(SubsetMask s) const;
  Membership phi_membership(SubsetMask s, const std::vector<RationalFunction>& tuple) const;

 private:
  const Realization& r_;
  const CoxeterGroup& w_;
  mutable std::map<SubsetMask, std::optional<Polynomial>> p_cache_;
  mutable std::map<SubsetMask, std::unique_ptr<FrobeniusData>> frob_cache_;
  mutable std::map<std::pair<SubsetMask, int>, std::vector<Polynomial>> inv_cache_;
  mutable std::map<SubsetMask, std::vector<Polynomial>> gen_cache_;
  mutable std::map<SubsetMask, std::unique_ptr<FElements>> fel_cache_;
};

}  // namespace soergel
