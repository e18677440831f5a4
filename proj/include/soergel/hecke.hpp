#pragma once

#include <map>
#include <string>
#include <vector>

#include "soergel/coxeter.hpp"
#include "soergel/laurent.hpp"

namespace soergel {

// Finitely supported combination of standard basis elements H_w.
struct HeckeElt {
  std::map<Element, Laurent> terms;

  bool is_zero() const { return terms.empty(); }
  Laurent coeff(const Element& w) const;
  void add(const Element& w, const Laurent& c);
  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const Laurent& c, const HeckeElt& h);
  friend bool operator==(const HeckeElt&, const HeckeElt&) = default;
};

// Coordinates in the basis {^{S1}H^{S2}_x} indexed by minimal coset representatives.
struct SingularHeckeElt {
  SubsetMask s1 = 0, s2 = 0;
  std::map<Element, Laurent> terms;

  bool is_zero() const { return terms.empty(); }
  Laurent coeff(const Element& xmin) const;
  void add(const Element& xmin, const Laurent& c);
  SingularHeckeElt& operator+=(const SingularHeckeElt& o);
  SingularHeckeElt& operator-=(const SingularHeckeElt& o);
  friend SingularHeckeElt operator+(SingularHeckeElt a, const SingularHeckeElt& b) { return a += b; }
  friend SingularHeckeElt operator-(SingularHeckeElt a, const SingularHeckeElt& b) { return a -= b; }
  friend SingularHeckeElt operator*(const Laurent& c, const SingularHeckeElt& h);
  friend bool operator==(const SingularHeckeElt&, const SingularHeckeElt&) = default;
};

class Hecke {
 public:
  explicit Hecke(const CoxeterGroup& group) : w_(group) {}
  const CoxeterGroup& group() const { return w_; }

  HeckeElt standard(const Element& w, const Laurent& c = Laurent(1)) const;
  HeckeElt one() const { return standard(w_.identity()); }
  // H_s * h
  HeckeElt lmul_gen(int s, const HeckeElt& h) const;
  // h * H_s
  HeckeElt rmul_gen(const HeckeElt& h, int s) const;
  HeckeElt mul(const HeckeElt& a, const HeckeElt& b) const;

  // Sum over W_S of v^{l(w_S) - l(w)} H_w.
  HeckeElt longest_kl(SubsetMask s) const;
  // Poincare factor sum over W_S of v^{l(w_S) - 2 l(w)}.
  Laurent poincare(SubsetMask s) const;

  HeckeElt bar(const HeckeElt& h) const;
  HeckeElt omega(const HeckeElt& h) const;
  Laurent eps(const HeckeElt& h) const { return h.coeff(w_.identity()); }
  Laurent bar_eps(const HeckeElt& h) const { return eps(bar(h)).bar(); }

  // Singular module
  HeckeElt singular_basis(const DoubleCoset& x) const;
  HeckeElt from_singular(const SingularHeckeElt& h) const;
  SingularHeckeElt to_singular(const HeckeElt& h, SubsetMask s1, SubsetMask s2) const;
  SingularHeckeElt sing_basis_elt(SubsetMask s1, SubsetMask s2, const Element& w, const Laurent& c = Laurent(1)) const;
  SingularHeckeElt star(const SingularHeckeElt& a, const SingularHeckeElt& b) const;
  SingularHeckeElt sing_bar(const SingularHeckeElt& h) const;
  SingularHeckeElt sing_omega(const SingularHeckeElt& h) const;
  SingularHeckeElt push_char(const HeckeElt& h, SubsetMask s1, SubsetMask s2) const;
  Laurent hom_grk_formula(const SingularHeckeElt& h1, const SingularHeckeElt& h2) const;
  // For each coset (sorted as in double_cosets), the bar-invariant element
  // N_x + sum_{y<x} m_y N_y with m_y in v Z[v].
  std::vector<SingularHeckeElt> bar_invariant_basis(SubsetMask s1, SubsetMask s2, int bound = -1) const;
  // Kazhdan-Lusztig basis element of w (the S1 = S2 = {} case above).
  HeckeElt kl_element(const Element& w) const;

  // Parses sums of terms such as "(v^-1 - v) Hs + 2 uH{s,t} Hst - v^2".
  HeckeElt parse(const std::string& text) const;
  std::string str(const HeckeElt& h) const;
  std::string str(const SingularHeckeElt& h) const;

 private:
  const HeckeElt& bar_standard(const Element& w) const;
  const CoxeterGroup& w_;
  mutable std::map<Element, HeckeElt> bar_cache_;
};

}  // namespace soergel
