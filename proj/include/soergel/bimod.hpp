#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "soergel/hecke.hpp"
#include "soergel/linalg.hpp"
#include "soergel/schubert.hpp"

namespace soergel {

using PolyVec = std::vector<Polynomial>;
using PolyMatrix = std::vector<PolyVec>;  // [row][col]

// Graded bimodule that is free as a left R-module, presented by
//  - graded degrees of a left basis b_i,
//  - localization components c with weight x_c in W: phi_c(f m g) = f phi_c(m) x_c(g),
//    recorded as loc[c][i] = phi_c(b_i), homogeneous of graded degree degrees[i] - offsets[c],
//  - right action matrices b_i e_k = sum_j right[k][i][j] b_j (may be absent).
struct RegularObject {
  int nvars = 0;
  Field field;
  std::vector<int> degrees;
  std::vector<Element> weights;
  std::vector<int> offsets;
  PolyMatrix loc;
  std::vector<PolyMatrix> right;
  std::string label;
  // Right-action matrices of monomials, filled on demand; shared by copies.
  mutable std::shared_ptr<std::map<Monomial, PolyMatrix>> right_cache;

  int rank() const { return static_cast<int>(degrees.size()); }
  int ncomp() const { return static_cast<int>(weights.size()); }
  bool has_right_action() const { return !right.empty(); }
  int max_degree() const;
  int min_degree() const;
};

// Degree-k map between objects, left R^{S1}-linear and right R^{S2}-linear, stored by its
// values on the left R^{S1}-generators d_u(p_{S1}) b_i of the source.
// values[u][i][l] is the coefficient of the target basis element b'_l.
struct BimodMap {
  SubsetMask s1 = 0;
  int degree = 0;
  std::vector<std::vector<PolyVec>> values;
};

// Object of the singular category in restriction form: the (R^{S1}, R^{S2})-bimodule
// underlying a regular object, optionally cut down by a degree-0 idempotent.
struct SingularObject {
  SubsetMask s1 = 0, s2 = 0;
  RegularObject base;
  std::optional<BimodMap> idem;
};

struct GradedRank {
  Laurent grk;
  bool stable = true;
};

struct HomResult {
  Laurent hilbert;      // sum of dim Hom^k v^k over the computed range
  Laurent grk;          // graded rank over R^{S1}
  int lo = 0, hi = 0;   // computed degree range
  bool stable = false;
  std::map<int, std::vector<BimodMap>> basis;  // when requested
};

// Basis c_k of an object as a right R-module.
struct RightBasis {
  std::vector<PolyVec> elems;  // left coordinates of c_k
  std::vector<int> degrees;
};

struct Summand {
  Element coset_min;
  int shift = 0;
  SingularObject object;
  SingularHeckeElt ch;
};

struct Decomposition {
  std::vector<Summand> summands;
};

enum class TruncationMethod {
  Full,         // degreewise kernels over R
  GenericLine,  // base change along R -> K[t] through a generic line
};

class Bimod {
 public:
  Bimod(const Realization& r, const CoxeterGroup& w, const Schubert& sc, const Hecke& h, std::uint64_t seed = 0x50E26E1);

  const Realization& realization() const { return r_; }
  const CoxeterGroup& group() const { return w_; }
  const Schubert& schubert() const { return sc_; }
  const Hecke& hecke() const { return h_; }
  int nvars() const { return r_.dim; }
  const Field& field() const { return r_.field; }

  void set_method(TruncationMethod m) { method_ = m; }
  TruncationMethod method() const { return method_; }
  void set_degree_bound(int d) { degree_bound_ = d; }
  int degree_bound() const { return degree_bound_; }

  // Construction
  RegularObject unit() const;
  RegularObject shift(const RegularObject& m, int k) const;
  RegularObject dsum(const RegularObject& a, const RegularObject& b) const;
  // R (x)_{R^S} R with basis 1 (x) d_u(p) (pure) or d^R_w(F_{w_S}).
  RegularObject frobenius(SubsetMask s, bool f_basis = false) const;
  RegularObject bs(const std::vector<Gen>& word) const;
  RegularObject tensor(const RegularObject& a, const RegularObject& b, bool with_action = true) const;
  // Solves loc * A_k = diag(x_c(e_k)) loc degreewise.
  void compute_right_action(RegularObject& m) const;
  // Weight space check: loc * right[k] == diag(x_c(e_k)) * loc.
  bool check_weights(const RegularObject& m) const;

  // Right action on left coordinates.
  PolyVec right_mul(const RegularObject& m, const PolyVec& v, const Polynomial& f) const;
  const PolyMatrix& right_matrix(const RegularObject& m, Monomial mono) const;
  PolyMatrix right_matrix(const RegularObject& m, const Polynomial& f) const;
  // Image of an element (left coordinates) under a map.
  PolyVec apply(const RegularObject& src, const RegularObject& dst, const BimodMap& f, const PolyVec& v) const;
  // Rewrites a map in terms of the generators over a larger subset.
  BimodMap regenerate(const RegularObject& src, const RegularObject& dst, const BimodMap& f, SubsetMask s1) const;

  // Truncations and characters
  // Numerator of the Hilbert series of {m : phi_c(m) = 0 for every c with keep[c] false}.
  GradedRank truncation_numerator(const RegularObject& m, const std::vector<char>& keep) const;
  std::vector<long> truncation_dims(const RegularObject& m, const std::vector<char>& keep, int lo, int hi) const;
  Laurent std_grk(const RegularObject& m, const Element& w) const;
  HeckeElt ch(const RegularObject& m) const;
  Laurent hilbert_numerator(const RegularObject& m) const;  // sum v^{d_i}

  // Singular objects
  SingularObject push(const RegularObject& n, SubsetMask s1, SubsetMask s2) const;
  SingularObject push(const SingularObject& v, SubsetMask s1, SubsetMask s2) const;
  SingularObject unit_singular(SubsetMask s) const;
  SingularObject shift(const SingularObject& v, int k) const;
  // Pullback to (S1', S2'); supported targets are (S1, S2) itself and the regular case.
  SingularObject pullback(const SingularObject& v, SubsetMask s1p, SubsetMask s2p) const;
  SingularObject convolve(const SingularObject& a, const SingularObject& b, bool with_action = true) const;
  SingularHeckeElt sing_ch(const SingularObject& v) const;
  // Graded rank over ^{S1}R^{S2}_x of the subquotient at coset x (before the v-normalization of ch).
  Laurent stalk_grk(const SingularObject& v, const DoubleCoset& x) const;
  // Graded rank over ^{S1}R^{S2}_x of the image of the object in its x-weight spaces.
  Laurent costalk_grk(const SingularObject& v, const DoubleCoset& x) const;
  std::vector<DoubleCoset> support(const SingularObject& v) const;
  // Hilbert series of the underlying graded space times (1-v^2)^n P_{S1}(v^2): graded rank over R^{S1}.
  Laurent hilbert(const SingularObject& v) const;

  RightBasis right_basis(const RegularObject& m) const;
  // Right coordinates of x (homogeneous of degree d): x = sum_k c_k coeff[k].
  std::vector<Polynomial> right_coords(const RegularObject& m, const RightBasis& rb, const PolyVec& x, int d) const;

  // Duality
  RegularObject dual(const RegularObject& m) const;
  SingularObject sing_dual(const SingularObject& v) const;

  // Morphisms
  Mat materialize(const RegularObject& src, const RegularObject& dst, const BimodMap& f, int d) const;
  BimodMap identity_map(const RegularObject& m, SubsetMask s1) const;
  HomResult hom(const SingularObject& a, const SingularObject& b, int lo, int hi, bool keep_basis = false) const;
  HomResult hom(const SingularObject& a, const SingularObject& b) const;
  std::vector<BimodMap> hom_degree(const SingularObject& a, const SingularObject& b, int k) const;
  long hom_dim(const SingularObject& a, const SingularObject& b, int k) const;

  Decomposition decompose(const SingularObject& v) const;

  // Polynomial helpers
  Polynomial act(const Element& w, const Polynomial& f) const;
  const std::vector<Polynomial>& express_mono(SubsetMask s, Monomial m) const;
  std::vector<Polynomial> express(SubsetMask s, const Polynomial& f) const;

 private:
  friend struct DecomposeImpl;
  Scalar eval(const Polynomial& f) const;  // at the generic point
  int default_bound(const RegularObject& m, SubsetMask s1, SubsetMask s2) const;
  Mat idem_block(const SingularObject& v, int d) const;

  const Realization& r_;
  const CoxeterGroup& w_;
  const Schubert& sc_;
  const Hecke& h_;
  std::uint64_t seed_;
  std::vector<Scalar> point_;
  TruncationMethod method_ = TruncationMethod::GenericLine;
  int degree_bound_ = 0;  // 0: automatic

  mutable std::map<std::pair<Element, Polynomial>, Polynomial> act_cache_;
  mutable std::map<std::pair<SubsetMask, Monomial>, std::vector<Polynomial>> express_cache_;
};

// Coordinates of an element of the degree-d part of m (left coordinates given as polynomials).
std::vector<Scalar> element_coords(const RegularObject& m, const PolyVec& v, int d);
PolyVec element_from_coords(const RegularObject& m, const std::vector<Scalar>& c, int d);
std::size_t graded_dim(const RegularObject& m, int d);
// Degree-d part of m mapped to the concatenated values of the listed components.
Mat component_matrix(const RegularObject& m, const std::vector<int>& comps, int d);

}  // namespace soergel
