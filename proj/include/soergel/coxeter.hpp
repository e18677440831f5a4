#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "soergel/realization.hpp"

namespace soergel {

using Gen = std::uint8_t;
using SubsetMask = std::uint32_t;

// Group element stored as its ShortLex-minimal reduced word.
struct Element {
  std::vector<Gen> word;
  int length() const { return static_cast<int>(word.size()); }
  bool is_identity() const { return word.empty(); }
  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (a.word.size() != b.word.size()) return a.word.size() <=> b.word.size();
    return a.word <=> b.word;
  }
};

struct Reflection {
  Element element;
  Element conjugator;  // w in t = w s w^-1
  int generator = 0;   // s
  Vec root;            // w(alpha_s) in the user realization; empty without one
};

struct FinitarySubset {
  SubsetMask mask = 0;
  Element longest;
  std::size_t order = 1;
  std::vector<Element> elements;  // ShortLex sorted
};

struct DoubleCoset {
  SubsetMask s1 = 0, s2 = 0;
  Element min, max;
  std::vector<Element> members;  // ShortLex sorted
  bool contains(const Element& w) const;
  friend bool operator==(const DoubleCoset& a, const DoubleCoset& b) {
    return a.s1 == b.s1 && a.s2 == b.s2 && a.min == b.min;
  }
  friend bool operator<(const DoubleCoset& a, const DoubleCoset& b) {
    if (a.s1 != b.s1) return a.s1 < b.s1;
    if (a.s2 != b.s2) return a.s2 < b.s2;
    return a.min < b.min;
  }
};

using IntMat = std::vector<std::int64_t>;  // row-major rank x rank

class CoxeterGroup {
 public:
  // length_bound caps element lengths in infinite groups.
  explicit CoxeterGroup(const CoxeterData& data, int length_bound = 64);

  const CoxeterData& data() const { return data_; }
  int rank() const { return data_.rank(); }
  int length_bound() const { return length_bound_; }
  bool is_finite() const;

  Element identity() const { return {}; }
  Element gen(int s) const { return Element{{static_cast<Gen>(s)}}; }
  // Canonical form of the product of the letters of word.
  Element reduce(const std::vector<Gen>& word) const;
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  Element lmul(int s, const Element& a) const;
  Element rmul(const Element& a, int s) const;
  bool left_descent(int s, const Element& a) const;
  bool right_descent(const Element& a, int s) const;
  bool bruhat_leq(const Element& a, const Element& b) const;
  IntMat matrix(const Element& a) const;  // geometric representation

  // All elements of length <= bound (bound < 0 means all; finite groups only).
  std::vector<Element> elements_up_to(int bound) const;
  const std::vector<Element>& all_elements() const;

  SubsetMask full_mask() const { return (SubsetMask{1} << rank()) - 1; }
  bool is_finitary(SubsetMask mask) const;
  const FinitarySubset& parabolic(SubsetMask mask) const;  // throws Unsupported if infinite
  bool in_parabolic(const Element& w, SubsetMask mask) const;
  std::vector<SubsetMask> finitary_subsets() const;

  Element min_rep(SubsetMask s1, SubsetMask s2, const Element& w) const;
  const DoubleCoset& coset_of(SubsetMask s1, SubsetMask s2, const Element& w) const;
  // Cosets whose minimal representative has length <= bound (bound < 0: all, finite W only),
  // sorted by (length of x-, x-).
  std::vector<DoubleCoset> double_cosets(SubsetMask s1, SubsetMask s2, int bound = -1) const;
  bool coset_leq(const DoubleCoset& x, const DoubleCoset& y) const { return bruhat_leq(x.min, y.min); }
  // Openness (upward closed) and closedness relative to the given universe of cosets.
  bool is_open(const std::vector<DoubleCoset>& subset, const std::vector<DoubleCoset>& universe) const;
  bool is_closed(const std::vector<DoubleCoset>& subset, const std::vector<DoubleCoset>& universe) const;
  // The (S1,S3)-cosets met by the set product xy.
  std::vector<DoubleCoset> coset_product(const DoubleCoset& x, const DoubleCoset& y) const;

  // Reflections of length <= bound (bound < 0: all, finite W only). Roots are computed in
  // user when given, using the least (length(w), w, s) with t = w s w^-1.
  std::vector<Reflection> reflections_up_to(int bound, const Realization* user = nullptr) const;

  std::string name(const Element& w) const;  // "sts", identity "1"
  Element parse(const std::string& text) const;
  SubsetMask parse_subset(const std::string& text) const;  // "s,t", "st", "" or "-"
  std::vector<std::string> subset_names(SubsetMask mask) const;

 private:
  IntMat gen_matrix(int s) const { return gens_[s]; }
  void check_bound(const Element& w) const;

  CoxeterData data_;
  int length_bound_;
  std::vector<IntMat> gens_;

  mutable std::mutex mu_;
  mutable int finite_state_ = -1;
  mutable std::vector<Element> all_;
  mutable std::map<std::pair<Element, int>, Element> lmul_cache_, rmul_cache_;
  mutable std::map<std::pair<Element, Element>, bool> bruhat_cache_;
  mutable std::map<SubsetMask, std::unique_ptr<FinitarySubset>> parabolic_cache_;
  mutable std::map<SubsetMask, bool> finitary_cache_;
  mutable std::map<std::tuple<SubsetMask, SubsetMask, Element>, std::unique_ptr<DoubleCoset>> coset_cache_;
};

// Apply the user realization's action of w to a vector.
Vec act_on_vector(const Realization& r, const Element& w, const Vec& v);

}  // namespace soergel
