#include <algorithm>
#include <functional>
#include <numeric>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"

namespace soergel {

namespace {

bool poly_deg(int graded, int* k) {
  if (graded < 0 || graded % 2 != 0) return false;
  *k = graded / 2;
  return true;
}

// Multiply a Hilbert series by (1 - v^2)^n.
Laurent times_one_minus_v2(Laurent h, int n) {
  const Laurent f = Laurent(1) - Laurent::monomial(2);
  for (int i = 0; i < n; ++i) h = h * f;
  return h;
}

Laurent series_from_dims(const std::vector<long>& dims, int lo) {
  Laurent h;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i]) h += Laurent::monomial(lo + static_cast<int>(i), dims[i]);
  return h;
}

}  // namespace

// Matrix of m restricted to the given components, from the degree-d part of m to the
// concatenated component values.
Mat component_matrix(const RegularObject& m, const std::vector<int>& comps, int d) {
  std::size_t rows = 0;
  std::vector<std::size_t> row0;
  std::vector<int> rdeg;
  for (int c : comps) {
    int k;
    row0.push_back(rows);
    if (poly_deg(d - m.offsets[c], &k)) {
      rdeg.push_back(k);
      rows += poly_dim(m.nvars, k);
    } else {
      rdeg.push_back(-1);
    }
  }
  Mat a(rows, graded_dim(m, d), m.field);
  std::size_t col = 0;
  for (int i = 0; i < m.rank(); ++i) {
    int k;
    if (!poly_deg(d - m.degrees[i], &k)) continue;
    const auto& monos = MonomialBasis::get(m.nvars, k).monomials();
    for (Monomial mo : monos) {
      Polynomial x = Polynomial::from_terms(m.nvars, {{mo, m.field.one()}});
      for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& e = m.loc[comps[ci]][i];
        if (e.is_zero() || rdeg[ci] < 0) continue;
        auto cc = coords(e * x, rdeg[ci], m.field);
        for (std::size_t q = 0; q < cc.size(); ++q)
          if (!cc[q].is_zero()) a.set(row0[ci] + q, col, cc[q]);
      }
      ++col;
    }
  }
  return a;
}

std::vector<long> Bimod::truncation_dims(const RegularObject& m, const std::vector<char>& keep, int lo, int hi) const {
  std::vector<int> kill;
  for (int c = 0; c < m.ncomp(); ++c)
    if (!keep[c]) kill.push_back(c);
  std::vector<long> out;
  for (int d = lo; d <= hi; ++d) {
    std::size_t dim = graded_dim(m, d);
    if (kill.empty() || dim == 0) {
      out.push_back(static_cast<long>(dim));
      continue;
    }
    out.push_back(static_cast<long>(dim - rank(component_matrix(m, kill, d))));
  }
  return out;
}

int Bimod::default_bound(const RegularObject& m, SubsetMask s1, SubsetMask s2) const {
  if (degree_bound_ > 0) return degree_bound_;
  int len = 0;
  for (auto& w : m.weights) len = std::max(len, w.length());
  if (w_.is_finite()) len = std::max(len, w_.parabolic(w_.full_mask()).longest.length());
  (void)s1;
  (void)s2;
  return m.min_degree() + 2 * (m.max_degree() - m.min_degree() + len) + 4;
}

GradedRank Bimod::truncation_numerator(const RegularObject& m, const std::vector<char>& keep) const {
  GradedRank res;
  if (method_ == TruncationMethod::GenericLine) {
    // Over K[t] the truncation is cut out by scalar equations on the basis coefficients;
    // ordering the basis by degree, a basis element contributes v^{d_i} to the numerator
    // exactly when its column is not a pivot.
    std::vector<int> order(m.rank());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return m.degrees[a] < m.degrees[b]; });
    std::vector<int> kill;
    for (int c = 0; c < m.ncomp(); ++c)
      if (!keep[c]) kill.push_back(c);
    std::vector<char> pivot(m.rank(), 0);
    if (!kill.empty()) {
      Mat a(kill.size(), m.rank(), field());
      for (std::size_t r = 0; r < kill.size(); ++r)
        for (int j = 0; j < m.rank(); ++j) {
          const auto& e = m.loc[kill[r]][order[j]];
          if (!e.is_zero()) a.set(r, j, eval(e));
        }
      for (auto c : a.rref()) pivot[order[c]] = 1;
    }
    for (int i = 0; i < m.rank(); ++i)
      if (!pivot[i]) res.grk += Laurent::monomial(m.degrees[i]);
    return res;
  }
  const int lo = m.min_degree();
  int hi = default_bound(m, 0, 0);
  for (int attempt = 0; attempt < 3; ++attempt, hi = lo + 2 * (hi - lo)) {
    Laurent q = times_one_minus_v2(series_from_dims(truncation_dims(m, keep, lo, hi), lo), nvars()).restrict(lo, hi);
    bool stable = true;
    for (int e = hi - 3; e <= hi; ++e)
      if (q.coeff(e) != 0) stable = false;
    if (stable) {
      res.grk = q;
      return res;
    }
  }
  fail(ErrorCode::DegreeBoundTooSmall, "truncated Hilbert series did not stabilize up to degree " + std::to_string(hi));
}

Laurent Bimod::hilbert_numerator(const RegularObject& m) const {
  Laurent h;
  for (int d : m.degrees) h += Laurent::monomial(d);
  return h;
}

Laurent Bimod::std_grk(const RegularObject& m, const Element& w) const {
  std::vector<char> ge(m.ncomp()), gt(m.ncomp());
  bool present = false;
  for (int c = 0; c < m.ncomp(); ++c) {
    ge[c] = w_.bruhat_leq(w, m.weights[c]);
    gt[c] = ge[c] && !(m.weights[c] == w);
    present = present || m.weights[c] == w;
  }
  if (!present) return Laurent();
  Laurent q = truncation_numerator(m, ge).grk - truncation_numerator(m, gt).grk;
  if (!q.nonnegative()) fail(ErrorCode::DegreeBoundTooSmall, "standard subquotient has a negative graded rank");
  return q.bar();
}

HeckeElt Bimod::ch(const RegularObject& m) const {
  SingularObject v{0, 0, m, std::nullopt};
  return h_.from_singular(sing_ch(v));
}

// ---------------------------------------------------------------- singular objects

SingularObject Bimod::push(const RegularObject& n, SubsetMask s1, SubsetMask s2) const {
  sc_.frobenius(s1);
  sc_.frobenius(s2);
  return SingularObject{s1, s2, n, std::nullopt};
}

SingularObject Bimod::push(const SingularObject& v, SubsetMask s1, SubsetMask s2) const {
  if ((v.s1 & ~s1) || (v.s2 & ~s2)) fail(ErrorCode::UsageError, "push-forward targets must contain the source subsets");
  SingularObject out = push(v.base, s1, s2);
  if (v.idem) out.idem = regenerate(v.base, v.base, *v.idem, s1);
  return out;
}

SingularObject Bimod::shift(const SingularObject& v, int k) const {
  SingularObject out = v;
  out.base = shift(v.base, k);
  return out;
}

SingularObject Bimod::unit_singular(SubsetMask s) const {
  const auto& fd = sc_.frobenius(s);
  SingularObject v{s, s, unit(), std::nullopt};
  BimodMap e;
  e.s1 = s;
  e.degree = 0;
  for (std::size_t u = 0; u < fd.elements.size(); ++u) {
    Polynomial val(nvars());
    if (fd.elements[u] == fd.longest) val = Polynomial(nvars(), field().one());
    e.values.push_back({PolyVec{val}});
  }
  v.idem = std::move(e);
  v.base.label = "unit";
  return v;
}

namespace {

struct CosetIndex {
  std::vector<DoubleCoset> cosets;       // sorted
  std::vector<int> of_comp;              // component -> coset index
};

CosetIndex index_cosets(const CoxeterGroup& w, const SingularObject& v) {
  CosetIndex ci;
  std::map<Element, int> by_min;
  std::vector<Element> mins;
  for (auto& x : v.base.weights) mins.push_back(w.min_rep(v.s1, v.s2, x));
  std::vector<Element> uniq = mins;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  for (auto& m : uniq) {
    by_min[m] = static_cast<int>(ci.cosets.size());
    ci.cosets.push_back(w.coset_of(v.s1, v.s2, m));
  }
  for (auto& m : mins) ci.of_comp.push_back(by_min[m]);
  return ci;
}

}  // namespace

Mat Bimod::idem_block(const SingularObject& v, int d) const { return materialize(v.base, v.base, *v.idem, d); }

// Numerator of the Hilbert series of the part of the object cut out by keep.
// Poincare polynomial of W_S in v^2.
static Laurent poincare_v2(const CoxeterGroup& w, SubsetMask s) {
  Laurent p;
  for (auto& u : w.parabolic(s).elements) p += Laurent::monomial(2 * u.length());
  return p;
}

// Numerator over R^{S1} (Hilbert series times (1-v^2)^n P_{S1}(v^2)).
static GradedRank sub_numerator(const Bimod& b, const SingularObject& v, const std::vector<char>& keep,
                                const std::function<Mat(int)>& idem, int bound) {
  const Laurent ps = poincare_v2(b.group(), v.s1);
  if (!v.idem) {
    auto g = b.truncation_numerator(v.base, keep);
    return GradedRank{g.grk * ps, g.stable};
  }
  const RegularObject& m = v.base;
  std::vector<int> kill;
  for (int c = 0; c < m.ncomp(); ++c)
    if (!keep[c]) kill.push_back(c);
  const int lo = m.min_degree();
  int hi = bound;
  for (int attempt = 0; attempt < 3; ++attempt, hi = lo + 2 * (hi - lo)) {
    std::vector<long> dims;
    for (int d = lo; d <= hi; ++d) {
      std::size_t dim = graded_dim(m, d);
      if (dim == 0) {
        dims.push_back(0);
        continue;
      }
      Mat e = idem(d);
      if (kill.empty()) {
        dims.push_back(static_cast<long>(rank(e)));
      } else {
        Mat k = kernel(component_matrix(m, kill, d));
        dims.push_back(static_cast<long>(rank(e * k)));
      }
    }
    Laurent q = (times_one_minus_v2(series_from_dims(dims, lo), b.nvars()) * ps).restrict(lo, hi);
    bool stable = true;
    for (int e = hi - 3; e <= hi; ++e)
      if (q.coeff(e) != 0) stable = false;
    if (stable) return GradedRank{q, true};
  }
  fail(ErrorCode::DegreeBoundTooSmall, "Hilbert series of the summand did not stabilize up to degree " + std::to_string(hi));
}

namespace {

// P_I(v^2) for I = S1 cap x- S2 x-^{-1}.
Laurent intersection_poincare(const CoxeterGroup& w, SubsetMask s1, SubsetMask s2, const Element& xmin) {
  Laurent p;
  const Element xinv = w.inv(xmin);
  for (auto& u : w.parabolic(s2).elements) {
    Element c = w.mul(w.mul(xmin, u), xinv);
    if (w.in_parabolic(c, s1)) p += Laurent::monomial(2 * c.length());
  }
  return p;
}

}  // namespace

std::vector<DoubleCoset> Bimod::support(const SingularObject& v) const {
  auto ci = index_cosets(w_, v);
  if (!v.idem) return ci.cosets;
  std::vector<DoubleCoset> out;
  for (auto& x : ci.cosets)
    if (!costalk_grk(v, x).is_zero()) out.push_back(x);
  return out;
}

Laurent Bimod::stalk_grk(const SingularObject& v, const DoubleCoset& x) const {
  auto ci = index_cosets(w_, v);
  const int n = v.base.ncomp();
  std::vector<char> ge(n), gt(n);
  bool present = false;
  for (int c = 0; c < n; ++c) {
    const auto& y = ci.cosets[ci.of_comp[c]];
    ge[c] = w_.coset_leq(x, y);
    gt[c] = ge[c] && !(y == x);
    present = present || y == x;
  }
  if (!present) return Laurent();
  const int bound = default_bound(v.base, v.s1, v.s2);
  auto idem = [&](int d) { return idem_block(v, d); };
  Laurent q = sub_numerator(*this, v, ge, idem, bound).grk - sub_numerator(*this, v, gt, idem, bound).grk;
  Laurent g = (q * intersection_poincare(w_, v.s1, v.s2, x.min)).exact_div(poincare_v2(w_, v.s1)).bar();
  if (!g.nonnegative()) fail(ErrorCode::DegreeBoundTooSmall, "stalk graded rank has a negative coefficient at " + w_.name(x.min));
  return g;
}

Laurent Bimod::costalk_grk(const SingularObject& v, const DoubleCoset& x) const {
  auto ci = index_cosets(w_, v);
  const int n = v.base.ncomp();
  std::vector<char> all(n, 1), notx(n);
  bool present = false;
  for (int c = 0; c < n; ++c) {
    notx[c] = !(ci.cosets[ci.of_comp[c]] == x);
    present = present || !notx[c];
  }
  if (!present) return Laurent();
  const int bound = default_bound(v.base, v.s1, v.s2);
  auto idem = [&](int d) { return idem_block(v, d); };
  Laurent q = sub_numerator(*this, v, all, idem, bound).grk - sub_numerator(*this, v, notx, idem, bound).grk;
  Laurent g = (q * intersection_poincare(w_, v.s1, v.s2, x.min)).exact_div(poincare_v2(w_, v.s1)).bar();
  if (!g.nonnegative()) fail(ErrorCode::DegreeBoundTooSmall, "costalk graded rank has a negative coefficient at " + w_.name(x.min));
  return g;
}

Laurent Bimod::hilbert(const SingularObject& v) const {
  std::vector<char> all(v.base.ncomp(), 1);
  auto idem = [&](int d) { return idem_block(v, d); };
  return sub_numerator(*this, v, all, idem, default_bound(v.base, v.s1, v.s2)).grk;
}

SingularHeckeElt Bimod::sing_ch(const SingularObject& v) const {
  SingularHeckeElt out;
  out.s1 = v.s1;
  out.s2 = v.s2;
  const int top1 = w_.parabolic(v.s1).longest.length();
  for (auto& x : index_cosets(w_, v).cosets) {
    Laurent g = stalk_grk(v, x);
    if (g.is_zero()) continue;
    out.add(x.min, g.shifted(top1 + 2 * x.min.length() - x.max.length()));
  }
  return out;
}

}  // namespace soergel
