#include <algorithm>
#include <random>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"

namespace soergel {

namespace {

using Blocks = std::vector<Mat>;  // one square block per degree of the range

Mat lin(const Mat& a, const Scalar& ca, const Mat& b, const Scalar& cb) {
  Mat out(a.rows(), a.cols(), a.field());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Scalar v = ca * a.get(r, c) + cb * b.get(r, c);
      if (!v.is_zero()) out.set(r, c, v);
    }
  return out;
}

Blocks blk_lin(const Blocks& a, const Scalar& ca, const Blocks& b, const Scalar& cb) {
  Blocks out;
  for (std::size_t d = 0; d < a.size(); ++d) out.push_back(lin(a[d], ca, b[d], cb));
  return out;
}

Blocks blk_mul(const Blocks& a, const Blocks& b) {
  Blocks out;
  for (std::size_t d = 0; d < a.size(); ++d) out.push_back(a[d] * b[d]);
  return out;
}

Blocks blk_zero(const Blocks& shape) {
  Blocks out;
  for (auto& m : shape) out.emplace_back(m.rows(), m.cols(), m.field());
  return out;
}

std::vector<Scalar> flatten(const Blocks& a) {
  std::vector<Scalar> v;
  for (auto& m : a)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m.get(r, c));
  return v;
}

bool blk_is_zero(const Blocks& a) {
  for (auto& m : a)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.is_zero(r, c)) return false;
  return true;
}

Mat columns_matrix(const std::vector<std::vector<Scalar>>& cols, std::size_t rows, const Field& f) {
  Mat a(rows, cols.size(), f);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r)
      if (!cols[c][r].is_zero()) a.set(r, c, cols[c][r]);
  return a;
}

// Subset of the given elements forming a basis of their span.
std::vector<Blocks> independent(const std::vector<Blocks>& elts, const Field& f) {
  if (elts.empty()) return {};
  std::vector<std::vector<Scalar>> cols;
  for (auto& e : elts) cols.push_back(flatten(e));
  std::vector<Blocks> out;
  for (auto c : independent_columns(columns_matrix(cols, cols[0].size(), f))) out.push_back(elts[c]);
  return out;
}

// Projection onto the stable image of x along its stable kernel.
Mat fitting_projection(const Mat& x) {
  const std::size_t n = x.rows();
  if (n == 0) return x;
  Mat y = x;
  std::size_t r = rank(y);
  for (;;) {
    Mat y2 = y * y;
    std::size_t r2 = rank(y2);
    y = std::move(y2);
    if (r2 == r) break;
    r = r2;
  }
  Mat p(n, n, x.field());
  if (r == 0) return p;
  auto im = independent_columns(y);
  Mat ker = kernel(y);
  Mat c(n, n, x.field());
  for (std::size_t j = 0; j < im.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!y.is_zero(i, im[j])) c.set(i, j, y.get(i, im[j]));
  for (std::size_t j = 0; j < ker.cols(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (!ker.is_zero(i, j)) c.set(i, im.size() + j, ker.get(i, j));
  auto ci = inverse(c);
  if (!ci) fail(ErrorCode::IdempotentSplitFailure, "Fitting decomposition is degenerate");
  Mat dproj(n, n, x.field());
  for (std::size_t j = 0; j < im.size(); ++j) dproj.set(j, j, x.field().one());
  return c * (dproj * *ci);
}

}  // namespace

struct DecomposeImpl {
  const Bimod& b;
  const SingularObject& v;
  std::vector<int> degs;  // degrees with nonzero part, covering every generator degree
  std::vector<BimodMap> raw;  // basis of degree-0 bimodule endomorphisms of the base
  std::vector<Blocks> raw_blocks;
  std::vector<std::size_t> pivot_rows;
  Mat pivot_inv;
  std::mt19937_64 rng;

  DecomposeImpl(const Bimod& bm, const SingularObject& obj) : b(bm), v(obj), rng(bm.seed_ ^ 0xDEC0u) {}

  Blocks materialize(const BimodMap& f) const {
    Blocks out;
    for (int d : degs) out.push_back(b.materialize(v.base, v.base, f, d));
    return out;
  }

  void setup() {
    const int top = b.group().parabolic(v.s1).longest.length();
    for (int d = v.base.min_degree(); d <= v.base.max_degree() + 2 * top; ++d)
      if (graded_dim(v.base, d)) degs.push_back(d);
    SingularObject plain{v.s1, v.s2, v.base, std::nullopt};
    raw = b.hom_degree(plain, plain, 0);
    for (auto& f : raw) raw_blocks.push_back(materialize(f));
    std::vector<std::vector<Scalar>> cols;
    for (auto& m : raw_blocks) cols.push_back(flatten(m));
    Mat all = columns_matrix(cols, cols[0].size(), b.field());
    pivot_rows = independent_columns(all.transpose());
    Mat sq(pivot_rows.size(), raw.size(), b.field());
    for (std::size_t r = 0; r < pivot_rows.size(); ++r)
      for (std::size_t c = 0; c < raw.size(); ++c) sq.set(r, c, cols[c][pivot_rows[r]]);
    auto inv = inverse(sq);
    if (!inv) fail(ErrorCode::IdempotentSplitFailure, "endomorphism basis is not independent");
    pivot_inv = *inv;
  }

  // Writes an algebra element as a map, checking that it lies in the span of the basis.
  BimodMap to_map(const Blocks& x) const {
    auto flat = flatten(x);
    std::vector<Scalar> sel;
    for (auto r : pivot_rows) sel.push_back(flat[r]);
    std::vector<Scalar> coef(raw.size(), b.field().zero());
    for (std::size_t i = 0; i < raw.size(); ++i)
      for (std::size_t j = 0; j < sel.size(); ++j)
        if (!sel[j].is_zero()) coef[i] += pivot_inv.get(i, j) * sel[j];
    Blocks check = blk_zero(x);
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (!coef[i].is_zero()) check = blk_lin(check, b.field().one(), raw_blocks[i], coef[i]);
    if (flatten(check) != flat) fail(ErrorCode::IdempotentSplitFailure, "idempotent is not a bimodule endomorphism");
    BimodMap m = raw[0];
    for (auto& row : m.values)
      for (auto& val : row)
        for (auto& p : val) p = Polynomial(b.nvars());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (coef[i].is_zero()) continue;
      for (std::size_t u = 0; u < m.values.size(); ++u)
        for (std::size_t k = 0; k < m.values[u].size(); ++k)
          for (std::size_t l = 0; l < m.values[u][k].size(); ++l)
            if (!raw[i].values[u][k][l].is_zero()) m.values[u][k][l] += coef[i] * raw[i].values[u][k][l];
    }
    return m;
  }

  Blocks fitting(const Blocks& x) const {
    Blocks out;
    for (auto& m : x) out.push_back(fitting_projection(m));
    return out;
  }

  Scalar random_scalar() {
    const std::uint32_t p = b.field().p;
    return p ? b.field().of(static_cast<long>(rng() % p)) : b.field().of(static_cast<long>(rng() % 2001) - 1000);
  }

  Blocks random_in(const std::vector<Blocks>& basis) {
    Blocks x = blk_zero(basis[0]);
    for (auto& e : basis) x = blk_lin(x, b.field().one(), e, random_scalar());
    return x;
  }

  // Multiplicity space of the maximal support coset of eN, with the action of eAe on it.
  struct Top {
    std::vector<Mat> rho;  // per basis element of eAe: block-diagonal action, flattened per degree
    std::vector<std::size_t> dims;
    std::size_t total = 0;
  };

  std::vector<int> comps_of(const DoubleCoset& x) const {
    std::vector<int> out;
    for (int c = 0; c < v.base.ncomp(); ++c)
      if (b.group().min_rep(v.s1, v.s2, v.base.weights[c]) == x.min) out.push_back(c);
    return out;
  }

  // Columns spanning R^{S1}_+ N + N R^{S2}_+ in degree d.
  Mat plus_part(int d) const {
    const RegularObject& m = v.base;
    std::vector<std::vector<Scalar>> cols;
    auto add_from = [&](const Polynomial& g, bool left) {
      const int sd = d - 2 * g.degree();
      const std::size_t n = graded_dim(m, sd);
      for (std::size_t q = 0; q < n; ++q) {
        std::vector<Scalar> unit(n, b.field().zero());
        unit[q] = b.field().one();
        PolyVec x = element_from_coords(m, unit, sd);
        if (left) {
          for (auto& p : x) p = p * g;
        } else {
          x = b.right_mul(m, x, g);
        }
        cols.push_back(element_coords(m, x, d));
      }
    };
    for (auto& g : b.schubert().invariant_generators(v.s1)) add_from(g, true);
    for (auto& g : b.schubert().invariant_generators(v.s2)) add_from(g, false);
    return columns_matrix(cols, graded_dim(m, d), b.field());
  }

  Top top(const Blocks& e, const std::vector<Blocks>& basis, const DoubleCoset& x) const {
    Top t;
    t.rho.assign(basis.size(), Mat());
    auto comps = comps_of(x);
    std::vector<std::vector<std::vector<Scalar>>> rho_cols(basis.size());
    for (std::size_t k = 0; k < degs.size(); ++k) {
      const int d = degs[k];
      Mat phi = component_matrix(v.base, comps, d);
      Mat u = phi * e[k];
      Mat w = u * plus_part(d);
      // [W | U]: columns of U independent modulo W give representatives.
      const std::size_t wc = w.cols();
      Mat wu(phi.rows(), wc + u.cols(), b.field());
      for (std::size_t r = 0; r < phi.rows(); ++r) {
        for (std::size_t c = 0; c < wc; ++c)
          if (!w.is_zero(r, c)) wu.set(r, c, w.get(r, c));
        for (std::size_t c = 0; c < u.cols(); ++c)
          if (!u.is_zero(r, c)) wu.set(r, wc + c, u.get(r, c));
      }
      std::vector<std::size_t> reps;
      for (auto c : independent_columns(wu))
        if (c >= wc) reps.push_back(c - wc);
      t.dims.push_back(reps.size());
      t.total += reps.size();
      if (reps.empty()) continue;
      Mat sys(phi.rows(), wc + reps.size(), b.field());
      for (std::size_t r = 0; r < phi.rows(); ++r) {
        for (std::size_t c = 0; c < wc; ++c)
          if (!w.is_zero(r, c)) sys.set(r, c, w.get(r, c));
        for (std::size_t j = 0; j < reps.size(); ++j)
          if (!u.is_zero(r, reps[j])) sys.set(r, wc + j, u.get(r, reps[j]));
      }
      for (std::size_t q = 0; q < basis.size(); ++q) {
        Mat img = phi * (basis[q][k] * e[k]);
        for (std::size_t j = 0; j < reps.size(); ++j) {
          auto z = solve(sys, img.column(reps[j]));
          if (!z) fail(ErrorCode::IdempotentSplitFailure, "endomorphism does not preserve the top");
          std::vector<Scalar> col(z->begin() + static_cast<long>(wc), z->end());
          rho_cols[q].push_back(std::move(col));
        }
      }
    }
    // rho[q] is a (sum m_d^2) x 1 vector stacked over degrees, stored as a column matrix.
    for (std::size_t q = 0; q < basis.size(); ++q) {
      std::vector<Scalar> flat;
      for (auto& col : rho_cols[q])
        for (auto& s : col) flat.push_back(s);
      Mat m(flat.size(), 1, b.field());
      for (std::size_t r = 0; r < flat.size(); ++r)
        if (!flat[r].is_zero()) m.set(r, 0, flat[r]);
      t.rho[q] = std::move(m);
    }
    return t;
  }

  std::vector<Blocks> corner_basis(const Blocks& e, const std::vector<Blocks>& basis) const {
    std::vector<Blocks> s;
    for (auto& a : basis) s.push_back(blk_mul(e, blk_mul(a, e)));
    return independent(s, b.field());
  }

  const DoubleCoset* maximal_coset(const Blocks& e, std::vector<DoubleCoset>& cosets) const {
    std::sort(cosets.begin(), cosets.end(), [](const DoubleCoset& p, const DoubleCoset& q) {
      return p.min.length() != q.min.length() ? p.min.length() > q.min.length() : q.min < p.min;
    });
    for (auto& x : cosets) {
      auto comps = comps_of(x);
      for (std::size_t k = 0; k < degs.size(); ++k)
        if (rank(component_matrix(v.base, comps, degs[k]) * e[k]) > 0) return &x;
    }
    return nullptr;
  }

  // Splits e into primitive idempotents of the endomorphism algebra.
  void split(const Blocks& e, std::vector<Blocks>& out, std::vector<DoubleCoset>& cosets, int depth) {
    if (depth > 64) fail(ErrorCode::IdempotentSplitFailure, "splitting does not terminate");
    auto basis = corner_basis(e, raw_blocks);
    if (basis.size() <= 1) {
      out.push_back(e);
      return;
    }
    const DoubleCoset* x = maximal_coset(e, cosets);
    if (!x) fail(ErrorCode::IdempotentSplitFailure, "idempotent with empty support");
    Top t = top(e, basis, *x);
    if (t.total == 0) fail(ErrorCode::IdempotentSplitFailure, "empty top at the maximal support coset");
    // rho as a linear map from eAe to the flattened top endomorphisms.
    const std::size_t rows = t.rho[0].rows();
    Mat rho(rows, basis.size(), b.field());
    for (std::size_t q = 0; q < basis.size(); ++q)
      for (std::size_t r = 0; r < rows; ++r)
        if (!t.rho[q].is_zero(r, 0)) rho.set(r, q, t.rho[q].get(r, 0));
    Blocks f;
    if (t.total >= 2) {
      // Lift the projection onto the first top vector (the first flattened entry).
      std::vector<Scalar> target(rows, b.field().zero());
      target[0] = b.field().one();
      auto c = solve(rho, target);
      if (!c) fail(ErrorCode::IdempotentSplitFailure, "endomorphisms do not surject onto the top");
      Blocks a = blk_zero(e);
      for (std::size_t q = 0; q < basis.size(); ++q)
        if (!(*c)[q].is_zero()) a = blk_lin(a, b.field().one(), basis[q], (*c)[q]);
      f = fitting(a);
    } else {
      // One-dimensional top: split off a non-nilpotent part of the kernel, if any.
      Mat ker = kernel(rho);
      std::vector<Blocks> j;
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        Blocks a = blk_zero(e);
        for (std::size_t q = 0; q < basis.size(); ++q)
          if (!ker.is_zero(q, c)) a = blk_lin(a, b.field().one(), basis[q], ker.get(q, c));
        j.push_back(std::move(a));
      }
      std::vector<Blocks> pw = j;
      while (!pw.empty()) {
        std::vector<Blocks> next;
        for (auto& p : pw)
          for (auto& q : j) next.push_back(blk_mul(p, q));
        next = independent(next, b.field());
        if (next.size() == pw.size()) break;
        pw = std::move(next);
      }
      if (pw.empty()) {
        out.push_back(e);
        return;
      }
      for (int attempt = 0; attempt < 16 && (f.empty() || blk_is_zero(f)); ++attempt) f = fitting(random_in(pw));
      if (blk_is_zero(f)) fail(ErrorCode::IdempotentSplitFailure, "no non-nilpotent element found in the radical complement");
    }
    Blocks rest = blk_lin(e, b.field().one(), f, -b.field().one());
    if (blk_is_zero(f) || blk_is_zero(rest)) fail(ErrorCode::IdempotentSplitFailure, "lifted idempotent is trivial");
    split(f, out, cosets, depth + 1);
    split(rest, out, cosets, depth + 1);
  }
};

Decomposition Bimod::decompose(const SingularObject& v) const {
  DecomposeImpl impl(*this, v);
  impl.setup();
  Blocks e;
  if (v.idem) {
    e = impl.materialize(*v.idem);
  } else {
    for (int d : impl.degs) e.push_back(identity_mat(graded_dim(v.base, d), field()));
  }
  std::vector<DoubleCoset> cosets;
  {
    std::vector<Element> mins;
    for (auto& x : v.base.weights) mins.push_back(w_.min_rep(v.s1, v.s2, x));
    std::sort(mins.begin(), mins.end());
    mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
    for (auto& m : mins) cosets.push_back(w_.coset_of(v.s1, v.s2, m));
  }
  std::vector<Blocks> prims;
  impl.split(e, prims, cosets, 0);

  Decomposition out;
  for (auto& p : prims) {
    Summand s;
    s.object = SingularObject{v.s1, v.s2, v.base, impl.to_map(p)};
    s.object.base.label = v.base.label;
    s.ch = sing_ch(s.object);
    // Label by the maximal coset of the character; its coefficient must be a single power of v.
    const Element* best = nullptr;
    for (auto& [xm, c] : s.ch.terms)
      if (!best || xm.length() > best->length()) best = &xm;
    if (!best) fail(ErrorCode::IdempotentSplitFailure, "summand with zero character");
    const Laurent& c = s.ch.terms.at(*best);
    if (c.terms().size() != 1 || c.terms().begin()->second != 1)
      fail(ErrorCode::IdempotentSplitFailure, "summand at " + w_.name(*best) + " is not indecomposable");
    s.coset_min = *best;
    s.shift = c.min_exp();
    out.summands.push_back(std::move(s));
  }
  std::sort(out.summands.begin(), out.summands.end(), [](const Summand& a, const Summand& b) {
    return a.coset_min != b.coset_min ? b.coset_min < a.coset_min : a.shift < b.shift;
  });
  return out;
}

}  // namespace soergel
