#include <algorithm>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"

namespace soergel {

namespace {

bool poly_deg(int graded, int* k) {
  if (graded < 0 || graded % 2 != 0) return false;
  *k = graded / 2;
  return true;
}


int generator_degree(const FrobeniusData& fd, const RegularObject& src, std::size_t u, int i) {
  return src.degrees[i] + 2 * (fd.longest.length() - fd.elements[u].length());
}

}  // namespace

BimodMap Bimod::identity_map(const RegularObject& m, SubsetMask s1) const {
  const auto& fd = sc_.frobenius(s1);
  BimodMap f;
  f.s1 = s1;
  f.degree = 0;
  for (std::size_t u = 0; u < fd.elements.size(); ++u) {
    std::vector<PolyVec> row;
    for (int i = 0; i < m.rank(); ++i) {
      PolyVec v(m.rank(), Polynomial(nvars()));
      v[i] = fd.basis[u];
      row.push_back(std::move(v));
    }
    f.values.push_back(std::move(row));
  }
  return f;
}

PolyVec Bimod::apply(const RegularObject& src, const RegularObject& dst, const BimodMap& f, const PolyVec& v) const {
  PolyVec out(dst.rank(), Polynomial(nvars()));
  for (int i = 0; i < src.rank(); ++i) {
    if (v[i].is_zero()) continue;
    auto c = express(f.s1, v[i]);
    for (std::size_t u = 0; u < c.size(); ++u) {
      if (c[u].is_zero()) continue;
      const auto& val = f.values[u][i];
      for (int l = 0; l < dst.rank(); ++l)
        if (!val[l].is_zero()) out[l] += c[u] * val[l];
    }
  }
  return out;
}

BimodMap Bimod::regenerate(const RegularObject& src, const RegularObject& dst, const BimodMap& f, SubsetMask s1) const {
  const auto& fd = sc_.frobenius(s1);
  BimodMap g;
  g.s1 = s1;
  g.degree = f.degree;
  for (std::size_t u = 0; u < fd.elements.size(); ++u) {
    std::vector<PolyVec> row;
    for (int i = 0; i < src.rank(); ++i) {
      PolyVec v(src.rank(), Polynomial(nvars()));
      v[i] = fd.basis[u];
      row.push_back(apply(src, dst, f, v));
    }
    g.values.push_back(std::move(row));
  }
  return g;
}

Mat Bimod::materialize(const RegularObject& src, const RegularObject& dst, const BimodMap& f, int d) const {
  Mat a(graded_dim(dst, d + f.degree), graded_dim(src, d), field());
  std::size_t col = 0;
  for (int i = 0; i < src.rank(); ++i) {
    int k;
    if (!poly_deg(d - src.degrees[i], &k)) continue;
    for (Monomial mo : MonomialBasis::get(nvars(), k).monomials()) {
      const auto& c = express_mono(f.s1, mo);
      PolyVec out(dst.rank(), Polynomial(nvars()));
      for (std::size_t u = 0; u < c.size(); ++u) {
        if (c[u].is_zero()) continue;
        const auto& val = f.values[u][i];
        for (int l = 0; l < dst.rank(); ++l)
          if (!val[l].is_zero()) out[l] += c[u] * val[l];
      }
      auto cc = element_coords(dst, out, d + f.degree);
      for (std::size_t r = 0; r < cc.size(); ++r)
        if (!cc[r].is_zero()) a.set(r, col, cc[r]);
      ++col;
    }
  }
  return a;
}

// ---------------------------------------------------------------- Hom

namespace {

// Equations accumulated by row; only rows that end up nonzero reach the dense solver.
struct SparseSystem {
  std::size_t ncols = 0;
  Field field;
  std::map<std::size_t, std::map<std::size_t, Scalar>> rows;

  void add(std::size_t r, std::size_t c, const Scalar& v) {
    auto& row = rows[r];
    auto it = row.find(c);
    if (it == row.end()) row.emplace(c, v);
    else it->second += v;
  }
  Mat dense() const {
    std::vector<const std::map<std::size_t, Scalar>*> live;
    for (auto& [r, row] : rows)
      for (auto& [c, v] : row)
        if (!v.is_zero()) {
          live.push_back(&row);
          break;
        }
    Mat a(live.size(), ncols, field);
    for (std::size_t r = 0; r < live.size(); ++r)
      for (auto& [c, v] : *live[r])
        if (!v.is_zero()) a.set(r, c, v);
    return a;
  }
};

// Position of (basis element i, monomial) inside the degree-d coordinates of an object.
struct CoordIndex {
  int nvars;
  std::vector<long> off;
  std::vector<const MonomialBasis*> bases;

  CoordIndex(const RegularObject& m, int d) : nvars(m.nvars) {
    long pos = 0;
    for (int i = 0; i < m.rank(); ++i) {
      int k;
      if (!poly_deg(d - m.degrees[i], &k)) {
        off.push_back(-1);
        bases.push_back(nullptr);
        continue;
      }
      off.push_back(pos);
      bases.push_back(&MonomialBasis::get(m.nvars, k));
      pos += static_cast<long>(bases.back()->size());
    }
  }
  // Adds sign * (p * mono) placed at basis element i to column col.
  template <class Sys>
  void add(Sys& sys, std::size_t row0, int i, const Polynomial& p, Monomial mono, std::size_t col, bool negate) const {
    if (off[i] < 0) {
      if (!p.is_zero()) fail(ErrorCode::Unsupported, "element is not homogeneous of the requested degree");
      return;
    }
    for (auto& [m, c] : p.terms()) {
      long idx = bases[i]->index(m + mono);
      if (idx < 0) fail(ErrorCode::Unsupported, "element is not homogeneous of the requested degree");
      sys.add(row0 + static_cast<std::size_t>(off[i] + idx), col, negate ? -c : c);
    }
  }
};

struct HomSystem {
  std::vector<std::pair<std::size_t, int>> gens;  // (u, i)
  std::vector<int> gdeg;
  std::vector<std::size_t> col0;  // first unknown of each generator
  std::size_t ncols = 0;
};

}  // namespace

namespace {

// Unknowns: values of the left R^{S1}-generators; equations: right R^{S2}-linearity.
SparseSystem left_system(const Bimod& bm, const SingularObject& a, const SingularObject& b, int k, HomSystem& hs) {
  if (a.s1 != b.s1 || a.s2 != b.s2) fail(ErrorCode::MiddleMismatch, "Hom between objects over different subsets");
  const RegularObject& src = a.base;
  const RegularObject& dst = b.base;
  const SubsetMask s1 = a.s1, s2 = a.s2;
  const auto& fd = bm.schubert().frobenius(s1);
  const auto& alg = bm.schubert().invariant_generators(s2);

  for (std::size_t u = 0; u < fd.elements.size(); ++u)
    for (int i = 0; i < src.rank(); ++i) {
      hs.gens.emplace_back(u, i);
      hs.gdeg.push_back(generator_degree(fd, src, u, i));
      hs.col0.push_back(hs.ncols);
      hs.ncols += graded_dim(dst, hs.gdeg.back() + k);
    }
  auto gen_index = [&](std::size_t u, int i) { return u * src.rank() + i; };

  // Right action matrices of the algebra generators.
  std::vector<PolyMatrix> asrc, adst;
  for (auto& g : alg) {
    asrc.push_back(bm.right_matrix(src, g));
    adst.push_back(bm.right_matrix(dst, g));
  }
  // LHS terms: gen_j . g = sum c * gen_{j'}.
  std::vector<std::pair<std::size_t, std::size_t>> eq_blocks;  // (gen, alg index)
  std::vector<std::size_t> row0;
  std::size_t rows = 0;
  for (std::size_t j = 0; j < hs.gens.size(); ++j)
    for (std::size_t g = 0; g < alg.size(); ++g) {
      eq_blocks.emplace_back(j, g);
      row0.push_back(rows);
      rows += graded_dim(dst, hs.gdeg[j] + k + 2 * alg[g].degree());
    }
  SparseSystem sys{hs.ncols, bm.field(), {}};
  for (std::size_t e = 0; e < eq_blocks.size(); ++e) {
    auto [j, g] = eq_blocks[e];
    auto [u, i] = hs.gens[j];
    const int out_deg = hs.gdeg[j] + k + 2 * alg[g].degree();
    // LHS: sum over (u', l) of c * v_{(u', l)}.
    std::map<std::size_t, Polynomial> lhs;
    for (int l = 0; l < src.rank(); ++l) {
      const Polynomial& al = asrc[g][i][l];
      if (al.is_zero()) continue;
      auto c = bm.express(s1, fd.basis[u] * al);
      for (std::size_t u2 = 0; u2 < c.size(); ++u2)
        if (!c[u2].is_zero()) {
          auto it = lhs.find(gen_index(u2, l));
          if (it == lhs.end()) lhs.emplace(gen_index(u2, l), c[u2]);
          else it->second += c[u2];
        }
    }
    const CoordIndex ci(dst, out_deg);
    for (auto& [j2, c] : lhs) {
      if (c.is_zero()) continue;
      const int vdeg = hs.gdeg[j2] + k;
      std::size_t col = hs.col0[j2];
      for (int l2 = 0; l2 < dst.rank(); ++l2) {
        int kd;
        if (!poly_deg(vdeg - dst.degrees[l2], &kd)) continue;
        for (Monomial mo : MonomialBasis::get(bm.nvars(), kd).monomials()) ci.add(sys, row0[e], l2, c, mo, col++, false);
      }
    }
    // RHS: - v_j . g
    {
      const int vdeg = hs.gdeg[j] + k;
      std::size_t col = hs.col0[j];
      for (int l2 = 0; l2 < dst.rank(); ++l2) {
        int kd;
        if (!poly_deg(vdeg - dst.degrees[l2], &kd)) continue;
        for (Monomial mo : MonomialBasis::get(bm.nvars(), kd).monomials()) {
          for (int m2 = 0; m2 < dst.rank(); ++m2) ci.add(sys, row0[e], m2, adst[g][l2][m2], mo, col, true);
          ++col;
        }
      }
    }
  }
  return sys;
}

}  // namespace

std::vector<BimodMap> Bimod::hom_degree(const SingularObject& a, const SingularObject& b, int k) const {
  const RegularObject& src = a.base;
  const RegularObject& dst = b.base;
  const auto& fd = sc_.frobenius(a.s1);
  HomSystem hs;
  SparseSystem sys = left_system(*this, a, b, k, hs);
  std::vector<BimodMap> out;
  if (hs.ncols == 0) return out;
  const SubsetMask s1 = a.s1;
  Mat ker = kernel(sys.dense());
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    BimodMap f;
    f.s1 = s1;
    f.degree = k;
    f.values.assign(fd.elements.size(), std::vector<PolyVec>(src.rank()));
    for (std::size_t j = 0; j < hs.gens.size(); ++j) {
      auto [u, i] = hs.gens[j];
      const std::size_t dim = graded_dim(dst, hs.gdeg[j] + k);
      std::vector<Scalar> part(dim);
      for (std::size_t q = 0; q < dim; ++q) part[q] = ker.get(hs.col0[j] + q, c);
      f.values[u][i] = dim ? element_from_coords(dst, part, hs.gdeg[j] + k) : PolyVec(dst.rank(), Polynomial(nvars()));
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

// Maps parametrized by their values on the right R^{S2}-generators c_k d_w(p2) of the source;
// the equations impose left R^{S1}-linearity. Cheaper than the left presentation when W_{S2}
// is smaller than W_{S1}.
struct RightHom {
  RightBasis rb;
  std::vector<std::vector<std::vector<Polynomial>>> left;  // [g][k] right coordinates of g c_k
};

RightHom prepare_right(const Bimod& b, const RegularObject& src, SubsetMask s1) {
  RightHom rh;
  rh.rb = b.right_basis(src);
  for (auto& g : b.schubert().invariant_generators(s1)) {
    std::vector<std::vector<Polynomial>> per;
    for (std::size_t k = 0; k < rh.rb.elems.size(); ++k) {
      PolyVec x = rh.rb.elems[k];
      for (auto& p : x) p = p * g;
      per.push_back(b.right_coords(src, rh.rb, x, rh.rb.degrees[k] + 2 * g.degree()));
    }
    rh.left.push_back(std::move(per));
  }
  return rh;
}

long right_hom_dim(const Bimod& b, const SingularObject& a, const SingularObject& bo, int k, const RightHom& rh) {
  const RegularObject& dst = bo.base;
  const int n = b.nvars();
  const auto& fd2 = b.schubert().frobenius(a.s2);
  const auto& alg = b.schubert().invariant_generators(a.s1);
  const std::size_t nw = fd2.elements.size(), rk = rh.rb.elems.size();
  std::vector<int> gdeg;
  std::vector<std::size_t> col0;
  std::size_t ncols = 0;
  for (std::size_t c = 0; c < rk; ++c)
    for (std::size_t w = 0; w < nw; ++w) {
      gdeg.push_back(rh.rb.degrees[c] + 2 * fd2.basis[w].degree());
      col0.push_back(ncols);
      ncols += graded_dim(dst, gdeg.back() + k);
    }
  if (ncols == 0) return 0;
  std::map<Polynomial, PolyMatrix> rmats;
  auto rmat = [&](const Polynomial& r) -> const PolyMatrix& {
    auto it = rmats.find(r);
    if (it == rmats.end()) it = rmats.emplace(r, b.right_matrix(dst, r)).first;
    return it->second;
  };
  SparseSystem sys{ncols, b.field(), {}};
  std::size_t row = 0;
  for (std::size_t j = 0; j < gdeg.size(); ++j) {
    const std::size_t c = j / nw, w = j % nw;
    for (std::size_t g = 0; g < alg.size(); ++g) {
      const int out_deg = gdeg[j] + k + 2 * alg[g].degree();
      // sum over (l, w') of X_{(l, w')} r, with r from g c_c d_w(p2) = sum_l c_l L[l] d_w(p2)
      std::map<std::size_t, Polynomial> terms;
      for (std::size_t l = 0; l < rk; ++l) {
        const Polynomial& lc = rh.left[g][c][l];
        if (lc.is_zero()) continue;
        auto ex = b.express(a.s2, lc * fd2.basis[w]);
        for (std::size_t w2 = 0; w2 < nw; ++w2)
          if (!ex[w2].is_zero()) {
            auto [it, fresh] = terms.emplace(l * nw + w2, ex[w2]);
            if (!fresh) it->second += ex[w2];
          }
      }
      const CoordIndex ci(dst, out_deg);
      for (auto& [j2, r] : terms) {
        if (r.is_zero()) continue;
        const PolyMatrix& rm = rmat(r);
        std::size_t col = col0[j2];
        const int vdeg = gdeg[j2] + k;
        for (int l2 = 0; l2 < dst.rank(); ++l2) {
          int kd;
          if (!poly_deg(vdeg - dst.degrees[l2], &kd)) continue;
          for (Monomial mo : MonomialBasis::get(n, kd).monomials()) {
            for (int m2 = 0; m2 < dst.rank(); ++m2) ci.add(sys, row, m2, rm[l2][m2], mo, col, false);
            ++col;
          }
        }
      }
      // minus g X_j
      std::size_t col = col0[j];
      const int vdeg = gdeg[j] + k;
      for (int l2 = 0; l2 < dst.rank(); ++l2) {
        int kd;
        if (!poly_deg(vdeg - dst.degrees[l2], &kd)) continue;
        for (Monomial mo : MonomialBasis::get(n, kd).monomials()) ci.add(sys, row, l2, alg[g], mo, col++, true);
      }
      row += graded_dim(dst, out_deg);
    }
  }
  return static_cast<long>(ncols - rank(sys.dense()));
}

bool prefer_right(const Bimod& b, const SingularObject& a, const SingularObject& bo) {
  if (a.idem || bo.idem) return false;
  return b.group().parabolic(a.s2).elements.size() < b.group().parabolic(a.s1).elements.size();
}

}  // namespace

long Bimod::hom_dim(const SingularObject& a, const SingularObject& b, int k) const {
  if (prefer_right(*this, a, b)) return right_hom_dim(*this, a, b, k, prepare_right(*this, a.base, a.s1));
  if (!a.idem && !b.idem) {
    HomSystem hs;
    SparseSystem sys = left_system(*this, a, b, k, hs);
    return hs.ncols ? static_cast<long>(hs.ncols - rank(sys.dense())) : 0;
  }
  auto basis = hom_degree(a, b, k);
  if (basis.empty()) return 0;
  // Dimension of e_b Hom e_a: flatten the sandwiched maps on every generator degree.
  const auto& fd = sc_.frobenius(a.s1);
  int gmax = a.base.max_degree() + 2 * fd.longest.length();
  int gmin = a.base.min_degree();
  std::vector<std::vector<Scalar>> vecs(basis.size());
  for (int d = gmin; d <= gmax; ++d) {
    if (graded_dim(a.base, d) == 0) continue;
    Mat ea = a.idem ? idem_block(a, d) : identity_mat(graded_dim(a.base, d), field());
    Mat eb = b.idem ? idem_block(b, d + k) : identity_mat(graded_dim(b.base, d + k), field());
    for (std::size_t q = 0; q < basis.size(); ++q) {
      Mat m = eb * (materialize(a.base, b.base, basis[q], d) * ea);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) vecs[q].push_back(m.get(r, c));
    }
  }
  Mat all(vecs[0].size(), basis.size(), field());
  for (std::size_t q = 0; q < basis.size(); ++q)
    for (std::size_t r = 0; r < vecs[q].size(); ++r)
      if (!vecs[q][r].is_zero()) all.set(r, q, vecs[q][r]);
  return static_cast<long>(rank(all));
}

HomResult Bimod::hom(const SingularObject& a, const SingularObject& b, int lo, int hi, bool keep_basis) const {
  HomResult res;
  res.lo = lo;
  res.hi = hi;
  std::optional<RightHom> rh;
  if (!keep_basis && prefer_right(*this, a, b)) rh = prepare_right(*this, a.base, a.s1);
  for (int k = lo; k <= hi; ++k) {
    long dim;
    if (rh) {
      dim = right_hom_dim(*this, a, b, k, *rh);
    } else if (keep_basis && !a.idem && !b.idem) {
      auto basis = hom_degree(a, b, k);
      dim = static_cast<long>(basis.size());
      if (dim) res.basis[k] = std::move(basis);
    } else {
      dim = hom_dim(a, b, k);
    }
    if (dim) res.hilbert += Laurent::monomial(k, dim);
  }
  Laurent q = res.hilbert;
  const Laurent f = Laurent(1) - Laurent::monomial(2);
  for (int i = 0; i < nvars(); ++i) q = q * f;
  Laurent pz;
  for (auto& w : w_.parabolic(a.s1).elements) pz += Laurent::monomial(2 * w.length());
  q = (q * pz).restrict(lo, hi);
  res.stable = q.coeff(hi) == 0 && q.coeff(hi - 1) == 0;
  res.grk = q.bar();
  return res;
}

HomResult Bimod::hom(const SingularObject& a, const SingularObject& b) const {
  const auto& fd = sc_.frobenius(a.s1);
  const int gmax = a.base.max_degree() + 2 * fd.longest.length();
  const int lo = b.base.min_degree() - gmax;
  int hi = degree_bound_ > 0 ? degree_bound_ : 2 * (std::max(a.base.max_degree(), b.base.max_degree()) + w_.parabolic(w_.is_finite() ? w_.full_mask() : 0).longest.length()) + 4;
  for (int attempt = 0; attempt < 3; ++attempt, hi *= 2) {
    HomResult r = hom(a, b, lo, hi);
    if (r.stable) return r;
  }
  fail(ErrorCode::DegreeBoundTooSmall, "Hom graded rank did not stabilize up to degree " + std::to_string(hi));
}

// ---------------------------------------------------------------- pullback and convolution

SingularObject Bimod::pullback(const SingularObject& v, SubsetMask s1p, SubsetMask s2p) const {
  if ((s1p & ~v.s1) || (s2p & ~v.s2)) fail(ErrorCode::UsageError, "pull-back targets must be contained in the source subsets");
  if (s1p == v.s1 && s2p == v.s2) return v;
  const auto& f1 = sc_.frobenius(v.s1);
  const auto& f2 = sc_.frobenius(v.s2);
  const auto& fp = sc_.frobenius(s1p);
  sc_.frobenius(s2p);
  const RegularObject& n = v.base;
  SingularObject out;
  out.s1 = s1p;
  out.s2 = s2p;
  out.base = tensor(tensor(frobenius(v.s1), n), frobenius(v.s2));
  out.base.label = "pullback(" + n.label + ")";
  if (!v.idem && s1p == 0 && s2p == 0) return out;
  // Idempotent: unit projections on the outer factors, the given idempotent in the middle.
  // Basis element (u, i, w) is 1 (x) d_u(p1) b_i (x) d_w(p2) in R (x)_{R^S1} N (x)_{R^S2} R.
  const int r1 = static_cast<int>(f1.elements.size()), r2 = static_cast<int>(f2.elements.size()), rn = n.rank();
  const auto& fq = sc_.frobenius(s2p);
  const int topq = fq.index(fq.longest);
  const int rank = out.base.rank();
  // Left coordinates of 1 (x) x (x) d_w(p2).
  auto embed = [&](const PolyVec& x, int w, PolyVec& val) {
    for (int l = 0; l < rn; ++l) {
      if (x[l].is_zero()) continue;
      auto c = express(v.s1, x[l]);
      for (int u2 = 0; u2 < r1; ++u2)
        if (!c[u2].is_zero()) val[(u2 * rn + l) * r2 + w] += c[u2];
    }
  };
  BimodMap e;
  e.s1 = s1p;
  e.degree = 0;
  e.values.assign(fp.elements.size(), std::vector<PolyVec>(rank, PolyVec(rank, Polynomial(nvars()))));
  const int topp = fp.index(fp.longest);
  for (int u = 0; u < r1; ++u)
    for (int i = 0; i < rn; ++i) {
      PolyVec m(rn, Polynomial(nvars()));
      m[i] = f1.basis[u];
      if (v.idem) m = apply(n, n, *v.idem, m);
      for (int w = 0; w < r2; ++w) {
        Polynomial y = express(s2p, f2.basis[w])[topq];
        if (y.is_zero()) continue;
        PolyVec val(rank, Polynomial(nvars()));
        auto d = express(v.s2, y);
        for (int w2 = 0; w2 < r2; ++w2)
          if (!d[w2].is_zero()) embed(right_mul(n, m, d[w2]), w2, val);
        e.values[topp][(u * rn + i) * r2 + w] = std::move(val);
      }
    }
  out.idem = std::move(e);
  return out;
}

SingularObject Bimod::convolve(const SingularObject& a, const SingularObject& b, bool with_action) const {
  if (a.s2 != b.s1) fail(ErrorCode::MiddleMismatch, "middle subsets differ");
  const SubsetMask mid = a.s2;
  SingularObject out;
  out.s1 = a.s1;
  out.s2 = b.s2;
  const bool need_action = a.idem || b.idem;
  const bool act = need_action || (with_action && a.base.has_right_action() && b.base.has_right_action());
  RegularObject fm = frobenius(mid);
  out.base = tensor(tensor(a.base, fm, act), b.base, act);
  out.base.label = a.base.label + " *" + " " + b.base.label;
  if (!need_action) return out;
  const auto& f1 = sc_.frobenius(a.s1);
  const auto& fmid = sc_.frobenius(mid);
  const int ra = a.base.rank(), rm = static_cast<int>(fmid.elements.size()), rb = b.base.rank();
  BimodMap ea = a.idem ? *a.idem : identity_map(a.base, a.s1);
  BimodMap eb = b.idem ? *b.idem : identity_map(b.base, mid);
  BimodMap e;
  e.s1 = a.s1;
  e.degree = 0;
  e.values.assign(f1.elements.size(), std::vector<PolyVec>(out.base.rank(), PolyVec(out.base.rank(), Polynomial(nvars()))));
  for (std::size_t w = 0; w < f1.elements.size(); ++w)
    for (int i = 0; i < ra; ++i)
      for (int u = 0; u < rm; ++u)
        for (int j = 0; j < rb; ++j) {
          const int col = (i * rm + u) * rb + j;
          const PolyVec& h = ea.values[w][i];
          const PolyVec& kv = eb.values[u][j];
          PolyVec val(out.base.rank(), Polynomial(nvars()));
          for (int m = 0; m < rb; ++m) {
            if (kv[m].is_zero()) continue;
            auto c = express(mid, kv[m]);
            for (int u2 = 0; u2 < rm; ++u2) {
              if (c[u2].is_zero()) continue;
              PolyVec hc = right_mul(a.base, h, c[u2]);
              for (int q = 0; q < ra; ++q)
                if (!hc[q].is_zero()) val[(q * rm + u2) * rb + m] += hc[q];
            }
          }
          e.values[w][col] = std::move(val);
        }
  out.idem = std::move(e);
  return out;
}

}  // namespace soergel
