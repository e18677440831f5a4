#include <algorithm>
#include <functional>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"

namespace soergel {

namespace {

// Fraction-free determinant.
Polynomial bareiss_det(PolyMatrix m, int nvars, const Field& f) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial(nvars, f.one());
  Polynomial prev(nvars, f.one());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Polynomial(nvars);
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = t.is_zero() ? t : t.divide_exact(prev);
      }
    prev = m[k][k];
  }
  Polynomial d = m[n - 1][n - 1];
  return negate ? -d : d;
}

}  // namespace

namespace {

using Coords = std::vector<Scalar>;

// Degreewise search for a basis of a free module of rank r over R, given the ambient
// dimension per degree, multiplication of an element by a monomial, and unit vectors.
struct BasisSearch {
  std::function<std::size_t(int)> dim;
  std::function<Coords(const Coords&, int, Monomial)> mul;  // element of degree d times monomial
  int nvars = 0;
  Field field;

  std::vector<Coords> span_cols(const std::vector<std::pair<int, Coords>>& basis, int d) const {
    std::vector<Coords> out;
    for (auto& [bd, v] : basis) {
      if (d < bd || (d - bd) % 2) continue;
      for (Monomial mo : MonomialBasis::get(nvars, (d - bd) / 2).monomials()) out.push_back(mul(v, bd, mo));
    }
    return out;
  }

  static Mat as_matrix(const std::vector<Coords>& cols, std::size_t dim, const Field& f) {
    Mat a(dim, cols.size(), f);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t q = 0; q < dim; ++q)
        if (!cols[c][q].is_zero()) a.set(q, c, cols[c][q]);
    return a;
  }

  std::vector<std::pair<int, Coords>> run(int r, int lo, int hi) const {
    std::vector<std::pair<int, Coords>> basis;
    for (int d = lo; d <= hi && static_cast<int>(basis.size()) < r; ++d) {
      const std::size_t n = dim(d);
      if (!n) continue;
      auto cols = span_cols(basis, d);
      const std::size_t base = cols.size();
      for (std::size_t q = 0; q < n; ++q) {
        Coords e(n, field.zero());
        e[q] = field.one();
        cols.push_back(std::move(e));
      }
      for (auto piv : independent_columns(as_matrix(cols, n, field)))
        if (piv >= base) basis.emplace_back(d, cols[piv]);
    }
    if (static_cast<int>(basis.size()) != r) fail(ErrorCode::NotRightFree, "no basis of the expected rank");
    for (int d = lo; d <= hi + 2; ++d) {
      const std::size_t n = dim(d);
      auto cols = span_cols(basis, d);
      if (cols.size() != n) fail(ErrorCode::NotRightFree, "span has the wrong dimension in degree " + std::to_string(d));
      if (n && rank(as_matrix(cols, n, field)) != n) fail(ErrorCode::NotRightFree, "span is not a basis in degree " + std::to_string(d));
    }
    return basis;
  }

  // Coefficients of x (degree d) in the basis times monomials; returns per basis element the polynomial.
  std::vector<Polynomial> solve_in(const std::vector<std::pair<int, Coords>>& basis, const Coords& x, int d) const {
    std::vector<std::pair<std::size_t, Monomial>> idx;
    std::vector<Coords> cols;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      auto& [bd, v] = basis[k];
      if (d < bd || (d - bd) % 2) continue;
      for (Monomial mo : MonomialBasis::get(nvars, (d - bd) / 2).monomials()) {
        idx.emplace_back(k, mo);
        cols.push_back(mul(v, bd, mo));
      }
    }
    std::vector<Polynomial> out(basis.size(), Polynomial(nvars));
    if (cols.empty()) return out;
    auto sol = solve(as_matrix(cols, dim(d), field), x);
    if (!sol) fail(ErrorCode::NotRightFree, "element outside the span of the basis");
    for (std::size_t q = 0; q < idx.size(); ++q)
      if (!(*sol)[q].is_zero()) out[idx[q].first] += Polynomial::from_terms(nvars, {{idx[q].second, (*sol)[q]}});
    return out;
  }
};

Polynomial mono(int n, Monomial m, const Field& f) { return Polynomial::from_terms(n, {{m, f.one()}}); }

BasisSearch right_search(const Bimod& b, const RegularObject& m) {
  BasisSearch rs;
  rs.nvars = b.nvars();
  rs.field = b.field();
  rs.dim = [&m](int d) { return graded_dim(m, d); };
  rs.mul = [&b, &m](const Coords& v, int d, Monomial mo) {
    return element_coords(m, b.right_mul(m, element_from_coords(m, v, d), mono(b.nvars(), mo, b.field())), d + 2 * mono_degree(mo));
  };
  return rs;
}

int search_span(const RegularObject& m) {
  int len = 0;
  for (auto& x : m.weights) len = std::max(len, x.length());
  return m.max_degree() - m.min_degree() + 2 * len + 2;
}

std::vector<std::pair<int, Coords>> as_pairs(const RegularObject& m, const RightBasis& rb) {
  std::vector<std::pair<int, Coords>> out;
  for (std::size_t k = 0; k < rb.elems.size(); ++k) out.emplace_back(rb.degrees[k], element_coords(m, rb.elems[k], rb.degrees[k]));
  return out;
}

}  // namespace

RightBasis Bimod::right_basis(const RegularObject& m) const {
  if (!m.has_right_action()) fail(ErrorCode::NotRightFree, "object has no right action data");
  auto rs = right_search(*this, m);
  auto found = rs.run(m.rank(), m.min_degree(), m.min_degree() + search_span(m));
  RightBasis rb;
  for (auto& [d, v] : found) {
    rb.elems.push_back(element_from_coords(m, v, d));
    rb.degrees.push_back(d);
  }
  return rb;
}

std::vector<Polynomial> Bimod::right_coords(const RegularObject& m, const RightBasis& rb, const PolyVec& x, int d) const {
  return right_search(*this, m).solve_in(as_pairs(m, rb), element_coords(m, x, d), d);
}

RegularObject Bimod::dual(const RegularObject& m) const {
  // D(M) = Hom_{-R}(M, R) with (f phi g)(m) = phi(f m g): right-free on the dual of a right
  // basis {c_k}; a left basis is then found inside the right-coordinate model.
  const int r = m.rank();
  if (m.ncomp() != r) fail(ErrorCode::NotRightFree, "localization matrix is not square");
  const int span = search_span(m);
  RightBasis rbasis = right_basis(m);
  const std::vector<PolyVec>& cvec = rbasis.elems;
  const std::vector<int>& cdeg = rbasis.degrees;
  auto rs = right_search(*this, m);
  auto rb = as_pairs(m, rbasis);
  // Left multiplication by e_j in right coordinates: e_j c_k = sum_l c_l L_j[l][k].
  std::vector<PolyMatrix> lm(nvars(), PolyMatrix(r, PolyVec(r, Polynomial(nvars()))));
  for (int j = 0; j < nvars(); ++j)
    for (int k = 0; k < r; ++k) {
      PolyVec x = cvec[k];
      for (auto& p : x) p = p * Polynomial::var(nvars(), j, field().one());
      auto c = rs.solve_in(rb, element_coords(m, x, cdeg[k] + 2), cdeg[k] + 2);
      for (int l = 0; l < r; ++l) lm[j][l][k] = c[l];
    }
  // Right-coordinate model of D(M): phi <-> (phi(c_k))_k, c_k^* in degree -deg(c_k).
  RegularObject model;
  model.nvars = nvars();
  model.field = field();
  for (int d : cdeg) model.degrees.push_back(-d);
  auto left_mul_var = [&](const PolyVec& a, int j) {
    PolyVec out(r, Polynomial(nvars()));
    for (int l = 0; l < r; ++l) {
      if (a[l].is_zero()) continue;
      for (int k = 0; k < r; ++k)
        if (!lm[j][l][k].is_zero()) out[k] += a[l] * lm[j][l][k];
    }
    return out;
  };
  BasisSearch ls;
  ls.nvars = nvars();
  ls.field = field();
  ls.dim = [&](int d) { return graded_dim(model, d); };
  ls.mul = [&](const Coords& v, int d, Monomial mo) {
    PolyVec a = element_from_coords(model, v, d);
    for (int j = 0; j < nvars(); ++j)
      for (int e = mono_exp(mo, j); e > 0; --e) a = left_mul_var(a, j);
    return element_coords(model, a, d + 2 * mono_degree(mo));
  };
  auto lb = ls.run(r, model.min_degree(), model.min_degree() + span);

  // P[c][k] = x_c^{-1}(phi_c(c_k)) are the right coordinates of c_k on the weight vectors e_c.
  PolyMatrix p(r, PolyVec(r, Polynomial(nvars())));
  for (int c = 0; c < r; ++c) {
    Element xinv = w_.inv(m.weights[c]);
    for (int k = 0; k < r; ++k) {
      Polynomial v(nvars());
      for (int i = 0; i < r; ++i)
        if (!cvec[k][i].is_zero() && !m.loc[c][i].is_zero()) v += cvec[k][i] * m.loc[c][i];
      p[c][k] = act(xinv, v);
    }
  }
  if (bareiss_det(p, nvars(), field()).is_zero()) fail(ErrorCode::NotRightFree, "right coordinates are degenerate");
  // adj[k][c] = (-1)^{c+k} det(P without row c, column k); then e_c = sum_k c_k adj[k][c] / det.
  PolyMatrix adj(r, PolyVec(r, Polynomial(nvars())));
  for (int c = 0; c < r; ++c)
    for (int k = 0; k < r; ++k) {
      PolyMatrix minor;
      for (int i = 0; i < r; ++i) {
        if (i == c) continue;
        PolyVec row;
        for (int j = 0; j < r; ++j)
          if (j != k) row.push_back(p[i][j]);
        minor.push_back(std::move(row));
      }
      Polynomial cof = bareiss_det(minor, nvars(), field());
      adj[k][c] = (c + k) % 2 ? -cof : cof;
    }
  // Component c of D(M) has weight x_c with coordinate phi -> x_c(phi(e_c)), scaled by x_c(det).
  RegularObject d;
  d.nvars = nvars();
  d.field = field();
  d.loc.assign(r, PolyVec(r, Polynomial(nvars())));
  for (auto& [deg, v] : lb) d.degrees.push_back(deg);
  std::vector<PolyVec> dvec;
  for (auto& [deg, v] : lb) dvec.push_back(element_from_coords(model, v, deg));
  for (int c = 0; c < r; ++c) {
    d.weights.push_back(m.weights[c]);
    int offset = 0;
    bool have = false;
    for (int q = 0; q < r; ++q) {
      Polynomial val(nvars());
      for (int k = 0; k < r; ++k)
        if (!dvec[q][k].is_zero() && !adj[k][c].is_zero()) val += dvec[q][k] * adj[k][c];
      val = act(m.weights[c], val);
      d.loc[c][q] = val;
      if (!val.is_zero()) {
        int o = d.degrees[q] - 2 * val.degree();
        if (have && o != offset) fail(ErrorCode::NotRightFree, "dual localization is not homogeneous");
        offset = o;
        have = true;
      }
    }
    d.offsets.push_back(offset);
  }
  compute_right_action(d);
  d.label = "D(" + m.label + ")";
  return d;
}

SingularObject Bimod::sing_dual(const SingularObject& v) const {
  if (v.idem) fail(ErrorCode::Unsupported, "duals of objects cut out by an idempotent are not implemented");
  SingularObject out = v;
  out.base = shift(dual(v.base), 2 * w_.parabolic(v.s2).longest.length());
  return out;
}

}  // namespace soergel
