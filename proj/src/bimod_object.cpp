#include <algorithm>
#include <random>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"

namespace soergel {

namespace {

Polynomial mono_poly(int n, Monomial m, const Scalar& c) { return Polynomial::from_terms(n, {{m, c}}); }

bool valid_poly_degree(int graded, int* k) {
  if (graded < 0 || graded % 2 != 0) return false;
  *k = graded / 2;
  return true;
}

PolyMatrix mat_mul(const PolyMatrix& a, const PolyMatrix& b, int n) {
  const std::size_t r = a.size(), m = b.size(), c = m ? b[0].size() : 0;
  PolyMatrix out(r, PolyVec(c, Polynomial(n)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

}  // namespace

int RegularObject::max_degree() const { return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end()); }
int RegularObject::min_degree() const { return degrees.empty() ? 0 : *std::min_element(degrees.begin(), degrees.end()); }

std::size_t graded_dim(const RegularObject& m, int d) {
  std::size_t n = 0;
  for (int di : m.degrees) {
    int k;
    if (valid_poly_degree(d - di, &k)) n += poly_dim(m.nvars, k);
  }
  return n;
}

std::vector<Scalar> element_coords(const RegularObject& m, const PolyVec& v, int d) {
  std::vector<Scalar> out;
  out.reserve(graded_dim(m, d));
  for (int i = 0; i < m.rank(); ++i) {
    int k;
    if (!valid_poly_degree(d - m.degrees[i], &k)) {
      if (!v[i].is_zero()) fail(ErrorCode::Unsupported, "element is not homogeneous of the requested degree");
      continue;
    }
    auto c = coords(v[i], k, m.field);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

PolyVec element_from_coords(const RegularObject& m, const std::vector<Scalar>& c, int d) {
  PolyVec out(m.rank(), Polynomial(m.nvars));
  std::size_t pos = 0;
  for (int i = 0; i < m.rank(); ++i) {
    int k;
    if (!valid_poly_degree(d - m.degrees[i], &k)) continue;
    std::size_t dim = poly_dim(m.nvars, k);
    std::vector<Scalar> part(c.begin() + pos, c.begin() + pos + dim);
    out[i] = from_coords(m.nvars, k, part);
    pos += dim;
  }
  return out;
}

Bimod::Bimod(const Realization& r, const CoxeterGroup& w, const Schubert& sc, const Hecke& h, std::uint64_t seed)
    : r_(r), w_(w), sc_(sc), h_(h), seed_(seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < r.dim; ++i) {
    if (r.field.p) point_.push_back(Scalar::modp(r.field.p, 1 + rng() % (r.field.p - 1)));
    else point_.push_back(Scalar(static_cast<long>(1 + rng() % 100003)));
  }
}

Scalar Bimod::eval(const Polynomial& f) const {
  Scalar out = field().zero();
  for (auto& [m, c] : f.terms()) {
    Scalar t = c;
    for (int i = 0; i < nvars(); ++i)
      for (int e = mono_exp(m, i); e > 0; --e) t *= point_[i];
    out += t;
  }
  return out;
}

Polynomial Bimod::act(const Element& w, const Polynomial& f) const {
  if (w.is_identity() || f.is_zero()) return f;
  auto key = std::make_pair(w, f);
  auto it = act_cache_.find(key);
  if (it != act_cache_.end()) return it->second;
  Polynomial g = sc_.act(w, f);
  act_cache_.emplace(std::move(key), g);
  return g;
}

const std::vector<Polynomial>& Bimod::express_mono(SubsetMask s, Monomial m) const {
  auto key = std::make_pair(s, m);
  auto it = express_cache_.find(key);
  if (it != express_cache_.end()) return it->second;
  auto c = sc_.express(s, mono_poly(nvars(), m, field().one()));
  return express_cache_.emplace(key, std::move(c)).first->second;
}

std::vector<Polynomial> Bimod::express(SubsetMask s, const Polynomial& f) const {
  const auto& fd = sc_.frobenius(s);
  std::vector<Polynomial> out(fd.elements.size(), Polynomial(nvars()));
  for (auto& [m, c] : f.terms()) {
    const auto& e = express_mono(s, m);
    for (std::size_t u = 0; u < e.size(); ++u)
      if (!e[u].is_zero()) out[u] += e[u] * c;
  }
  return out;
}

// ---------------------------------------------------------------- construction

RegularObject Bimod::unit() const {
  RegularObject m;
  m.nvars = nvars();
  m.field = field();
  m.degrees = {0};
  m.weights = {w_.identity()};
  m.offsets = {0};
  m.loc = {{Polynomial(nvars(), field().one())}};
  for (int k = 0; k < nvars(); ++k) m.right.push_back({{r_.variable(k)}});
  m.label = "R";
  return m;
}

RegularObject Bimod::shift(const RegularObject& m, int k) const {
  // M(k) lives in degrees lowered by k.
  RegularObject out = m;
  for (auto& d : out.degrees) d -= k;
  for (auto& o : out.offsets) o -= k;
  if (k) out.label = "(" + m.label + ")(" + std::to_string(k) + ")";
  return out;
}

RegularObject Bimod::dsum(const RegularObject& a, const RegularObject& b) const {
  RegularObject m;
  m.nvars = nvars();
  m.field = field();
  m.degrees = a.degrees;
  m.degrees.insert(m.degrees.end(), b.degrees.begin(), b.degrees.end());
  m.weights = a.weights;
  m.weights.insert(m.weights.end(), b.weights.begin(), b.weights.end());
  m.offsets = a.offsets;
  m.offsets.insert(m.offsets.end(), b.offsets.begin(), b.offsets.end());
  const int ra = a.rank(), rb = b.rank();
  for (auto& row : a.loc) {
    PolyVec r = row;
    r.resize(ra + rb, Polynomial(nvars()));
    m.loc.push_back(std::move(r));
  }
  for (auto& row : b.loc) {
    PolyVec r(ra, Polynomial(nvars()));
    r.insert(r.end(), row.begin(), row.end());
    m.loc.push_back(std::move(r));
  }
  if (a.has_right_action() && b.has_right_action()) {
    for (int k = 0; k < nvars(); ++k) {
      PolyMatrix mk(ra + rb, PolyVec(ra + rb, Polynomial(nvars())));
      for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j) mk[i][j] = a.right[k][i][j];
      for (int i = 0; i < rb; ++i)
        for (int j = 0; j < rb; ++j) mk[ra + i][ra + j] = b.right[k][i][j];
      m.right.push_back(std::move(mk));
    }
  }
  m.label = a.label + " + " + b.label;
  return m;
}

RegularObject Bimod::frobenius(SubsetMask s, bool f_basis) const {
  const auto& fd = sc_.frobenius(s);
  const int n = static_cast<int>(fd.elements.size());
  const int top = fd.longest.length();
  RegularObject m;
  m.nvars = nvars();
  m.field = field();
  m.weights = fd.elements;
  m.offsets.assign(n, 0);
  m.loc.assign(n, PolyVec(n, Polynomial(nvars())));
  for (int u = 0; u < n; ++u) m.degrees.push_back(2 * (top - fd.elements[u].length()));
  if (!f_basis) {
    for (int x = 0; x < n; ++x)
      for (int u = 0; u < n; ++u) m.loc[x][u] = act(fd.elements[x], fd.basis[u]);
    for (int k = 0; k < nvars(); ++k) {
      PolyMatrix a(n, PolyVec(n, Polynomial(nvars())));
      for (int u = 0; u < n; ++u) a[u] = express(s, fd.basis[u] * r_.variable(k));
      m.right.push_back(std::move(a));
    }
  } else {
    const auto& fe = sc_.f_elements(s);
    for (int w = 0; w < n; ++w) m.degrees[w] = 2 * (top - fd.elements[w].length());
    for (int x = 0; x < n; ++x)
      for (int w = 0; w < n; ++w) m.loc[x][w] = sc_.phi(s, fd.elements[x], fe.basis[w]);
    compute_right_action(m);
  }
  auto names = w_.subset_names(s);
  std::string lab;
  for (auto& g : names) lab += (lab.empty() ? "" : ",") + g;
  m.label = "R(x)_{" + lab + "}R";
  return m;
}

RegularObject Bimod::bs(const std::vector<Gen>& word) const {
  RegularObject m = unit();
  for (Gen g : word) m = tensor(m, frobenius(SubsetMask{1} << g));
  std::string lab = "BS(";
  for (std::size_t i = 0; i < word.size(); ++i) lab += (i ? "," : "") + w_.data().generators[word[i]];
  m.label = lab + ")";
  return m;
}

RegularObject Bimod::tensor(const RegularObject& a, const RegularObject& b, bool with_action) const {
  RegularObject m;
  m.nvars = nvars();
  m.field = field();
  const int ra = a.rank(), rb = b.rank();
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rb; ++j) m.degrees.push_back(a.degrees[i] + b.degrees[j]);
  // Twisted localization rows of b, shared by components of a with the same weight.
  std::map<Element, PolyMatrix> twisted;
  for (auto& x : a.weights) {
    if (twisted.count(x)) continue;
    PolyMatrix t(b.ncomp(), PolyVec(rb, Polynomial(nvars())));
    for (int c = 0; c < b.ncomp(); ++c)
      for (int j = 0; j < rb; ++j) t[c][j] = act(x, b.loc[c][j]);
    twisted.emplace(x, std::move(t));
  }
  for (int c = 0; c < a.ncomp(); ++c) {
    const auto& t = twisted.at(a.weights[c]);
    for (int c2 = 0; c2 < b.ncomp(); ++c2) {
      m.weights.push_back(w_.mul(a.weights[c], b.weights[c2]));
      m.offsets.push_back(a.offsets[c] + b.offsets[c2]);
      PolyVec row(ra * rb, Polynomial(nvars()));
      for (int i = 0; i < ra; ++i) {
        if (a.loc[c][i].is_zero()) continue;
        for (int j = 0; j < rb; ++j)
          if (!t[c2][j].is_zero()) row[i * rb + j] = a.loc[c][i] * t[c2][j];
      }
      m.loc.push_back(std::move(row));
    }
  }
  if (with_action && a.has_right_action() && b.has_right_action()) {
    // (b_i (x) b'_j) e_k = sum_l (b_i . A'_k[j][l]) (x) b'_l
    for (int k = 0; k < nvars(); ++k) {
      PolyMatrix mk(ra * rb, PolyVec(ra * rb, Polynomial(nvars())));
      for (int j = 0; j < rb; ++j)
        for (int l = 0; l < rb; ++l) {
          const Polynomial& f = b.right[k][j][l];
          if (f.is_zero()) continue;
          PolyMatrix af = right_matrix(a, f);
          for (int i = 0; i < ra; ++i)
            for (int q = 0; q < ra; ++q)
              if (!af[i][q].is_zero()) mk[i * rb + j][q * rb + l] += af[i][q];
        }
      m.right.push_back(std::move(mk));
    }
  } else if (with_action) {
    compute_right_action(m);
  }
  m.label = a.label + "(x)" + b.label;
  return m;
}

void Bimod::compute_right_action(RegularObject& m) const {
  const int r = m.rank();
  m.right.clear();
  m.right_cache.reset();
  std::vector<std::vector<Polynomial>> twisted_var(m.ncomp());
  for (int c = 0; c < m.ncomp(); ++c)
    for (int k = 0; k < nvars(); ++k) twisted_var[c].push_back(act(m.weights[c], r_.variable(k)));
  for (int k = 0; k < nvars(); ++k) {
    PolyMatrix a(r, PolyVec(r, Polynomial(nvars())));
    for (int i = 0; i < r; ++i) {
      const int target = m.degrees[i] + 2;
      // unknowns: coefficients of A[i][j] in poly degree (target - d_j)/2
      std::vector<std::pair<int, Monomial>> unk;
      for (int j = 0; j < r; ++j) {
        int kd;
        if (!valid_poly_degree(target - m.degrees[j], &kd)) continue;
        for (Monomial mo : MonomialBasis::get(nvars(), kd).monomials()) unk.emplace_back(j, mo);
      }
      std::vector<std::pair<int, int>> blocks;  // (component, poly degree)
      std::size_t rows = 0;
      for (int c = 0; c < m.ncomp(); ++c) {
        int kd;
        if (!valid_poly_degree(target - m.offsets[c], &kd)) continue;
        blocks.emplace_back(c, kd);
        rows += poly_dim(nvars(), kd);
      }
      Mat sys(rows, unk.size(), field());
      std::vector<Scalar> rhs(rows, field().zero());
      std::size_t row0 = 0;
      for (auto [c, kd] : blocks) {
        for (std::size_t u = 0; u < unk.size(); ++u) {
          const auto& e = m.loc[c][unk[u].first];
          if (e.is_zero()) continue;
          auto cc = coords(e * mono_poly(nvars(), unk[u].second, field().one()), kd, field());
          for (std::size_t q = 0; q < cc.size(); ++q)
            if (!cc[q].is_zero()) sys.set(row0 + q, u, cc[q]);
        }
        auto cr = coords(m.loc[c][i] * twisted_var[c][k], kd, field());
        for (std::size_t q = 0; q < cr.size(); ++q) rhs[row0 + q] = cr[q];
        row0 += poly_dim(nvars(), kd);
      }
      auto sol = solve(sys, rhs);
      if (!sol) fail(ErrorCode::Unsupported, "object is not closed under the right action");
      for (std::size_t u = 0; u < unk.size(); ++u)
        if (!(*sol)[u].is_zero()) a[i][unk[u].first] += mono_poly(nvars(), unk[u].second, (*sol)[u]);
    }
    m.right.push_back(std::move(a));
  }
}

bool Bimod::check_weights(const RegularObject& m) const {
  if (!m.has_right_action()) return false;
  for (int k = 0; k < nvars(); ++k)
    for (int c = 0; c < m.ncomp(); ++c) {
      Polynomial xv = act(m.weights[c], r_.variable(k));
      for (int i = 0; i < m.rank(); ++i) {
        Polynomial lhs(nvars());
        for (int j = 0; j < m.rank(); ++j)
          if (!m.right[k][i][j].is_zero() && !m.loc[c][j].is_zero()) lhs += m.right[k][i][j] * m.loc[c][j];
        if (lhs != m.loc[c][i] * xv) return false;
      }
    }
  return true;
}

const PolyMatrix& Bimod::right_matrix(const RegularObject& m, Monomial mono) const {
  if (!m.has_right_action()) fail(ErrorCode::Unsupported, "object has no right action data");
  if (!m.right_cache) m.right_cache = std::make_shared<std::map<Monomial, PolyMatrix>>();
  auto& cache = *m.right_cache;
  auto it = cache.find(mono);
  if (it != cache.end()) return it->second;
  const int r = m.rank();
  PolyMatrix out;
  if (mono == 0) {
    out.assign(r, PolyVec(r, Polynomial(nvars())));
    for (int i = 0; i < r; ++i) out[i][i] = Polynomial(nvars(), field().one());
  } else {
    int k = 0;
    while (mono_exp(mono, k) == 0) ++k;
    out = mat_mul(right_matrix(m, mono - mono_var(k)), m.right[k], nvars());
  }
  return cache.emplace(mono, std::move(out)).first->second;
}

PolyMatrix Bimod::right_matrix(const RegularObject& m, const Polynomial& f) const {
  const int r = m.rank();
  PolyMatrix out(r, PolyVec(r, Polynomial(nvars())));
  for (auto& [mono, c] : f.terms()) {
    const auto& a = right_matrix(m, mono);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (!a[i][j].is_zero()) out[i][j] += a[i][j] * c;
  }
  return out;
}

PolyVec Bimod::right_mul(const RegularObject& m, const PolyVec& v, const Polynomial& f) const {
  const int r = m.rank();
  PolyVec out(r, Polynomial(nvars()));
  for (auto& [mono, c] : f.terms()) {
    const auto& a = right_matrix(m, mono);
    for (int i = 0; i < r; ++i) {
      if (v[i].is_zero()) continue;
      Polynomial vi = v[i] * c;
      for (int j = 0; j < r; ++j)
        if (!a[i][j].is_zero()) out[j] += vi * a[i][j];
    }
  }
  return out;
}

}  // namespace soergel
