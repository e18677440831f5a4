#include "soergel/schubert.hpp"

#include <algorithm>
#include <functional>

#include "soergel/errors.hpp"

namespace soergel {

// ---------------------------------------------------------------- RationalFunction

namespace {

Polynomial normalized_linear(const Polynomial& lin, Scalar* scale) {
  *scale = lin.leading_coeff();
  return lin * scale->inv();
}

}  // namespace

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0 && num_.divisible_by(it->first)) {
      num_ = num_.divide_linear(it->first);
      --it->second;
    }
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

Polynomial RationalFunction::den(int nvars, const Field& f) const {
  Polynomial d(nvars, f.one());
  for (auto& [lin, m] : den_)
    for (int i = 0; i < m; ++i) d = d * lin;
  return d;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::map<Polynomial, int> common = den_;
  for (auto& [lin, m] : o.den_) common[lin] = std::max(common[lin], m);
  auto lift = [&](const RationalFunction& r) {
    Polynomial n = r.num_;
    for (auto& [lin, m] : common) {
      auto it = r.den_.find(lin);
      int have = it == r.den_.end() ? 0 : it->second;
      for (int i = have; i < m; ++i) n = n * lin;
    }
    return n;
  };
  Polynomial n = lift(*this) + lift(o);
  num_ = n;
  den_ = common;
  reduce();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  RationalFunction neg = o;
  neg.num_ = -neg.num_;
  return *this += neg;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  RationalFunction r;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_;
  for (auto& [lin, m] : b.den_) r.den_[lin] += m;
  r.reduce();
  return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) { return (a - b).is_zero(); }

RationalFunction RationalFunction::divided_by_linear(const Polynomial& lin) const {
  if (lin.is_zero() || lin.degree() != 1) fail(ErrorCode::InexactDivision, "division by a non-linear form");
  Scalar c;
  Polynomial n = normalized_linear(lin, &c);
  RationalFunction r = *this;
  r.num_ = r.num_ * c.inv();
  r.den_[n] += 1;
  r.reduce();
  return r;
}

RationalFunction RationalFunction::divided_by_factored(const Scalar& c, const std::vector<Polynomial>& linear) const {
  RationalFunction r = *this;
  r.num_ = r.num_ * c.inv();
  for (auto& l : linear) r = r.divided_by_linear(l);
  return r;
}

std::string RationalFunction::str() const {
  if (den_.empty()) return num_.str();
  std::string d;
  for (auto& [lin, m] : den_) {
    d += "(" + lin.str() + ")";
    if (m > 1) d += "^" + std::to_string(m);
  }
  return "(" + num_.str() + ")/" + d;
}

// ---------------------------------------------------------------- Demazure calculus

Polynomial Schubert::act(const Element& w, const Polynomial& f) const {
  Polynomial g = f;
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) g = act_gen(*it, g);
  return g;
}

Polynomial Schubert::demazure(int s, const Polynomial& f) const {
  Polynomial d = f - act_gen(s, f);
  if (d.is_zero()) return Polynomial(nvars());
  return d.divide_linear(r_.root(s));
}

Polynomial Schubert::demazure_word(const std::vector<Gen>& word, const Polynomial& f) const {
  Polynomial g = f;
  for (auto it = word.rbegin(); it != word.rend() && !g.is_zero(); ++it) g = demazure(*it, g);
  return g;
}

std::optional<Polynomial> Schubert::find_p(SubsetMask s) const {
  auto it = p_cache_.find(s);
  if (it != p_cache_.end()) return it->second;
  const auto& par = w_.parabolic(s);
  const int k = par.longest.length();
  std::optional<Polynomial> res;
  for (Monomial m : MonomialBasis::get(nvars(), k).monomials()) {
    Polynomial mono = Polynomial::from_terms(nvars(), {{m, field().one()}});
    Polynomial c = demazure_element(par.longest, mono);
    if (!c.is_zero()) {
      res = mono * c.leading_coeff().inv();
      break;
    }
  }
  p_cache_.emplace(s, res);
  return res;
}

int FrobeniusData::index(const Element& w) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), w);
  if (it == elements.end() || !(*it == w)) return -1;
  return static_cast<int>(it - elements.begin());
}

const FrobeniusData& Schubert::frobenius(SubsetMask s) const {
  auto it = frob_cache_.find(s);
  if (it != frob_cache_.end()) return *it->second;
  auto p = find_p(s);
  if (!p) fail(ErrorCode::AssumptionFailed, "no p with unit Demazure image exists for this subset over " + field().name());
  const auto& par = w_.parabolic(s);
  auto fd = std::make_unique<FrobeniusData>();
  fd->mask = s;
  fd->p = *p;
  fd->longest = par.longest;
  fd->elements = par.elements;
  for (auto& w : fd->elements) fd->basis.push_back(demazure_element(w, *p));
  const int top = par.longest.length();
  for (auto& y : fd->elements) {
    const int k = y.length();
    const auto& monos = MonomialBasis::get(nvars(), k).monomials();
    // Rows: for each x, the coordinates of d_{w_S}(d_x(p) m) in degree k - l(x).
    std::vector<std::pair<std::size_t, int>> blocks;  // (x index, output degree)
    std::size_t rows = 0;
    for (std::size_t xi = 0; xi < fd->elements.size(); ++xi) {
      int d = k - fd->elements[xi].length();
      if (d < 0) continue;
      blocks.emplace_back(xi, d);
      rows += poly_dim(nvars(), d);
    }
    Mat a(rows, monos.size(), field());
    std::vector<Scalar> rhs(rows, field().zero());
    std::size_t row0 = 0;
    for (auto& [xi, d] : blocks) {
      for (std::size_t j = 0; j < monos.size(); ++j) {
        Polynomial m = Polynomial::from_terms(nvars(), {{monos[j], field().one()}});
        Polynomial t = demazure_element(fd->longest, fd->basis[xi] * m);
        auto c = coords(t, d, field());
        for (std::size_t r = 0; r < c.size(); ++r)
          if (!c[r].is_zero()) a.set(row0 + r, j, c[r]);
      }
      if (fd->elements[xi] == y) rhs[row0] = field().one();
      row0 += poly_dim(nvars(), d);
    }
    auto sol = solve(a, rhs);
    if (!sol) fail(ErrorCode::SingularTransition, "dual basis element q_" + w_.name(y) + " does not exist");
    fd->dual.push_back(from_coords(nvars(), k, *sol));
  }
  (void)top;
  return *frob_cache_.emplace(s, std::move(fd)).first->second;
}

Polynomial Schubert::trace(SubsetMask s, const Polynomial& f) const {
  return demazure_element(w_.parabolic(s).longest, f);
}

std::vector<Polynomial> Schubert::express(SubsetMask s, const Polynomial& f) const {
  const auto& fd = frobenius(s);
  std::vector<Polynomial> out;
  out.reserve(fd.dual.size());
  for (auto& q : fd.dual) out.push_back(trace(s, f * q));
  return out;
}

const std::vector<Polynomial>& Schubert::invariant_basis(SubsetMask s, int k) const {
  auto key = std::make_pair(s, k);
  auto it = inv_cache_.find(key);
  if (it != inv_cache_.end()) return it->second;
  const auto& monos = MonomialBasis::get(nvars(), k).monomials();
  std::vector<int> gens;
  for (int g = 0; g < w_.rank(); ++g)
    if (s >> g & 1) gens.push_back(g);
  std::vector<Polynomial> out;
  if (gens.empty()) {
    for (Monomial m : monos) out.push_back(Polynomial::from_terms(nvars(), {{m, field().one()}}));
  } else {
    const std::size_t dim = monos.size();
    Mat a(dim * gens.size(), dim, field());
    for (std::size_t j = 0; j < dim; ++j) {
      Polynomial m = Polynomial::from_terms(nvars(), {{monos[j], field().one()}});
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        auto c = coords(act_gen(gens[gi], m) - m, k, field());
        for (std::size_t r = 0; r < dim; ++r)
          if (!c[r].is_zero()) a.set(gi * dim + r, j, c[r]);
      }
    }
    Mat ker = kernel(a);
    for (std::size_t c = 0; c < ker.cols(); ++c) out.push_back(from_coords(nvars(), k, ker.column(c)));
  }
  return inv_cache_.emplace(key, std::move(out)).first->second;
}

const std::vector<Polynomial>& Schubert::invariant_generators(SubsetMask s) const {
  auto it = gen_cache_.find(s);
  if (it != gen_cache_.end()) return it->second;
  std::vector<Polynomial> gens;
  const int maxdeg = std::max<int>(1, static_cast<int>(w_.parabolic(s).order));
  for (int k = 1; k <= maxdeg; ++k) {
    const auto& inv = invariant_basis(s, k);
    if (inv.empty()) continue;
    // Products of earlier generators of total degree k.
    std::vector<Polynomial> prods;
    std::function<void(std::size_t, int, Polynomial)> rec = [&](std::size_t start, int remaining, Polynomial acc) {
      if (remaining == 0) {
        prods.push_back(acc);
        return;
      }
      for (std::size_t i = start; i < gens.size(); ++i) {
        int d = gens[i].degree();
        if (d <= remaining) rec(i, remaining - d, acc * gens[i]);
      }
    };
    rec(0, k, Polynomial(nvars(), field().one()));
    const std::size_t dim = poly_dim(nvars(), k);
    Mat a(dim, prods.size() + inv.size(), field());
    for (std::size_t j = 0; j < prods.size(); ++j) {
      auto c = coords(prods[j], k, field());
      for (std::size_t r = 0; r < dim; ++r)
        if (!c[r].is_zero()) a.set(r, j, c[r]);
    }
    for (std::size_t j = 0; j < inv.size(); ++j) {
      auto c = coords(inv[j], k, field());
      for (std::size_t r = 0; r < dim; ++r)
        if (!c[r].is_zero()) a.set(r, prods.size() + j, c[r]);
    }
    for (std::size_t piv : independent_columns(a))
      if (piv >= prods.size()) gens.push_back(inv[piv - prods.size()]);
  }
  return gen_cache_.emplace(s, std::move(gens)).first->second;
}

std::vector<Polynomial> Schubert::parabolic_roots(SubsetMask s) const {
  const auto& par = w_.parabolic(s);
  std::vector<Polynomial> out;
  for (auto& t : w_.reflections_up_to(par.longest.length(), &r_)) {
    if (!w_.in_parabolic(t.element, s)) continue;
    Polynomial p(nvars());
    for (int i = 0; i < nvars(); ++i) p += Polynomial::var(nvars(), i, t.root[i]);
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------- R (x)_{R^S} R

Polynomial Schubert::phi(SubsetMask s, const Element& x, const TensorElt& f) const {
  const auto& fd = frobenius(s);
  Polynomial out(nvars());
  for (std::size_t u = 0; u < fd.basis.size(); ++u)
    if (!f.coeffs[u].is_zero()) out += f.coeffs[u] * act(x, fd.basis[u]);
  return out;
}

TensorElt Schubert::tensor_pure(SubsetMask s, const Polynomial& left, const Polynomial& right) const {
  TensorElt t;
  for (auto& c : express(s, right)) t.coeffs.push_back(left * c);
  return t;
}

namespace {

// sum_u a_u (x) g_u where each g_u is re-expressed in the Demazure basis.
TensorElt reassemble(const Schubert& sc, SubsetMask s, const TensorElt& f, const std::function<Polynomial(const Polynomial&)>& op) {
  const auto& fd = sc.frobenius(s);
  TensorElt out;
  out.coeffs.assign(fd.basis.size(), Polynomial(sc.nvars()));
  for (std::size_t u = 0; u < fd.basis.size(); ++u) {
    if (f.coeffs[u].is_zero()) continue;
    auto c = sc.express(s, op(fd.basis[u]));
    for (std::size_t v = 0; v < c.size(); ++v)
      if (!c[v].is_zero()) out.coeffs[v] += f.coeffs[u] * c[v];
  }
  return out;
}

}  // namespace

TensorElt Schubert::right_mul(SubsetMask s, const TensorElt& f, const Polynomial& g) const {
  return reassemble(*this, s, f, [&](const Polynomial& b) { return b * g; });
}

TensorElt Schubert::left_mul(const TensorElt& f, const Polynomial& g) const {
  TensorElt out;
  for (auto& c : f.coeffs) out.coeffs.push_back(c * g);
  return out;
}

TensorElt Schubert::right_demazure(SubsetMask s, int gen, const TensorElt& f) const {
  return reassemble(*this, s, f, [&](const Polynomial& b) { return demazure(gen, b); });
}

TensorElt Schubert::right_twist(SubsetMask s, const Element& y, const TensorElt& f) const {
  return reassemble(*this, s, f, [&](const Polynomial& b) { return act(y, b); });
}

const FElements& Schubert::f_elements(SubsetMask s) const {
  auto it = fel_cache_.find(s);
  if (it != fel_cache_.end()) return *it->second;
  const auto& fd = frobenius(s);
  const int top = fd.longest.length();
  const std::size_t n = fd.elements.size();
  // Unknown coefficients of a_u (degree l(u)); equations phi_x(F) = 0 for x != w_S.
  std::vector<std::pair<std::size_t, Monomial>> unknowns;
  for (std::size_t u = 0; u < n; ++u)
    for (Monomial m : MonomialBasis::get(nvars(), fd.elements[u].length()).monomials()) unknowns.emplace_back(u, m);
  const std::size_t dim = poly_dim(nvars(), top);
  Mat a((n - 1) * dim, unknowns.size(), field());
  std::vector<std::vector<Polynomial>> twisted(n);  // twisted[x][u] = x(d_u p)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t u = 0; u < n; ++u) twisted[x].push_back(act(fd.elements[x], fd.basis[u]));
  std::size_t block = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (fd.elements[x] == fd.longest) continue;
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      auto [u, m] = unknowns[j];
      Polynomial t = Polynomial::from_terms(nvars(), {{m, field().one()}}) * twisted[x][u];
      auto c = coords(t, top, field());
      for (std::size_t r = 0; r < dim; ++r)
        if (!c[r].is_zero()) a.set(block * dim + r, j, c[r]);
    }
    ++block;
  }
  Mat ker = kernel(a);
  if (ker.cols() != 1)
    fail(ErrorCode::AssumptionFailed, "elements supported on w_S do not form a line (" + std::to_string(ker.cols()) + ")");
  TensorElt ftop;
  ftop.coeffs.assign(n, Polynomial(nvars()));
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    Scalar c = ker.get(j, 0);
    if (!c.is_zero()) ftop.coeffs[unknowns[j].first] += Polynomial::from_terms(nvars(), {{unknowns[j].second, c}});
  }
  auto fe = std::make_unique<FElements>();
  fe->roots = parabolic_roots(s);
  fe->root_product = Polynomial(nvars(), field().one());
  for (auto& r : fe->roots) fe->root_product = fe->root_product * r;
  Polynomial ph = phi(s, fd.longest, ftop);
  Polynomial q = ph.divide_exact(fe->root_product);
  if (q.degree() != 0) fail(ErrorCode::AssumptionFailed, "top F-element is not a multiple of the root product");
  Scalar scale = q.leading_coeff().inv();
  for (auto& c : ftop.coeffs) c = c * scale;
  for (std::size_t w = 0; w < n; ++w) {
    Element y = w_.mul(w_.inv(fd.elements[w]), fd.longest);
    fe->f.push_back(right_twist(s, y, ftop));
    TensorElt b = ftop;
    const auto& word = fd.elements[w].word;
    for (auto l = word.rbegin(); l != word.rend(); ++l) b = right_demazure(s, *l, b);
    fe->basis.push_back(std::move(b));
  }
  return *fel_cache_.emplace(s, std::move(fe)).first->second;
}

namespace {

// Writes p = c * prod(linear factors) using the candidate roots; nullopt if impossible.
std::optional<std::pair<Scalar, std::vector<Polynomial>>> factor_over(const Polynomial& p, const std::vector<Polynomial>& roots) {
  if (p.is_zero()) return std::nullopt;
  Polynomial rest = p;
  std::vector<Polynomial> found;
  bool progress = true;
  while (rest.degree() > 0 && progress) {
    progress = false;
    for (auto& r : roots)
      if (rest.divisible_by(r)) {
        rest = rest.divide_linear(r);
        found.push_back(r);
        progress = true;
        break;
      }
  }
  if (rest.degree() != 0) return std::nullopt;
  return std::make_pair(rest.leading_coeff(), found);
}

}  // namespace

Membership Schubert::phi_membership(SubsetMask s, const std::vector<RationalFunction>& tuple) const {
  const auto& fd = frobenius(s);
  const auto& fe = f_elements(s);
  const std::size_t n = fd.elements.size();
  if (tuple.size() != n) fail(ErrorCode::SchemaError, "phi tuple must have one entry per element of W_S");
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t w = 0; w < n; ++w) m[x][w] = phi(s, fd.elements[x], fe.basis[w]);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fd.elements[b] < fd.elements[a]; });
  Membership res;
  res.coeffs.assign(n, RationalFunction(Polynomial(nvars())));
  auto residual = [&](std::size_t x) {
    RationalFunction r = tuple[x];
    for (std::size_t w = 0; w < n; ++w)
      if (!res.coeffs[w].is_zero() && !m[x][w].is_zero()) r -= res.coeffs[w] * RationalFunction(m[x][w]);
    return r;
  };
  for (std::size_t w : order) {
    Element xe = w_.mul(fd.longest, w_.inv(fd.elements[w]));
    std::size_t x = static_cast<std::size_t>(fd.index(xe));
    auto f = factor_over(m[x][w], fe.roots);
    if (!f) fail(ErrorCode::SingularTransition, "diagonal phi entry is not a product of roots");
    res.coeffs[w] = residual(x).divided_by_factored(f->first, f->second);
  }
  for (std::size_t x = 0; x < n; ++x)
    if (!residual(x).is_zero()) fail(ErrorCode::SingularTransition, "phi coordinate matrix is not triangular");
  res.member = true;
  for (auto& c : res.coeffs)
    if (!c.is_polynomial()) {
      res.member = false;
      res.witness = c.den_factors().begin()->first;
      break;
    }
  return res;
}

}  // namespace soergel
