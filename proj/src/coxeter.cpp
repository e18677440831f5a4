#include "soergel/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <deque>
#include <set>

#include "soergel/errors.hpp"

namespace soergel {

namespace {

constexpr std::size_t kEnumerationCap = 2000000;

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod, sum;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
    fail(ErrorCode::LengthBoundExceeded, "geometric representation entries overflow; element too long");
  return sum;
}

IntMat mat_mul(const IntMat& a, const IntMat& b, int n) {
  IntMat c(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::int64_t x = a[i * n + k];
      if (!x) continue;
      for (int j = 0; j < n; ++j)
        if (b[k * n + j]) c[i * n + j] = checked_mul_add(c[i * n + j], x, b[k * n + j]);
    }
  return c;
}

IntMat identity_int(int n) {
  IntMat m(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

// Sign of a root given by column c of m (roots are either nonnegative or nonpositive).
bool column_negative(const IntMat& m, int n, int c) {
  for (int i = 0; i < n; ++i) {
    if (m[i * n + c] < 0) return true;
    if (m[i * n + c] > 0) return false;
  }
  return false;
}

}  // namespace

bool DoubleCoset::contains(const Element& w) const { return std::binary_search(members.begin(), members.end(), w); }

CoxeterGroup::CoxeterGroup(const CoxeterData& data, int length_bound) : data_(data), length_bound_(length_bound) {
  data_.validate();
  const int n = rank();
  for (int s = 0; s < n; ++s) {
    IntMat m = identity_int(n);
    for (int j = 0; j < n; ++j) m[s * n + j] -= cartan_entry(data_, s, j);
    gens_.push_back(m);
  }
}

void CoxeterGroup::check_bound(const Element& w) const {
  if (w.length() > length_bound_ && !is_finite())
    fail(ErrorCode::LengthBoundExceeded, "element of length " + std::to_string(w.length()) + " exceeds the length bound " +
                                             std::to_string(length_bound_));
}

Element CoxeterGroup::reduce(const std::vector<Gen>& word) const {
  const int n = rank();
  IntMat minv = identity_int(n);
  for (Gen g : word) {
    if (g >= n) fail(ErrorCode::SchemaError, "generator index out of range");
    minv = mat_mul(gens_[g], minv, n);
  }
  Element out;
  for (;;) {
    int found = -1;
    for (int s = 0; s < n && found < 0; ++s)
      if (column_negative(minv, n, s)) found = s;
    if (found < 0) break;
    out.word.push_back(static_cast<Gen>(found));
    minv = mat_mul(minv, gens_[found], n);
    if (out.length() > length_bound_ + static_cast<int>(word.size())) break;  // defensive
  }
  check_bound(out);
  return out;
}

Element CoxeterGroup::mul(const Element& a, const Element& b) const {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  if (b.length() == 1) return rmul(a, b.word[0]);
  if (a.length() == 1) return lmul(a.word[0], b);
  std::vector<Gen> w = a.word;
  w.insert(w.end(), b.word.begin(), b.word.end());
  return reduce(w);
}

Element CoxeterGroup::inv(const Element& a) const {
  std::vector<Gen> w(a.word.rbegin(), a.word.rend());
  return reduce(w);
}

Element CoxeterGroup::lmul(int s, const Element& a) const {
  auto key = std::make_pair(a, s);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lmul_cache_.find(key);
    if (it != lmul_cache_.end()) return it->second;
  }
  std::vector<Gen> w;
  w.reserve(a.word.size() + 1);
  w.push_back(static_cast<Gen>(s));
  w.insert(w.end(), a.word.begin(), a.word.end());
  Element r = reduce(w);
  std::lock_guard<std::mutex> lock(mu_);
  lmul_cache_.emplace(key, r);
  return r;
}

Element CoxeterGroup::rmul(const Element& a, int s) const {
  auto key = std::make_pair(a, s);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rmul_cache_.find(key);
    if (it != rmul_cache_.end()) return it->second;
  }
  std::vector<Gen> w = a.word;
  w.push_back(static_cast<Gen>(s));
  Element r = reduce(w);
  std::lock_guard<std::mutex> lock(mu_);
  rmul_cache_.emplace(key, r);
  return r;
}

bool CoxeterGroup::left_descent(int s, const Element& a) const { return lmul(s, a).length() < a.length(); }
bool CoxeterGroup::right_descent(const Element& a, int s) const { return rmul(a, s).length() < a.length(); }

bool CoxeterGroup::bruhat_leq(const Element& a, const Element& b) const {
  if (a.length() > b.length()) return false;
  if (a.is_identity()) return true;
  if (a.length() == b.length()) return a == b;
  auto key = std::make_pair(a, b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = bruhat_cache_.find(key);
    if (it != bruhat_cache_.end()) return it->second;
  }
  // b's canonical word starts with a left descent s.
  int s = b.word.front();
  Element sb{std::vector<Gen>(b.word.begin() + 1, b.word.end())};
  bool res = left_descent(s, a) ? bruhat_leq(lmul(s, a), sb) : bruhat_leq(a, sb);
  std::lock_guard<std::mutex> lock(mu_);
  bruhat_cache_.emplace(key, res);
  return res;
}

IntMat CoxeterGroup::matrix(const Element& a) const {
  IntMat m = identity_int(rank());
  for (Gen g : a.word) m = mat_mul(m, gens_[g], rank());
  return m;
}

namespace {

// Breadth-first enumeration of the subgroup generated by mask, by length.
std::vector<Element> enumerate(const CoxeterGroup& g, SubsetMask mask, int bound, std::size_t cap, bool* complete) {
  std::vector<Element> out{g.identity()};
  std::vector<Element> level{g.identity()};
  *complete = false;
  for (int len = 0; bound < 0 || len < bound; ++len) {
    std::set<Element> next;
    for (auto& w : level)
      for (int s = 0; s < g.rank(); ++s) {
        if (!(mask >> s & 1)) continue;
        if (g.right_descent(w, s)) continue;
        next.insert(g.rmul(w, s));
      }
    if (next.empty()) {
      *complete = true;
      break;
    }
    level.assign(next.begin(), next.end());
    out.insert(out.end(), level.begin(), level.end());
    if (out.size() > cap) return out;
  }
  return out;
}

}  // namespace

bool CoxeterGroup::is_finite() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (finite_state_ >= 0) return finite_state_ == 1;
  }
  bool fin = is_finitary(full_mask());
  std::lock_guard<std::mutex> lock(mu_);
  finite_state_ = fin ? 1 : 0;
  return fin;
}

bool CoxeterGroup::is_finitary(SubsetMask mask) const {
  // W_S is finite iff the cosine form restricted to S is positive definite.
  std::vector<int> idx;
  for (int s = 0; s < rank(); ++s)
    if (mask >> s & 1) idx.push_back(s);
  const std::size_t k = idx.size();
  std::vector<long double> b(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      int m = data_.m[idx[i]][idx[j]];
      b[i * k + j] = i == j ? 1.0L : (m == 0 ? -1.0L : -std::cos(std::numbers::pi_v<long double> / m));
    }
  // Cholesky; a non-positive pivot means not positive definite.
  for (std::size_t j = 0; j < k; ++j) {
    long double d = b[j * k + j];
    for (std::size_t l = 0; l < j; ++l) d -= b[j * k + l] * b[j * k + l];
    if (d <= 1e-12L) return false;
    d = std::sqrt(d);
    b[j * k + j] = d;
    for (std::size_t i = j + 1; i < k; ++i) {
      long double x = b[i * k + j];
      for (std::size_t l = 0; l < j; ++l) x -= b[i * k + l] * b[j * k + l];
      b[i * k + j] = x / d;
    }
  }
  return true;
}

const FinitarySubset& CoxeterGroup::parabolic(SubsetMask mask) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = parabolic_cache_.find(mask);
    if (it != parabolic_cache_.end()) return *it->second;
  }
  if (!is_finitary(mask)) fail(ErrorCode::Unsupported, "subset {" + [&] {
    std::string s;
    for (auto& n : subset_names(mask)) s += (s.empty() ? "" : ",") + n;
    return s;
  }() + "} is not finitary");
  bool complete = false;
  auto f = std::make_unique<FinitarySubset>();
  f->mask = mask;
  f->elements = enumerate(*this, mask, -1, kEnumerationCap, &complete);
  std::sort(f->elements.begin(), f->elements.end());
  f->order = f->elements.size();
  f->longest = f->elements.back();
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = parabolic_cache_.emplace(mask, std::move(f));
  return *it->second;
}

bool CoxeterGroup::in_parabolic(const Element& w, SubsetMask mask) const {
  for (Gen g : w.word)
    if (!(mask >> g & 1)) return false;
  return true;
}

std::vector<SubsetMask> CoxeterGroup::finitary_subsets() const {
  std::vector<SubsetMask> out;
  for (SubsetMask m = 0; m <= full_mask(); ++m)
    if (is_finitary(m)) out.push_back(m);
  return out;
}

std::vector<Element> CoxeterGroup::elements_up_to(int bound) const {
  if (bound < 0) return all_elements();
  bool complete = false;
  auto v = enumerate(*this, full_mask(), bound, SIZE_MAX, &complete);
  std::sort(v.begin(), v.end());
  return v;
}

const std::vector<Element>& CoxeterGroup::all_elements() const {
  if (!is_finite()) fail(ErrorCode::LengthBoundExceeded, "cannot enumerate an infinite group without a length bound");
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!all_.empty()) return all_;
  }
  const auto& p = parabolic(full_mask());
  std::lock_guard<std::mutex> lock(mu_);
  all_ = p.elements;
  return all_;
}

Element CoxeterGroup::min_rep(SubsetMask s1, SubsetMask s2, const Element& w) const {
  Element x = w;
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < rank(); ++s) {
      if ((s1 >> s & 1) && left_descent(s, x)) {
        x = lmul(s, x);
        changed = true;
      }
      if ((s2 >> s & 1) && right_descent(x, s)) {
        x = rmul(x, s);
        changed = true;
      }
    }
  }
  return x;
}

const DoubleCoset& CoxeterGroup::coset_of(SubsetMask s1, SubsetMask s2, const Element& w) const {
  Element m = min_rep(s1, s2, w);
  auto key = std::make_tuple(s1, s2, m);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = coset_cache_.find(key);
    if (it != coset_cache_.end()) return *it->second;
  }
  if (!is_finitary(s1) || !is_finitary(s2)) fail(ErrorCode::Unsupported, "double cosets need finitary subsets");
  std::set<Element> seen{m};
  std::deque<Element> queue{m};
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (int s = 0; s < rank(); ++s) {
      if (s1 >> s & 1) {
        Element y = lmul(s, x);
        if (seen.insert(y).second) queue.push_back(y);
      }
      if (s2 >> s & 1) {
        Element y = rmul(x, s);
        if (seen.insert(y).second) queue.push_back(y);
      }
    }
  }
  auto c = std::make_unique<DoubleCoset>();
  c->s1 = s1;
  c->s2 = s2;
  c->min = m;
  c->members.assign(seen.begin(), seen.end());
  c->max = c->members.back();
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = coset_cache_.emplace(key, std::move(c));
  return *it->second;
}

std::vector<DoubleCoset> CoxeterGroup::double_cosets(SubsetMask s1, SubsetMask s2, int bound) const {
  std::vector<DoubleCoset> out;
  for (auto& w : elements_up_to(bound))
    if (min_rep(s1, s2, w) == w) out.push_back(coset_of(s1, s2, w));
  return out;
}

bool CoxeterGroup::is_open(const std::vector<DoubleCoset>& subset, const std::vector<DoubleCoset>& universe) const {
  for (auto& x : subset)
    for (auto& y : universe)
      if (coset_leq(x, y) && std::find(subset.begin(), subset.end(), y) == subset.end()) return false;
  return true;
}

bool CoxeterGroup::is_closed(const std::vector<DoubleCoset>& subset, const std::vector<DoubleCoset>& universe) const {
  for (auto& x : subset)
    for (auto& y : universe)
      if (coset_leq(y, x) && std::find(subset.begin(), subset.end(), y) == subset.end()) return false;
  return true;
}

std::vector<DoubleCoset> CoxeterGroup::coset_product(const DoubleCoset& x, const DoubleCoset& y) const {
  if (x.s2 != y.s1) fail(ErrorCode::MiddleMismatch, "coset product needs matching middle subsets");
  std::set<Element> mins;
  for (auto& a : x.members)
    for (auto& b : y.members) mins.insert(min_rep(x.s1, y.s2, mul(a, b)));
  std::vector<DoubleCoset> out;
  for (auto& m : mins) out.push_back(coset_of(x.s1, y.s2, m));
  return out;
}

std::vector<Reflection> CoxeterGroup::reflections_up_to(int bound, const Realization* user) const {
  std::vector<Element> ws;
  if (bound < 0) ws = all_elements();
  else if (bound >= 1) ws = elements_up_to((bound - 1) / 2);
  std::map<Element, Reflection> found;
  for (auto& w : ws)
    for (int s = 0; s < rank(); ++s) {
      Element t = mul(mul(w, gen(s)), inv(w));
      if (bound >= 0 && t.length() > bound) continue;
      if (found.count(t)) continue;
      Reflection r;
      r.element = t;
      r.conjugator = w;
      r.generator = s;
      if (user) r.root = act_on_vector(*user, w, user->alpha[s]);
      found.emplace(t, std::move(r));
    }
  std::vector<Reflection> out;
  for (auto& [t, r] : found) out.push_back(r);
  return out;
}

std::string CoxeterGroup::name(const Element& w) const {
  if (w.is_identity()) return "1";
  std::string s;
  for (Gen g : w.word) s += data_.generators[g];
  return s;
}

Element CoxeterGroup::parse(const std::string& text) const {
  std::vector<Gen> word;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == ',' || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == '1' && (text.size() == 1 || i + 1 == text.size())) {
      ++i;
      continue;
    }
    int best = -1;
    std::size_t best_len = 0;
    for (int s = 0; s < rank(); ++s) {
      const auto& g = data_.generators[s];
      if (g.size() > best_len && text.compare(i, g.size(), g) == 0) {
        best = s;
        best_len = g.size();
      }
    }
    if (best < 0) fail(ErrorCode::SchemaError, "cannot parse group element '" + text + "'");
    word.push_back(static_cast<Gen>(best));
    i += best_len;
  }
  return reduce(word);
}

SubsetMask CoxeterGroup::parse_subset(const std::string& text) const {
  if (text.empty() || text == "-" || text == "none" || text == "{}") return 0;
  SubsetMask mask = 0;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    int idx = data_.index_of(cur);
    if (idx >= 0) {
      mask |= SubsetMask{1} << idx;
    } else {
      // Concatenated names such as "st".
      std::size_t i = 0;
      while (i < cur.size()) {
        int best = -1;
        std::size_t len = 0;
        for (int s = 0; s < rank(); ++s) {
          const auto& g = data_.generators[s];
          if (g.size() > len && cur.compare(i, g.size(), g) == 0) {
            best = s;
            len = g.size();
          }
        }
        if (best < 0) fail(ErrorCode::SchemaError, "unknown generator in subset '" + cur + "'");
        mask |= SubsetMask{1} << best;
        i += len;
      }
    }
    cur.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '{' || c == '}') flush();
    else cur += c;
  }
  flush();
  return mask;
}

std::vector<std::string> CoxeterGroup::subset_names(SubsetMask mask) const {
  std::vector<std::string> out;
  for (int s = 0; s < rank(); ++s)
    if (mask >> s & 1) out.push_back(data_.generators[s]);
  return out;
}

Vec act_on_vector(const Realization& r, const Element& w, const Vec& v) {
  Vec cur = v;
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    const auto& a = r.action[*it];
    Vec next(r.dim, r.field.zero());
    for (int i = 0; i < r.dim; ++i)
      for (int j = 0; j < r.dim; ++j)
        if (!a[i][j].is_zero() && !cur[j].is_zero()) next[i] += a[i][j] * cur[j];
    cur = std::move(next);
  }
  return cur;
}

}  // namespace soergel
