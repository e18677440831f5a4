#include "soergel/realization.hpp"

#include "soergel/errors.hpp"

namespace soergel {

using nlohmann::json;

int CoxeterData::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

void CoxeterData::validate() const {
  const std::size_t n = generators.size();
  if (n == 0 || n > 8) fail(ErrorCode::SchemaError, "need between 1 and 8 generators");
  for (std::size_t i = 0; i < n; ++i) {
    if (generators[i].empty()) fail(ErrorCode::SchemaError, "empty generator name");
    for (std::size_t j = 0; j < i; ++j)
      if (generators[i] == generators[j]) fail(ErrorCode::SchemaError, "duplicate generator " + generators[i]);
  }
  if (m.size() != n) fail(ErrorCode::SchemaError, "coxeter_matrix has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) fail(ErrorCode::SchemaError, "coxeter_matrix has wrong size");
    if (m[i][i] != 1) fail(ErrorCode::SchemaError, "coxeter_matrix diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != m[j][i]) fail(ErrorCode::SchemaError, "coxeter_matrix must be symmetric");
      if (i != j && m[i][j] != 0 && m[i][j] < 2) fail(ErrorCode::SchemaError, "off-diagonal orders must be >= 2 or inf");
    }
  }
}

CoxeterData coxeter_type_A(int n) {
  CoxeterData c;
  const char* names[] = {"s", "t", "u", "r", "a", "b", "c", "d"};
  for (int i = 0; i < n; ++i) c.generators.push_back(names[i]);
  c.m.assign(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) {
    c.m[i][i] = 1;
    if (i + 1 < n) c.m[i][i + 1] = c.m[i + 1][i] = 3;
  }
  return c;
}

Polynomial Realization::root(int s) const {
  Polynomial p(dim);
  for (int i = 0; i < dim; ++i) p += Polynomial::var(dim, i, alpha[s][i]);
  return p;
}

Polynomial Realization::variable(int i) const { return Polynomial::var(dim, i, field.one()); }

Scalar Realization::pairing(int s, const Vec& v) const {
  Scalar acc = field.zero();
  for (int i = 0; i < dim; ++i) acc += alpha_check[s][i] * v[i];
  return acc;
}

const std::vector<Polynomial>& Realization::generator_images(int s) const {
  if (images_cache_.empty()) {
    images_cache_.resize(rank());
    for (int g = 0; g < rank(); ++g)
      for (int j = 0; j < dim; ++j) {
        Polynomial img(dim);
        for (int i = 0; i < dim; ++i) img += Polynomial::var(dim, i, action[g][i][j]);
        images_cache_[g].push_back(img);
      }
  }
  return images_cache_[s];
}

namespace {

SqMatrix mat_mul(const SqMatrix& a, const SqMatrix& b, const Field& f) {
  const std::size_t n = a.size();
  SqMatrix c(n, Vec(n, f.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

bool is_identity(const SqMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != Scalar(i == j ? 1L : 0L)) return false;
  return true;
}

}  // namespace

Realization make_realization(CoxeterData cox, int dim, Field field, std::vector<Vec> alpha, std::vector<Vec> alpha_check) {
  cox.validate();
  const int n = cox.rank();
  if (dim <= 0 || dim > kMaxVars) fail(ErrorCode::SchemaError, "dim_v must be between 1 and 8");
  if (static_cast<int>(alpha.size()) != n || static_cast<int>(alpha_check.size()) != n)
    fail(ErrorCode::SchemaError, "alpha/alpha_check must list every generator");
  Realization r;
  r.coxeter = std::move(cox);
  r.dim = dim;
  r.field = field;
  for (int s = 0; s < n; ++s) {
    if (static_cast<int>(alpha[s].size()) != dim || static_cast<int>(alpha_check[s].size()) != dim)
      fail(ErrorCode::SchemaError, "root vectors must have dim_v entries");
    for (auto& x : alpha[s]) x = x.in_field(field.p);
    for (auto& x : alpha_check[s]) x = x.in_field(field.p);
  }
  r.alpha = std::move(alpha);
  r.alpha_check = std::move(alpha_check);
  for (int s = 0; s < n; ++s) {
    bool zero = true, zero_check = true;
    for (int i = 0; i < dim; ++i) {
      zero = zero && r.alpha[s][i].is_zero();
      zero_check = zero_check && r.alpha_check[s][i].is_zero();
    }
    if (zero) fail(ErrorCode::ZeroRoot, "alpha_" + r.coxeter.generators[s] + " is zero");
    if (zero_check) r.degenerate_coroot = true;
    if (r.pairing(s, r.alpha[s]) != Scalar(2L))
      fail(ErrorCode::PairingNotTwo, "<alpha_check, alpha> != 2 for " + r.coxeter.generators[s]);
  }
  r.action.resize(n);
  for (int s = 0; s < n; ++s) {
    SqMatrix a(dim, Vec(dim, field.zero()));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a[i][j] = Scalar(i == j ? 1L : 0L).in_field(field.p) - r.alpha[s][i] * r.alpha_check[s][j];
    if (!is_identity(mat_mul(a, a, field))) fail(ErrorCode::BraidFailure, "generator action is not an involution");
    r.action[s] = std::move(a);
  }
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      int m = r.coxeter.m[s][t];
      if (m == 0) continue;
      SqMatrix st = mat_mul(r.action[s], r.action[t], field), pw = st;
      for (int k = 1; k < m; ++k) pw = mat_mul(pw, st, field);
      if (!is_identity(pw))
        fail(ErrorCode::BraidFailure, "(" + r.coxeter.generators[s] + r.coxeter.generators[t] + ")^" + std::to_string(m) + " != id");
    }
  return r;
}

int cartan_entry(const CoxeterData& cox, int s, int t) {
  if (s == t) return 2;
  switch (cox.m[s][t]) {
    case 2: return 0;
    case 3: return -1;
    case 4: return s < t ? -1 : -2;
    case 6: return s < t ? -1 : -3;
    case 0: return -2;
    default:
      fail(ErrorCode::IrrationalCosine,
           "m(" + cox.generators[s] + "," + cox.generators[t] + ")=" + std::to_string(cox.m[s][t]) + " needs an irrational cosine");
  }
}

Realization geometric_representation(const CoxeterData& cox, Field field) {
  cox.validate();
  const int n = cox.rank();
  std::vector<Vec> alpha(n, Vec(n, field.zero())), check(n, Vec(n, field.zero()));
  for (int s = 0; s < n; ++s) {
    alpha[s][s] = field.one();
    for (int t = 0; t < n; ++t) check[s][t] = field.of(cartan_entry(cox, s, t));
  }
  return make_realization(cox, n, field, alpha, check);
}

namespace {

Vec ints(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

CoxeterData rank2(int m) {
  CoxeterData c;
  c.generators = {"s", "t"};
  c.m = {{1, m}, {m, 1}};
  return c;
}

Realization build_preset(const std::string& name, Field f) {
  if (name == "A1-adjoint" || name == "A1") {
    CoxeterData c;
    c.generators = {"s"};
    c.m = {{1}};
    return make_realization(c, 1, f, {ints({1})}, {ints({2})});
  }
  if (name == "A1-GL2") {
    CoxeterData c;
    c.generators = {"s"};
    c.m = {{1}};
    return make_realization(c, 2, f, {ints({1, -1})}, {ints({1, -1})});
  }
  if (name == "A2-GL3")
    return make_realization(coxeter_type_A(2), 3, f, {ints({1, -1, 0}), ints({0, 1, -1})}, {ints({1, -1, 0}), ints({0, 1, -1})});
  if (name == "A2") return geometric_representation(coxeter_type_A(2), f);
  if (name == "B2") return make_realization(rank2(4), 2, f, {ints({1, -1}), ints({0, 1})}, {ints({1, -1}), ints({0, 2})});
  if (name == "G2") return make_realization(rank2(6), 2, f, {ints({1, 0}), ints({0, 1})}, {ints({2, -1}), ints({-3, 2})});
  if (name == "A3-GL4")
    return make_realization(coxeter_type_A(3), 4, f, {ints({1, -1, 0, 0}), ints({0, 1, -1, 0}), ints({0, 0, 1, -1})},
                            {ints({1, -1, 0, 0}), ints({0, 1, -1, 0}), ints({0, 0, 1, -1})});
  fail(ErrorCode::SchemaError, "unknown preset '" + name + "'");
}

Field field_from_json(const json& j) {
  if (j.is_null()) return Field{};
  if (j.is_string()) return parse_field(j.get<std::string>());
  if (j.is_object() && j.contains("Fp")) return parse_field(std::to_string(j.at("Fp").get<long long>()));
  fail(ErrorCode::SchemaError, "field must be \"Q\" or {\"Fp\": prime}");
}

Scalar scalar_from_json(const json& j, std::uint32_t p) {
  if (j.is_number_integer()) return Scalar(j.get<long>()).in_field(p);
  if (j.is_string()) return Scalar::parse(j.get<std::string>(), p);
  fail(ErrorCode::SchemaError, "rational entries must be integers or \"p/q\" strings");
}

}  // namespace

std::vector<std::string> preset_names() { return {"A1-adjoint", "A1-GL2", "A2-GL3", "B2", "G2", "A3-GL4", "A1", "A2"}; }

Realization load_preset(const std::string& name, const Field* field) {
  Realization r = build_preset(name, field ? *field : Field{});
  r.preset = name;
  r.assume_balancedness = true;
  return r;
}

Realization load_realization(const json& doc) {
  try {
    if (doc.is_string()) return load_preset(doc.get<std::string>());
    if (!doc.is_object()) fail(ErrorCode::SchemaError, "realization document must be an object");
    Field f = field_from_json(doc.value("field", json()));
    if (doc.contains("preset")) return load_preset(doc.at("preset").get<std::string>(), &f);
    CoxeterData c;
    c.generators = doc.at("generators").get<std::vector<std::string>>();
    for (auto& row : doc.at("coxeter_matrix")) {
      std::vector<int> r;
      for (auto& e : row) {
        if (e.is_string()) {
          if (e.get<std::string>() != "inf") fail(ErrorCode::SchemaError, "coxeter_matrix entries must be integers or \"inf\"");
          r.push_back(0);
        } else {
          int v = e.get<int>();
          if (v == 0) fail(ErrorCode::SchemaError, "coxeter_matrix entry 0 is not allowed (use \"inf\")");
          r.push_back(v);
        }
      }
      c.m.push_back(r);
    }
    int dim = doc.at("dim_v").get<int>();
    std::vector<Vec> alpha, check;
    for (auto& g : c.generators) {
      Vec a, b;
      for (auto& e : doc.at("alpha").at(g)) a.push_back(scalar_from_json(e, f.p));
      for (auto& e : doc.at("alpha_check").at(g)) b.push_back(scalar_from_json(e, f.p));
      alpha.push_back(a);
      check.push_back(b);
    }
    Realization r = make_realization(c, dim, f, alpha, check);
    r.assume_balancedness = doc.value("assume_balancedness", false);
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::SchemaError, std::string("malformed realization document: ") + e.what());
  }
}

json serialize(const Realization& r) {
  json j;
  j["generators"] = r.coxeter.generators;
  json m = json::array();
  for (auto& row : r.coxeter.m) {
    json jr = json::array();
    for (int e : row) {
      if (e == 0) jr.push_back("inf");
      else jr.push_back(e);
    }
    m.push_back(jr);
  }
  j["coxeter_matrix"] = m;
  j["dim_v"] = r.dim;
  for (int s = 0; s < r.rank(); ++s) {
    json a = json::array(), b = json::array();
    for (auto& x : r.alpha[s]) a.push_back(x.str());
    for (auto& x : r.alpha_check[s]) b.push_back(x.str());
    j["alpha"][r.coxeter.generators[s]] = a;
    j["alpha_check"][r.coxeter.generators[s]] = b;
  }
  if (r.field.p) j["field"] = {{"Fp", r.field.p}};
  else j["field"] = "Q";
  j["assume_balancedness"] = r.assume_balancedness;
  return j;
}

}  // namespace soergel
