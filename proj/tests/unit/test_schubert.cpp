#include <doctest.h>

#include "soergel/errors.hpp"
#include "soergel/schubert.hpp"

using namespace soergel;

namespace {
struct Ctx {
  Realization r;
  CoxeterGroup w;
  Schubert sc;
  explicit Ctx(const char* preset, Field f = Field{}) : r(load_preset(preset, &f)), w(r.coxeter), sc(r, w) {}
  Polynomial e(int i) const { return r.variable(i); }
  Polynomial c(long x) const { return Polynomial(r.dim, r.field.of(x)); }
};
}  // namespace

TEST_CASE("action and Demazure operators on A2-GL3") {
  Ctx k("A2-GL3");
  auto& sc = k.sc;
  CHECK(sc.act(k.w.parse("s"), k.e(0)) == k.e(1));
  CHECK(sc.act(k.w.parse("s"), k.e(2)) == k.e(2));
  CHECK(sc.act(k.w.identity(), k.e(0) * k.e(2)) == k.e(0) * k.e(2));
  CHECK(sc.demazure(0, k.r.root(0)) == k.c(2));
  CHECK(sc.demazure(0, k.e(0)) == k.c(1));
  CHECK(sc.demazure(0, k.e(0) * k.e(1)).is_zero());
  CHECK(sc.demazure_word({0, 0}, k.e(0) * k.e(0) * k.e(2)).is_zero());
  Polynomial f = k.e(0) * k.e(0) * k.e(1) + k.e(2) * k.e(2) * k.e(0) * k.c(3);
  CHECK(sc.demazure_word({0, 1, 0}, f) == sc.demazure_word({1, 0, 1}, f));
  CHECK(sc.demazure_element(k.w.parse("sts"), k.e(0) * k.e(0) * k.e(1)) == k.c(1));
}

TEST_CASE("find_p and Frobenius data") {
  Ctx k("A2-GL3");
  auto& sc = k.sc;
  CHECK(*sc.find_p(0) == k.c(1));
  CHECK(*sc.find_p(1) == k.e(0));
  const auto& fd = sc.frobenius(1);
  CHECK(fd.basis[0] == k.e(0));
  CHECK(fd.basis[1] == k.c(1));
  CHECK(fd.dual[0] == k.c(1));
  CHECK(fd.dual[1] == -k.e(1));
  auto ex = sc.express(1, k.e(1));
  CHECK(ex[0] == k.c(-1));
  CHECK(ex[1] == k.e(0) + k.e(1));
  auto one = sc.express(1, k.c(1));
  CHECK(one[0].is_zero());
  CHECK(one[1] == k.c(1));
  for (SubsetMask s : {1u, 2u, 3u}) {
    const auto& f = sc.frobenius(s);
    for (std::size_t x = 0; x < f.basis.size(); ++x)
      for (std::size_t y = 0; y < f.dual.size(); ++y)
        CHECK(sc.trace(s, f.basis[x] * f.dual[y]) == (x == y ? k.c(1) : k.c(0)));
  }
}

TEST_CASE("assumption failure in characteristic two") {
  Ctx k("A1-adjoint", Field{2});
  CHECK(k.r.degenerate_coroot);
  CHECK(!k.sc.find_p(1).has_value());
  try {
    k.sc.frobenius(1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AssumptionFailed);
  }
}

TEST_CASE("F-elements and phi membership") {
  Ctx k("A2-GL3");
  auto& sc = k.sc;
  const auto& fe = sc.f_elements(1);
  // F_s = e1 (x) 1 - 1 (x) e1
  const auto& fs = fe.f[1];
  CHECK(sc.phi(1, k.w.identity(), fs).is_zero());
  CHECK(sc.phi(1, k.w.parse("s"), fs) == k.r.root(0));
  auto ones = sc.tensor_pure(1, k.c(1), k.c(1));
  CHECK(sc.phi(1, k.w.identity(), ones) == k.c(1));
  CHECK(sc.phi(1, k.w.parse("s"), ones) == k.c(1));
  CHECK(sc.phi(1, k.w.identity(), sc.right_demazure(1, 0, fs)) == k.c(-1));
  // 1 (x) e1 is a member
  std::vector<RationalFunction> t1{RationalFunction(k.e(0)), RationalFunction(k.e(1))};
  auto m1 = sc.phi_membership(1, t1);
  CHECK(m1.member);
  CHECK(sc.phi_membership(1, {RationalFunction(Polynomial(3)), RationalFunction(Polynomial(3))}).member);
  auto m2 = sc.phi_membership(1, {RationalFunction(k.c(1)), RationalFunction(Polynomial(3))});
  CHECK(!m2.member);
  CHECK((m2.witness == k.r.root(0) || m2.witness == -k.r.root(0)));
  for (const char* preset : {"A2-GL3", "B2", "A2"}) {
    Ctx c(preset);
    for (SubsetMask s : {0u, 1u, 2u, 3u}) {
      const auto& f = c.sc.f_elements(s);
      const auto& fd = c.sc.frobenius(s);
      for (std::size_t x = 0; x < fd.elements.size(); ++x)
        for (std::size_t w = 0; w < fd.elements.size(); ++w) {
          Polynomial v = c.sc.phi(s, fd.elements[x], f.f[w]);
          if (x == w) CHECK(v == f.root_product);
          else CHECK(v.is_zero());
        }
    }
  }
}

TEST_CASE("invariants") {
  Ctx k("A2-GL3");
  auto& sc = k.sc;
  CHECK(sc.invariant_basis(3, 1).size() == 1);
  CHECK(sc.invariant_basis(3, 2).size() == 2);
  CHECK(sc.invariant_generators(3).size() == 3);
  CHECK(sc.invariant_generators(0).size() == 3);
  Ctx a2("A2");
  CHECK(a2.sc.invariant_generators(3).size() == 2);
  CHECK(a2.sc.invariant_generators(1).size() == 2);
}
