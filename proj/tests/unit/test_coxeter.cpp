#include <doctest.h>

#include <random>

#include "soergel/coxeter.hpp"
#include "soergel/errors.hpp"

using namespace soergel;

TEST_CASE("realization presets and validation") {
  auto a1 = load_preset("A1-adjoint");
  CHECK(a1.action[0][0][0] == Scalar(-1L));
  auto a2 = load_preset("A2-GL3");
  CHECK(a2.action[0][1][0].is_one());  // s(e1) = e2
  for (auto& name : preset_names()) {
    auto r = load_preset(name);
    CHECK(serialize(load_realization(serialize(r))) == serialize(r));
    for (int s = 0; s < r.rank(); ++s) CHECK(act_on_vector(r, Element{{static_cast<Gen>(s)}}, r.alpha[s])[0] == -r.alpha[s][0]);
  }
  auto doc = serialize(a1);
  doc["alpha_check"]["s"] = {3};
  CHECK_THROWS_WITH_AS(load_realization(doc), doctest::Contains("alpha"), Error);
  try {
    load_realization(doc);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PairingNotTwo);
  }
  CoxeterData c;
  c.generators = {"s", "t"};
  c.m = {{1, 5}, {5, 1}};
  try {
    geometric_representation(c);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IrrationalCosine);
  }
  auto g = geometric_representation(coxeter_type_A(2));
  CHECK(g.alpha_check[0][1] == Scalar(-1L));
}

TEST_CASE("group arithmetic in A2") {
  CoxeterGroup w(coxeter_type_A(2));
  auto s = w.parse("s"), t = w.parse("t");
  CHECK(w.mul(s, s).is_identity());
  CHECK(w.parse("sts") == w.parse("tst"));
  CHECK(w.parse("tst").length() == 3);
  CHECK(w.name(w.parse("tst")) == "sts");
  CHECK(w.bruhat_leq(s, w.parse("st")));
  CHECK(!w.bruhat_leq(w.parse("st"), w.parse("ts")));
  CHECK(w.all_elements().size() == 6);
  CHECK(w.is_finite());
  (void)t;
}

TEST_CASE("double cosets in A2") {
  CoxeterGroup w(coxeter_type_A(2));
  auto cs = w.double_cosets(1, 2);
  REQUIRE(cs.size() == 2);
  CHECK(w.name(cs[0].min) == "1");
  CHECK(w.name(cs[0].max) == "st");
  CHECK(cs[0].members.size() == 4);
  CHECK(w.name(cs[1].min) == "ts");
  CHECK(w.name(cs[1].max) == "sts");
  CHECK(w.double_cosets(0, 0).size() == 6);
  auto x = w.coset_of(1, 0, w.identity()), y = w.coset_of(0, 2, w.identity());
  auto p = w.coset_product(x, y);
  REQUIRE(p.size() == 1);
  CHECK(p[0].members.size() == 4);
  auto a = w.coset_of(1, 2, w.parse("ts")), b = w.coset_of(2, 1, w.parse("st"));
  // {ts,sts}{st,sts} = {1,s}; the two identity cosets meet both (s,s)-cosets.
  CHECK(w.coset_product(a, b).size() == 1);
  CHECK(w.coset_product(w.coset_of(1, 2, w.identity()), w.coset_of(2, 1, w.identity())).size() == 2);
  CHECK(w.is_open({cs[1]}, cs));
  CHECK(!w.is_open({cs[0]}, cs));
  CHECK(w.is_closed({cs[0]}, cs));
}

TEST_CASE("reflections") {
  auto r = load_preset("A2-GL3");
  CoxeterGroup w(r.coxeter);
  auto refl = w.reflections_up_to(-1, &r);
  REQUIRE(refl.size() == 3);
  CHECK(w.name(refl[2].element) == "sts");
  CHECK(refl[2].root[0].is_one());
  CHECK(refl[2].root[2] == Scalar(-1L));
}

TEST_CASE("length parity and subadditivity on random pairs") {
  for (const char* preset : {"A2", "B2", "G2", "A3-GL4"}) {
    CoxeterGroup w(load_preset(preset).coxeter);
    std::mt19937 rng(3);
    auto els = w.elements_up_to(6);
    for (int i = 0; i < 200; ++i) {
      auto& a = els[rng() % els.size()];
      auto& b = els[rng() % els.size()];
      auto ab = w.mul(a, b);
      CHECK(ab.length() <= a.length() + b.length());
      CHECK((ab.length() - a.length() - b.length()) % 2 == 0);
    }
  }
}

TEST_CASE("infinite dihedral group") {
  CoxeterData c;
  c.generators = {"s", "t"};
  c.m = {{1, 0}, {0, 1}};
  CoxeterGroup w(c, 10);
  CHECK(!w.is_finite());
  CHECK(w.elements_up_to(3).size() == 7);
  CHECK(w.parse("stst").length() == 4);
  CHECK_THROWS_AS(w.parse("ststststststst"), Error);
  CHECK(w.is_finitary(1));
  CHECK(w.double_cosets(1, 2, 4).size() == 3);
}
