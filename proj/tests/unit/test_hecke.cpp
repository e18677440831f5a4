#include <doctest.h>

#include <random>

#include "soergel/errors.hpp"
#include "soergel/hecke.hpp"

using namespace soergel;

namespace {
Laurent L(const char* s) { return Laurent::parse(s); }
}  // namespace

TEST_CASE("hecke multiplication") {
  CoxeterGroup w(coxeter_type_A(2));
  Hecke h(w);
  auto hs = h.parse("Hs");
  HeckeElt sq = h.mul(hs, hs);
  CHECK(sq == h.one() + L("v^-1 - v") * hs);
  CHECK(h.mul(hs, h.parse("Ht")) == h.parse("Hst"));
  auto us = h.parse("Hs + v");
  CHECK(h.mul(us, us) == L("v + v^-1") * us);
  CHECK(h.parse("uHs") == us);
  CHECK(h.longest_kl(3) == h.parse("Hsts + v Hst + v Hts + v^2 Hs + v^2 Ht + v^3"));
  CHECK(h.longest_kl(0) == h.one());
  CHECK(h.parse("uH{s,t}") == h.longest_kl(3));
}

TEST_CASE("bar, omega and eps") {
  CoxeterGroup w(coxeter_type_A(2));
  Hecke h(w);
  CHECK(h.bar(h.one()) == h.one());
  CHECK(h.bar(h.parse("Hs")) == h.parse("Hs + v - v^-1"));
  CHECK(h.omega(h.longest_kl(1)) == h.longest_kl(1));
  CHECK(h.omega(h.longest_kl(3)) == h.longest_kl(3));
  auto x = h.parse("(v + 2) Hst - v^-3 Hts + Ht");
  CHECK(h.bar(h.bar(x)) == x);
  CHECK(h.omega(h.omega(x)) == x);
  CHECK(h.bar(h.omega(x)) == h.omega(h.bar(x)));
}

TEST_CASE("singular basis and star") {
  CoxeterGroup w(coxeter_type_A(2));
  Hecke h(w);
  auto c1 = h.to_singular(h.mul(h.parse("uHs"), h.parse("uHt")), 1, 2);
  CHECK(c1 == h.sing_basis_elt(1, 2, w.identity()));
  auto top = h.to_singular(h.longest_kl(3), 1, 2);
  CHECK(top == h.sing_basis_elt(1, 2, w.parse("ts")) + h.sing_basis_elt(1, 2, w.identity(), L("v")));
  try {
    h.to_singular(h.parse("Hs"), 1, 0);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInParabolicModule);
  }
  CoxeterGroup a1(load_preset("A1").coxeter);
  Hecke h1(a1);
  auto us = h1.to_singular(h1.parse("uHs"), 1, 1);
  CHECK(h1.star(us, us) == us);
  CHECK(h1.str(h1.star(us, us)) == "N[1]");
  // unit law
  auto unit = h.sing_basis_elt(1, 1, w.identity());
  auto any = h.to_singular(h.mul(h.longest_kl(1), h.parse("Ht uHs")), 1, 1);
  CHECK(h.star(unit, any) == any);
  CHECK(h.star(any, SingularHeckeElt{1, 2, {}}).is_zero());
}

TEST_CASE("push characters and hom formula") {
  CoxeterGroup w(coxeter_type_A(2));
  Hecke h(w);
  auto pushed = h.push_char(h.one(), 1, 2);
  CHECK(pushed == h.sing_basis_elt(1, 2, w.identity(), L("v^-1")));
  auto big = h.push_char(h.longest_kl(3), 1, 2);
  auto expect = L("v^-1") * L("v + v^-1") * L("v + v^-1") *
                (h.sing_basis_elt(1, 2, w.parse("ts")) + h.sing_basis_elt(1, 2, w.identity(), L("v")));
  CHECK(big == expect);
  CHECK(h.hom_grk_formula(h.to_singular(h.one(), 0, 0), h.to_singular(h.one(), 0, 0)) == Laurent(1));
  auto bs = h.to_singular(L("v^-1") * h.parse("uHs"), 0, 0);
  CHECK(h.hom_grk_formula(bs, bs) == L("1 + v^-2"));
  CHECK(h.hom_grk_formula(pushed, pushed) == L("1 + v^-2"));
}

TEST_CASE("bar invariant bases") {
  CoxeterGroup a1(load_preset("A1").coxeter);
  Hecke h1(a1);
  auto b = h1.bar_invariant_basis(0, 0);
  REQUIRE(b.size() == 2);
  CHECK(h1.from_singular(b[1]) == h1.parse("Hs + v"));
  CoxeterGroup w(coxeter_type_A(2));
  Hecke h(w);
  auto bb = h.bar_invariant_basis(1, 2);
  REQUIRE(bb.size() == 2);
  CHECK(bb[0] == h.sing_basis_elt(1, 2, w.identity()));
  CHECK(bb[1] == h.sing_basis_elt(1, 2, w.parse("ts")) + h.sing_basis_elt(1, 2, w.identity(), L("v")));
  // In A2 every Kazhdan-Lusztig polynomial is trivial.
  CHECK(h.kl_element(w.parse("sts")) == h.longest_kl(3));
  CHECK(h.kl_element(w.parse("st")) == h.mul(h.parse("uHs"), h.parse("uHt")));
}

TEST_CASE("eigenvector identity and trace property") {
  for (const char* preset : {"A2", "B2"}) {
    CoxeterGroup w(load_preset(preset).coxeter);
    Hecke h(w);
    for (SubsetMask s : w.finitary_subsets()) {
      auto u = h.longest_kl(s);
      for (auto& x : w.parabolic(s).elements) CHECK(h.mul(u, h.standard(x)) == Laurent::monomial(-x.length()) * u);
    }
    std::mt19937 rng(5);
    auto els = w.all_elements();
    for (int i = 0; i < 30; ++i) {
      auto a = h.standard(els[rng() % els.size()], L("v + 2")) + h.standard(els[rng() % els.size()], L("v^-2"));
      auto b = h.standard(els[rng() % els.size()]) + h.standard(els[rng() % els.size()], L("3 - v"));
      CHECK(h.eps(h.mul(a, b)) == h.eps(h.mul(b, a)));
      CHECK(h.omega(h.mul(a, b)) == h.mul(h.omega(b), h.omega(a)));
      CHECK(h.bar(h.mul(a, b)) == h.mul(h.bar(a), h.bar(b)));
    }
  }
}
