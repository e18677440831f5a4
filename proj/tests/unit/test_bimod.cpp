#include <doctest.h>

#include "soergel/bimod.hpp"
#include "soergel/errors.hpp"

using namespace soergel;

namespace {
struct BCtx {
  Realization r;
  CoxeterGroup w;
  Schubert sc;
  Hecke h;
  Bimod b;
  explicit BCtx(const char* preset, Field f = Field{}) : r(load_preset(preset, &f)), w(r.coxeter), sc(r, w), h(w), b(r, w, sc, h) {}
  HeckeElt H(const std::string& s) const { return h.parse(s); }
  std::vector<Gen> word(const std::string& s) const { return w.parse(s).word; }
};
}  // namespace

TEST_CASE("characters of Bott-Samelson objects") {
  BCtx k("A2-GL3");
  CHECK(k.b.ch(k.b.unit()) == k.H("1"));
  auto bs = k.b.bs({0});
  CHECK(k.b.check_weights(bs));
  CHECK(k.b.ch(bs) == k.H("1 + v^-1 Hs"));
  CHECK(k.b.std_grk(bs, k.w.parse("s")) == Laurent::monomial(-2));
  auto bst = k.b.bs({0, 1});
  CHECK(k.b.check_weights(bst));
  CHECK(k.b.ch(bst) == k.h.mul(k.H("v^-1 Hs + 1"), k.H("v^-1 Ht + 1")));
  CHECK(k.b.ch(k.b.shift(bs, 1)) == Laurent::monomial(1) * k.b.ch(bs));
}

TEST_CASE("generic line and full truncations agree") {
  BCtx k("A2-GL3");
  auto m = k.b.bs({0, 1, 0});
  auto a = k.b.ch(m);
  k.b.set_method(TruncationMethod::Full);
  CHECK(k.b.ch(m) == a);
}

TEST_CASE("Frobenius extension objects") {
  BCtx k("A2-GL3");
  for (bool fb : {false, true}) {
    auto f = k.b.frobenius(3, fb);
    CHECK(f.rank() == 6);
    CHECK(k.b.check_weights(f));
    for (auto& x : k.w.all_elements()) CHECK(k.b.std_grk(f, x) == Laurent::monomial(-2 * x.length()));
  }
}

TEST_CASE("push of the unit") {
  BCtx k("A2-GL3");
  auto p = k.b.push(k.b.unit(), 1, 2);
  auto c = k.b.sing_ch(p);
  CHECK(c == Laurent::monomial(-1) * k.h.sing_basis_elt(1, 2, k.w.identity()));
  auto u = k.b.unit_singular(1);
  CHECK(k.b.sing_ch(u) == k.h.sing_basis_elt(1, 1, k.w.identity()));
}

TEST_CASE("endomorphisms") {
  BCtx k("A2-GL3");
  auto bs = k.b.push(k.b.bs({0}), 0, 0);
  auto e = k.b.hom(bs, bs);
  CHECK(e.stable);
  CHECK(e.grk == Laurent(1) + Laurent::monomial(-2));
  auto p = k.b.push(k.b.unit(), 1, 2);
  auto e2 = k.b.hom(p, p);
  CHECK(e2.grk == k.h.hom_grk_formula(k.b.sing_ch(p), k.b.sing_ch(p)));
}

TEST_CASE("convolution with the unit") {
  BCtx k("A2-GL3");
  auto p = k.b.push(k.b.bs({1}), 1, 0);
  auto u = k.b.unit_singular(1);
  auto c = k.b.convolve(u, p);
  CHECK(k.b.sing_ch(c) == k.b.sing_ch(p));
  auto q = k.b.push(k.b.bs({0}), 0, 2);
  auto pq = k.b.convolve(p, q);
  CHECK(k.b.sing_ch(pq) == k.h.star(k.b.sing_ch(p), k.b.sing_ch(q)));
}

TEST_CASE("duality") {
  BCtx k("A2-GL3");
  CHECK(k.b.ch(k.b.dual(k.b.unit())) == k.H("1"));
  auto bs = k.b.bs({0});
  auto d = k.b.dual(bs);
  CHECK(k.b.check_weights(d));
  CHECK(k.b.ch(d) == k.h.bar(k.b.ch(bs)));
  auto bst = k.b.bs({0, 1});
  CHECK(k.b.ch(k.b.dual(bst)) == k.h.bar(k.b.ch(bst)));
  CHECK(k.b.ch(k.b.dual(k.b.dual(bst))) == k.b.ch(bst));
  auto p = k.b.push(bs, 1, 0);
  auto dp = k.b.sing_dual(p);
  CHECK(k.b.sing_ch(dp) == k.h.sing_bar(k.b.sing_ch(p)));
}

TEST_CASE("morphisms between cut-down objects") {
  BCtx k("A2-GL3");
  auto u = k.b.unit_singular(1);
  auto e = k.b.hom(u, u);
  CHECK(e.stable);
  CHECK(e.grk == Laurent(1));
  auto p = k.b.push(k.b.bs({1}), 1, 0);
  auto up = k.b.convolve(u, p);
  CHECK(k.b.hom(up, p).grk == k.h.hom_grk_formula(k.b.sing_ch(up), k.b.sing_ch(p)));
}

TEST_CASE("pullback") {
  BCtx k("A2-GL3");
  auto p = k.b.push(k.b.bs({1}), 1, 2);
  auto q = k.b.pullback(p, 0, 0);
  CHECK(k.b.ch(q.base) == Laurent::monomial(-1) * k.h.from_singular(k.b.sing_ch(p)));
  // underlying space of the pull-push is a sum of shifted copies, one per (w1, w2)
  CHECK(k.b.hilbert(k.b.push(q.base, 0, 0)) ==
        (Laurent(1) + Laurent::monomial(2)) * (Laurent(1) + Laurent::monomial(2)) * k.b.hilbert(k.b.push(k.b.bs({1}), 0, 0)));
  auto u = k.b.pullback(k.b.unit_singular(1), 0, 0);
  CHECK(k.b.sing_ch(u) == k.h.to_singular(k.b.ch(k.b.bs({0})), 0, 0));
  auto same = k.b.pullback(p, 1, 2);
  CHECK(k.b.sing_ch(same) == k.b.sing_ch(p));
}

TEST_CASE("decomposition") {
  BCtx k("A2-GL3");
  auto d = k.b.decompose(k.b.push(k.b.unit(), 1, 2));
  REQUIRE(d.summands.size() == 1);
  CHECK(d.summands[0].coset_min == k.w.identity());
  CHECK(d.summands[0].shift == -1);

  auto ss = k.b.decompose(k.b.push(k.b.bs({0, 0}), 0, 0));
  REQUIRE(ss.summands.size() == 2);
  CHECK(ss.summands[0].coset_min == k.w.parse("s"));
  // BS(s,s) = BS(s) + BS(s)(-2) and BS(s) = B(s)(-1)
  CHECK(ss.summands[0].shift == -3);
  CHECK(ss.summands[1].shift == -1);
  auto bs = k.b.sing_ch(k.b.push(k.b.bs({0}), 0, 0));
  CHECK(ss.summands[1].ch == bs);
  CHECK(ss.summands[0].ch == Laurent::monomial(-2) * bs);

  auto ts = k.b.push(k.b.bs({1, 0}), 1, 2);
  auto dt = k.b.decompose(ts);
  SingularHeckeElt sum;
  sum.s1 = 1;
  sum.s2 = 2;
  for (auto& s : dt.summands) sum += s.ch;
  CHECK(sum == k.b.sing_ch(ts));
  CHECK(dt.summands.size() == 3);
}
