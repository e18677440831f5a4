#include <doctest.h>

#include <random>

#include "soergel/errors.hpp"
#include "soergel/laurent.hpp"
#include "soergel/linalg.hpp"
#include "soergel/polynomial.hpp"
#include "soergel/scalar.hpp"
#include "soergel/simd/mod_kernels.hpp"

using namespace soergel;

TEST_CASE("scalar arithmetic over Q and F_p") {
  Scalar a = Scalar::parse("3/4", 0), b = Scalar::parse("-1/6", 0);
  CHECK((a + b).str() == "7/12");
  CHECK((a * b).str() == "-1/8");
  CHECK((a / b).str() == "-9/2");
  Scalar x = Scalar::parse("1/2", 7);
  CHECK((x * Scalar(2L)).is_one());
  CHECK(Scalar::modp(7, 6).str() == "-1");
  CHECK(is_prime(kLargePrime));
  CHECK(!is_prime(kLargePrime + 2));
  CHECK(kLargePrime < (1u << 26));
  for (std::uint32_t q = kLargePrime + 1; q < (1u << 26); ++q) CHECK(!is_prime(q));
  CHECK(parse_field("F2").p == 2);
  CHECK_THROWS_AS(parse_field("F4"), Error);
}

TEST_CASE("simd kernels agree with the scalar reference") {
  const simd::ModKernels* vec = simd::avx2_kernels();
  if (!vec) return;
  const simd::ModKernels* ref = &simd::scalar_kernels();
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 65521u, kLargePrime}) {
    for (std::size_t n : {1u, 3u, 4u, 17u, 100u}) {
      std::vector<double> src(n), d1(n), d2;
      for (std::size_t i = 0; i < n; ++i) {
        src[i] = static_cast<double>(rng() % p);
        d1[i] = static_cast<double>(rng() % p);
      }
      d2 = d1;
      double c = static_cast<double>(rng() % p);
      ref->axpy(d1.data(), src.data(), c, n, p);
      vec->axpy(d2.data(), src.data(), c, n, p);
      CHECK(d1 == d2);
      ref->scale(d1.data(), c, n, p);
      vec->scale(d2.data(), c, n, p);
      CHECK(d1 == d2);
    }
  }
}

TEST_CASE("elimination is identical with and without vector kernels") {
  Field f{kLargePrime};
  std::mt19937_64 rng(11);
  Mat a(9, 14, f);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 14; ++j)
      if (rng() % 3) a.set(i, j, Scalar::modp(f.p, rng() % f.p));
  Mat b = a;
  simd::force_scalar(true);
  auto pa = a.rref();
  simd::force_scalar(false);
  auto pb = b.rref();
  CHECK(pa == pb);
  CHECK(a == b);
}

TEST_CASE("kernel and solve over Q") {
  Field q;
  Mat a(2, 3, q);
  a.set(0, 0, 1);
  a.set(0, 1, 2);
  a.set(1, 2, 1);
  Mat k = kernel(a);
  CHECK(k.cols() == 1);
  CHECK((a * k).get(0, 0).is_zero());
  auto x = solve(a, {Scalar(3L), Scalar(5L)});
  REQUIRE(x);
  CHECK((*x)[0] == Scalar(3L));
  CHECK((*x)[2] == Scalar(5L));
  CHECK(rank(a) == 2);
}

TEST_CASE("laurent polynomials") {
  Laurent a = Laurent::parse("v^-1 - v");
  CHECK(a.str() == "v^-1 - v");
  CHECK(a.bar() == -a);
  Laurent b = Laurent::parse("v + v^-1");
  CHECK((a * b).str() == "v^-2 - v^2");
  CHECK((a * b).exact_div(b) == a);
  CHECK_THROWS_AS(Laurent(1).exact_div(b), Error);
  CHECK(Laurent::parse("(2 + v^2)").coeff(2) == 1);
}

TEST_CASE("polynomials") {
  Polynomial e1 = Polynomial::var(3, 0, 1), e2 = Polynomial::var(3, 1, 1);
  Polynomial f = (e1 - e2) * (e1 + e2);
  CHECK(f.str() == "e1^2 - e2^2");
  CHECK(f.divide_linear(e1 - e2) == e1 + e2);
  CHECK_THROWS_AS(f.divide_linear(e1), Error);
  CHECK(f.substitute({e2, e1, Polynomial::var(3, 2, 1)}) == -f);
  CHECK(MonomialBasis::get(3, 2).size() == 6);
  auto c = coords(f, 2, Field{});
  CHECK(from_coords(3, 2, c) == f);
  CHECK(Polynomial::from_map(3, f.to_map(), 0) == f);
}
