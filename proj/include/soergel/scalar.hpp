#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

namespace soergel {

// Element of the coefficient field: the rationals (characteristic 0) or F_p.
// A rational value mixed with an F_p value is reduced mod p on the fly, so integer
// constants written in code work in every field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT
  explicit Scalar(const mpq_class& q);
  Scalar(const Scalar& o);
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&&) noexcept = default;

  static Scalar modp(std::uint32_t p, std::uint64_t residue);
  static Scalar zero(std::uint32_t p) { return p ? modp(p, 0) : Scalar(); }
  static Scalar one(std::uint32_t p) { return p ? modp(p, 1) : Scalar(1L); }
  // Parses "a", "-a", "a/b"; reduces mod p when p != 0.
  static Scalar parse(const std::string& text, std::uint32_t p);

  std::uint32_t prime() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : !q_ || sgn(*q_) == 0; }
  bool is_one() const;
  std::uint64_t residue() const { return r_; }
  mpq_class rational() const;
  // Same value reduced into F_p (identity when already there); p = 0 keeps rationals.
  Scalar in_field(std::uint32_t p) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inv() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  void unify(const Scalar& o);
  static std::uint64_t reduce_rational(const mpq_class& q, std::uint32_t p);

  std::uint32_t p_ = 0;
  std::uint64_t r_ = 0;
  std::unique_ptr<mpq_class> q_;  // rationals only; null means 0
};

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
bool is_prime(std::uint64_t n);

// Coefficient field descriptor. p = 0 means the rationals.
struct Field {
  std::uint32_t p = 0;
  Scalar zero() const { return Scalar::zero(p); }
  Scalar one() const { return Scalar::one(p); }
  Scalar of(long v) const { return Scalar(v).in_field(p); }
  std::string name() const { return p ? "F" + std::to_string(p) : "Q"; }
  bool operator==(const Field& o) const { return p == o.p; }
};

// Default prime for fast exact runs: the largest prime below 2^26, so that products
// fit in the 52-bit mantissa used by the vectorized elimination kernels.
inline constexpr std::uint32_t kLargePrime = 67108859u;

Field parse_field(const std::string& text);

}  // namespace soergel
