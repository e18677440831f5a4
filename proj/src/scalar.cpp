#include "soergel/scalar.hpp"

#include "soergel/errors.hpp"

namespace soergel {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Scalar::Scalar(long v) {
  if (v != 0) q_ = std::make_unique<mpq_class>(v);
}

Scalar::Scalar(const mpq_class& q) {
  if (sgn(q) != 0) {
    q_ = std::make_unique<mpq_class>(q);
    q_->canonicalize();
  }
}

Scalar::Scalar(const Scalar& o) : p_(o.p_), r_(o.r_) {
  if (o.q_) q_ = std::make_unique<mpq_class>(*o.q_);
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this != &o) {
    p_ = o.p_;
    r_ = o.r_;
    q_ = o.q_ ? std::make_unique<mpq_class>(*o.q_) : nullptr;
  }
  return *this;
}

Scalar Scalar::modp(std::uint32_t p, std::uint64_t residue) {
  Scalar s;
  s.p_ = p;
  s.r_ = residue % p;
  return s;
}

std::uint64_t Scalar::reduce_rational(const mpq_class& q, std::uint32_t p) {
  mpz_class n = q.get_num() % p;
  if (n < 0) n += p;
  mpz_class d = q.get_den() % p;
  if (d == 0) fail(ErrorCode::FieldMismatch, "denominator divisible by the characteristic");
  std::uint64_t nn = n.get_ui(), dd = d.get_ui();
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(nn) * pow_mod(dd, p - 2, p) % p);
}

Scalar Scalar::in_field(std::uint32_t p) const {
  if (p == p_) return *this;
  if (p_ != 0) fail(ErrorCode::FieldMismatch, "cannot move an F_p value to another field");
  return modp(p, q_ ? reduce_rational(*q_, p) : 0);
}

Scalar Scalar::parse(const std::string& text, std::uint32_t p) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) fail(ErrorCode::SchemaError, "empty number");
  if (t[0] == '+') t = t.substr(1);
  mpq_class q;
  if (q.set_str(t, 10) != 0) fail(ErrorCode::SchemaError, "bad number '" + text + "'");
  if (q.get_den() == 0) fail(ErrorCode::SchemaError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return Scalar(q).in_field(p);
}

bool Scalar::is_one() const { return p_ ? r_ == 1 : q_ && *q_ == 1; }

mpq_class Scalar::rational() const {
  if (p_) return mpq_class(static_cast<unsigned long>(r_));
  return q_ ? *q_ : mpq_class(0);
}

void Scalar::unify(const Scalar& o) {
  if (p_ == o.p_) return;
  if (p_ == 0) {
    *this = in_field(o.p_);
    return;
  }
  if (o.p_ != 0) fail(ErrorCode::FieldMismatch, "mixed prime fields");
}

Scalar Scalar::operator-() const {
  Scalar s(*this);
  if (p_) {
    s.r_ = r_ ? p_ - r_ : 0;
  } else if (s.q_) {
    *s.q_ = -*s.q_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  unify(o);
  if (p_) {
    std::uint64_t b = o.p_ ? o.r_ : reduce_rational(o.rational(), p_);
    r_ += b;
    if (r_ >= p_) r_ -= p_;
    return *this;
  }
  if (!o.q_) return *this;
  if (!q_) {
    q_ = std::make_unique<mpq_class>(*o.q_);
    return *this;
  }
  *q_ += *o.q_;
  if (sgn(*q_) == 0) q_.reset();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  unify(o);
  if (p_) {
    std::uint64_t b = o.p_ ? o.r_ : reduce_rational(o.rational(), p_);
    r_ = r_ * b % p_;
    return *this;
  }
  if (!q_) return *this;
  if (!o.q_) {
    q_.reset();
    return *this;
  }
  *q_ *= *o.q_;
  return *this;
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(ErrorCode::InexactDivision, "division by zero scalar");
  if (p_) return modp(p_, pow_mod(r_, p_ - 2, p_));
  return Scalar(mpq_class(1) / *q_);
}

Scalar& Scalar::operator/=(const Scalar& o) {
  unify(o);
  return *this *= o.in_field(p_).inv();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) {
    if (a.p_) return a.r_ == b.r_;
    if (!a.q_ || !b.q_) return a.is_zero() && b.is_zero();
    return *a.q_ == *b.q_;
  }
  if (a.p_ && b.p_) return false;
  std::uint32_t p = a.p_ ? a.p_ : b.p_;
  return a.in_field(p).r_ == b.in_field(p).r_;
}

std::string Scalar::str() const {
  if (p_) {
    // symmetric representative keeps small negatives readable
    if (r_ > p_ / 2) return "-" + std::to_string(p_ - r_);
    return std::to_string(r_);
  }
  return q_ ? q_->get_str() : "0";
}

Field parse_field(const std::string& text) {
  if (text.empty() || text == "Q") return Field{0};
  std::string digits;
  if (text[0] == 'F') digits = text.substr(1);
  else digits = text;
  if (!digits.empty() && (digits[0] == 'p' || digits[0] == ':')) digits = digits.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::SchemaError, "bad field '" + text + "' (expected Q, F<p>)");
  unsigned long long p = std::stoull(digits);
  if (p >= (1ull << 31) || !is_prime(p)) fail(ErrorCode::SchemaError, "field characteristic must be a prime below 2^31");
  return Field{static_cast<std::uint32_t>(p)};
}

}  // namespace soergel
