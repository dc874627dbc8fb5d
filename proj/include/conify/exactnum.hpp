#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "conify/errors.hpp"

namespace conify {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
bool is_squarefree(std::int64_t d);

// Exact integer comparison that decided the sign of a + b*sqrt(d) when a and b
// have opposite signs: both sides are scaled to integers A, B and A^2 is
// compared against B^2*d. `mixed` is false when the signs of a and b alone
// decided the answer.
struct SignCertificate {
  int sign = 0;
  bool mixed = false;
  Integer lhs;  // the smaller side of the comparison
  Integer rhs;  // the larger side

  std::string str() const;
};

// An element a + b*sqrt(d) of Q(sqrt d), or a plain rational when b = 0.
// Canonical form: b == 0 implies d == 0, rationals in lowest terms.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  ExactScalar(Rational a, Rational b, std::int64_t d);

  // sqrt(n) for a positive integer n, with the square part pulled out.
  static ExactScalar sqrt_of(std::int64_t n);

  // Scalar syntax: rationals, `s` (the declared sqrt(d)), `sqrt(n)`, and
  // + - * / with parentheses. `field_d` is 0 for a rational-only context.
  static ExactScalar parse(std::string_view text, std::int64_t field_d = 0);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_integer() const { return is_rational() && a_.get_den() == 1; }

  int sign() const;
  SignCertificate sign_certificate() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar p, const ExactScalar& q) { return p += q; }
  friend ExactScalar operator-(ExactScalar p, const ExactScalar& q) { return p -= q; }
  friend ExactScalar operator*(ExactScalar p, const ExactScalar& q) { return p *= q; }
  friend ExactScalar operator/(ExactScalar p, const ExactScalar& q) { return p /= q; }

  friend bool operator==(const ExactScalar& p, const ExactScalar& q) {
    return p.d_ == q.d_ && p.a_ == q.a_ && p.b_ == q.b_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& p, const ExactScalar& q);

  ExactScalar conjugate() const;
  ExactScalar abs() const { return sign() < 0 ? -*this : *this; }

  Integer floor() const;
  Integer ceil() const;
  Integer nearest() const;  // floor(x + 1/2)
  ExactScalar frac() const;  // x - floor(x), in [0, 1)

  // For display and the floating-point module only; never used for decisions.
  double to_double() const;

  std::string str() const;

 private:
  static std::int64_t common_radicand(const ExactScalar& p, const ExactScalar& q);
  void canonicalize();

  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& q);

inline ExactScalar abs(const ExactScalar& x) { return x.abs(); }
inline ExactScalar min(const ExactScalar& p, const ExactScalar& q) { return q < p ? q : p; }
inline ExactScalar max(const ExactScalar& p, const ExactScalar& q) { return p < q ? q : p; }

}  // namespace conify
