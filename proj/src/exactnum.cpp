#include "conify/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace conify {

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

std::string SignCertificate::str() const {
  if (!mixed) return "sign decided by coefficient signs";
  return lhs.get_str() + " < " + rhs.get_str();
}

ExactScalar::ExactScalar(Rational a, Rational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (sgn(b_) != 0 && !is_squarefree(d_)) {
    throw PreconditionError("radicand must be a squarefree integer >= 2, got " + std::to_string(d_));
  }
  canonicalize();
}

void ExactScalar::canonicalize() {
  if (sgn(b_) == 0) d_ = 0;
}

ExactScalar ExactScalar::sqrt_of(std::int64_t n) {
  if (n < 0) throw PreconditionError("sqrt of a negative integer");
  std::int64_t square = 1;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      square *= p;
    }
  }
  if (rest == 1 || n == 0) return ExactScalar(Rational(n == 0 ? 0 : square));
  return ExactScalar(Rational(0), Rational(square), rest);
}

std::int64_t ExactScalar::common_radicand(const ExactScalar& p, const ExactScalar& q) {
  if (p.d_ == 0) return q.d_;
  if (q.d_ == 0 || p.d_ == q.d_) return p.d_;
  throw FieldMismatch("scalars from Q(sqrt " + std::to_string(p.d_) + ") and Q(sqrt " +
                      std::to_string(q.d_) + ") cannot be combined");
}

int ExactScalar::sign() const { return sign_certificate().sign; }

SignCertificate ExactScalar::sign_certificate() const {
  SignCertificate cert;
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) {
    cert.sign = sa;
    return cert;
  }
  if (sa == 0 || sa == sb) {
    cert.sign = sb;
    return cert;
  }
  // Opposite signs: compare A^2 with B^2 d over a common denominator.
  Integer den;
  mpz_lcm(den.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
  const Integer big_a = a_.get_num() * (den / a_.get_den());
  const Integer big_b = b_.get_num() * (den / b_.get_den());
  const Integer a_sq = big_a * big_a;
  const Integer b_sq_d = big_b * big_b * Integer(static_cast<long>(d_));
  cert.mixed = true;
  if (a_sq > b_sq_d) {
    cert.sign = sa;
    cert.lhs = b_sq_d;
    cert.rhs = a_sq;
  } else {
    // Equality would make d a rational square, which squarefree d >= 2 excludes.
    cert.sign = sb;
    cert.lhs = a_sq;
    cert.rhs = b_sq_d;
  }
  return cert;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  d_ = common_radicand(*this, o);
  a_ += o.a_;
  b_ += o.b_;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  d_ = common_radicand(*this, o);
  a_ -= o.a_;
  b_ -= o.b_;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  const std::int64_t d = common_radicand(*this, o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(static_cast<long>(d));
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  canonicalize();
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw DivisionByZero();
  const std::int64_t d = common_radicand(*this, o);
  // (a + b s) / (c + e s) = (a + b s)(c - e s) / (c^2 - e^2 d)
  const Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(static_cast<long>(d));
  *this *= o.conjugate();
  a_ /= norm;
  b_ /= norm;
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const ExactScalar& p, const ExactScalar& q) {
  const int s = (p - q).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactScalar ExactScalar::conjugate() const {
  ExactScalar r = *this;
  r.b_ = -r.b_;
  return r;
}

Integer ExactScalar::floor() const {
  if (is_rational()) return floor_of(a_);
  // Bracket b*sqrt(d) between consecutive integers by squaring, then fix up
  // the sum with exact sign tests.
  const Rational sq = b_ * b_ * Rational(static_cast<long>(d_));
  Integer root;
  mpz_sqrt(root.get_mpz_t(), floor_of(sq).get_mpz_t());
  Integer lo = floor_of(a_) + (sgn(b_) > 0 ? root : Integer(-root - 1));
  while ((*this - ExactScalar(Rational(lo + 1))).sign() >= 0) ++lo;
  while ((*this - ExactScalar(Rational(lo))).sign() < 0) --lo;
  return lo;
}

Integer ExactScalar::ceil() const {
  Integer f = floor();
  if ((*this - ExactScalar(Rational(f))).is_zero()) return f;
  return f + 1;
}

Integer ExactScalar::nearest() const { return (*this + ExactScalar(Rational(1, 2))).floor(); }

ExactScalar ExactScalar::frac() const { return *this - ExactScalar(Rational(floor())); }

double ExactScalar::to_double() const {
  if (is_rational()) return a_.get_d();
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string ExactScalar::str() const {
  if (is_rational()) return to_string(a_);
  std::string radical = to_string(Rational(::abs(b_))) + "*sqrt(" + std::to_string(d_) + ")";
  if (sgn(a_) == 0) return (sgn(b_) < 0 ? "-" : "") + radical;
  return to_string(a_) + (sgn(b_) < 0 ? "-" : "+") + radical;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& q) { return os << q.str(); }

// --- parsing -------------------------------------------------------------

namespace {

class ScalarParser {
 public:
  ScalarParser(std::string_view text, std::int64_t field_d) : text_(text), field_d_(field_d) {}

  ExactScalar run() {
    ExactScalar v = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("scalar '" + std::string(text_) + "': " + what, 0, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactScalar expr() {
    ExactScalar v = term();
    for (;;) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  ExactScalar term() {
    ExactScalar v = factor();
    for (;;) {
      if (accept('*')) {
        v *= factor();
      } else if (accept('/')) {
        ExactScalar den = factor();
        if (den.is_zero()) fail("division by zero");
        v /= den;
      } else {
        return v;
      }
    }
  }

  ExactScalar radical(std::int64_t n) {
    ExactScalar r = ExactScalar::sqrt_of(n);
    if (!r.is_rational()) {
      if (field_d_ == 0) {
        field_d_ = r.radicand();
      } else if (field_d_ != r.radicand()) {
        fail("sqrt(" + std::to_string(n) + ") lies outside Q(sqrt " + std::to_string(field_d_) + ")");
      }
    }
    return r;
  }

  ExactScalar factor() {
    skip_space();
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    if (accept('(')) {
      ExactScalar v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return ExactScalar(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("sqrt expects a non-negative integer");
      const std::int64_t n = std::stoll(std::string(text_.substr(start, pos_ - start)));
      if (!accept(')')) fail("expected ')'");
      return radical(n);
    }
    if (c == 's') {
      ++pos_;
      if (field_d_ == 0) fail("'s' used without a quadratic field declaration");
      return ExactScalar(Rational(0), Rational(1), field_d_);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::int64_t field_d_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactScalar ExactScalar::parse(std::string_view text, std::int64_t field_d) {
  if (field_d != 0 && !is_squarefree(field_d)) {
    throw PreconditionError("field radicand must be a squarefree integer >= 2");
  }
  return ScalarParser(text, field_d).run();
}

}  // namespace conify
