#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conify/exactnum.hpp"

namespace conify {

// Ordered list of variable names. Cheap to copy; equality is by content.
class Ring {
 public:
  Ring() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit Ring(std::vector<std::string> names);

  std::size_t arity() const { return names_->size(); }
  const std::vector<std::string>& names() const { return *names_; }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // A name not yet used in the ring, derived from `stem`.
  std::string fresh_name(const std::string& stem) const;
  Ring with_appended(const std::string& name) const;
  Ring with_prepended(const std::string& name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<Exponent> exponents) : e_(std::move(exponents)) {}
  static Monomial variable(std::size_t arity, std::size_t index, Exponent power = 1);

  std::size_t arity() const { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  const std::vector<Exponent>& exponents() const { return e_; }
  std::uint64_t degree() const;
  bool is_one() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divides(); the quotient other / *this is returned by other.over(*this).
  Monomial over(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Exponent> e_;
};

// Orders on monomials of a fixed arity. An order is a tie-break (grevlex or
// lex, optionally split into two blocks for elimination) refined by an
// optional weight vector. Global weight orders put heavier monomials first;
// local weight orders put lighter first and remain monomial orders, but are
// not well orders.
class MonomialOrder {
 public:
  enum class Base { Grevlex, Lex };
  enum class WeightDirection { Global, Local };

  static MonomialOrder grevlex() { return MonomialOrder(Base::Grevlex); }
  static MonomialOrder lex() { return MonomialOrder(Base::Lex); }
  // Block order: the first `block` variables are compared first (grevlex),
  // then the rest. Any element whose leading monomial is free of the first
  // block lies entirely in the subring of the remaining variables.
  static MonomialOrder elimination(std::size_t block);
  static MonomialOrder weighted(std::vector<ExactScalar> weights,
                                WeightDirection direction = WeightDirection::Global,
                                Base tie_break = Base::Grevlex);

  // +1 if a > b, -1 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  Base base() const { return base_; }
  std::size_t block() const { return block_; }
  bool is_weighted() const { return !weights_.empty(); }
  bool is_global() const;
  const std::vector<ExactScalar>& weights() const { return weights_; }
  WeightDirection direction() const { return direction_; }
  std::string describe() const;

 private:
  explicit MonomialOrder(Base base) : base_(base) {}
  int compare_base(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) const;
  int compare_weight(const Monomial& a, const Monomial& b) const;

  Base base_ = Base::Grevlex;
  std::size_t block_ = 0;
  std::vector<ExactScalar> weights_;
  WeightDirection direction_ = WeightDirection::Global;
  // Weights scaled by a common positive integer: weight_i ~ int_a_[i] + int_b_[i]*sqrt(d).
  std::vector<std::int64_t> int_a_;
  std::vector<std::int64_t> int_b_;
  std::int64_t radicand_ = 0;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

// Polynomial over Q. Terms are kept sorted in descending grevlex order with no
// zero coefficients, so iteration and printing are deterministic.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
  Polynomial(Ring ring, std::vector<Term> terms);  // any order, duplicates merged

  static Polynomial constant(Ring ring, const Rational& c);
  static Polynomial variable(Ring ring, std::size_t index);
  static Polynomial monomial(Ring ring, Monomial m, const Rational& c = 1);
  static Polynomial parse(std::string_view text, const Ring& ring);

  const Ring& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const;
  std::uint64_t total_degree() const;

  const Term& leading_term(const MonomialOrder& order) const;
  Polynomial monic(const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const Rational& c) const;
  Polynomial times(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned k) const;

  Polynomial derivative(std::size_t var) const;
  // Replace variable `var` by the constant c.
  Polynomial substitute(std::size_t var, const Rational& c) const;
  // Re-express in a larger ring; `index_map[i]` is the new index of variable i.
  Polynomial embed(const Ring& target, std::span<const std::size_t> index_map) const;
  // Drop variables whose exponent is zero in every term; requires it.
  Polynomial restrict_to(const Ring& target, std::span<const std::size_t> index_map) const;
  bool involves(std::size_t var) const;

  std::string str() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_ == b.ring_ && a.terms_.size() == b.terms_.size() && a.same_terms(b);
  }

 private:
  bool same_terms(const Polynomial& o) const;
  void normalize();

  Ring ring_;
  std::vector<Term> terms_;
};

std::string monomial_str(const Monomial& m, const Ring& ring);

// Positive weights on ring variables. When t_weight is set, the last ring
// variable is the family parameter t and carries weight -t_weight.
struct WeightData {
  std::vector<ExactScalar> weights;
  std::optional<Rational> t_weight;
  std::optional<Rational> form_weight;

  std::size_t arity() const { return weights.size() + (t_weight ? 1 : 0); }
  bool all_integer() const;
  std::vector<std::int64_t> integer_weights() const;  // throws unless all_integer()
  void validate() const;
};

ExactScalar term_weight(const Monomial& m, const WeightData& wd);
// Minimal-weight part of f.
Polynomial initial_form(const Polynomial& f, const WeightData& wd);

struct Homogeneity {
  bool homogeneous = false;
  std::optional<ExactScalar> weight;  // absent for the zero polynomial
};
Homogeneity is_homogeneous(const Polynomial& f, const WeightData& wd);

}  // namespace conify
