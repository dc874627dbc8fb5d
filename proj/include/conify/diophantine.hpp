#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conify/exactnum.hpp"

namespace conify {

// Positive weights w_1..w_l living in Q or in one real quadratic field.
class ReebVector {
 public:
  ReebVector(std::vector<ExactScalar> entries, std::int64_t n = 0);

  const std::vector<ExactScalar>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const ExactScalar& operator[](std::size_t i) const { return entries_[i]; }
  std::int64_t n() const { return n_; }
  // 0 when every entry is rational.
  std::int64_t radicand() const { return d_; }
  // Dimension of the Q-span of the entries.
  int rank() const { return rank_; }
  // Dimension of the Q-span of the entries together with 1, minus one.
  int s() const { return s_; }
  bool is_rational() const { return s_ == 0; }
  ExactScalar min_entry() const;

 private:
  std::vector<ExactScalar> entries_;
  std::int64_t n_ = 0;
  std::int64_t d_ = 0;
  int rank_ = 0;
  int s_ = 0;
};

int rational_rank(const ReebVector& v);
bool one_in_span(const ReebVector& v);

// w[order[s + j]] = (sum_i a[i][j] * w[order[i - 1]] + a[0][j]) / m for
// 1 <= i <= s and 0 <= j < l - s.
struct AffineHull {
  std::vector<std::size_t> reorder;
  int s = 0;
  Integer m = 1;
  std::vector<std::vector<Integer>> a;  // (s + 1) rows, l - s columns

  bool verify(const ReebVector& v) const;
  Integer max_abs_coefficient() const;  // over the rows i >= 1
};

AffineHull affine_hull(const ReebVector& v);

struct ApproximantReport {
  Integer D;
  std::vector<Integer> w_tilde;
  Integer N;
  std::vector<ExactScalar> errors;  // |D w_i - w_tilde_i|
  bool nice = false;
  // One per coordinate: the integer comparison behind error_i < 1/N.
  std::vector<SignCertificate> bound_certificates;
  // Witness for w_tilde / D lying in the reference cone, when checked.
  std::optional<std::string> cone_certificate;

  std::vector<Rational> approximant() const;  // w_tilde / D
  std::vector<std::string> error_strings() const;
  std::vector<std::string> certificate_strings() const;
};

// Recomputes errors and certificates for the given data; nice iff every
// error is below 1/N.
ApproximantReport make_report(const ReebVector& v, const Integer& D, std::vector<Integer> w_tilde, const Integer& N);

ApproximantReport dirichlet_approximant(const ReebVector& v, const Integer& N, std::uint64_t cap = 1'000'000);

Integer default_N(const ReebVector& v);

// Either a finite list of generators, or the cone over the rational box
// prod [lo_i, hi_i].
struct ConeDescription {
  enum class Kind { Generated, Box };
  Kind kind = Kind::Generated;
  std::vector<std::vector<Rational>> generators;
  bool simplicial = false;
  std::vector<Rational> lo;
  std::vector<Rational> hi;
  // Indices into generators of a linearly independent subset whose cone
  // contains the target vector.
  std::vector<std::size_t> simplicial_subset;
  // Integer comparisons placing the target between generators.
  std::vector<SignCertificate> bracket_certificates;
  // Every assembled approximant behind the generators.
  std::vector<ApproximantReport> approximants;

  std::size_t dimension() const;
  static ConeDescription ray(const std::vector<Rational>& v);
  static ConeDescription box(std::vector<Rational> lo, std::vector<Rational> hi);
};

// Cone over the box [3/4 q_i, 5/4 q_i] around a rational inner
// approximation q of v with |v_i - q_i| <= v_i / 8.
ConeDescription default_cone(const ReebVector& v);

struct ConeMembership {
  bool contains = false;
  // Generated cones: coefficients for the generators in `basis`.
  std::vector<std::size_t> basis;
  std::vector<ExactScalar> coefficients;
  // Box cones: the scale lambda with lambda * v inside the box.
  std::optional<ExactScalar> scale;
  std::string certificate() const;
};

ConeMembership cone_contains(const ConeDescription& sigma, const std::vector<ExactScalar>& v);
ConeMembership cone_contains(const ConeDescription& sigma, const std::vector<Rational>& v);

ApproximantReport nice_approximant(const ReebVector& v, const ConeDescription& sigma, const Integer& N,
                                   std::uint64_t cap = 1'000'000);

struct CornerHit {
  std::vector<int> corner;  // 0: fractional part near 0, 1: near 1
  Integer C;
  std::vector<Integer> v_tilde;
  std::vector<ExactScalar> fractional_parts;
};

// N' large enough that the lifted approximants stay below 1/N.
Integer default_N_prime(const AffineHull& hull, const Integer& N);

std::vector<CornerHit> kronecker_corner_search(const ReebVector& v, const Integer& n_prime,
                                               std::uint64_t cap = 1'000'000);

ConeDescription build_sigma_prime(const ReebVector& v, const std::vector<CornerHit>& corners, const AffineHull& hull,
                                  const Integer& N);

// p D d(xi, xi') < p / (N min w) < eps' / 2, with
// d(xi, xi') = max_i |w_i - w'_i| / w_i.
bool verify_claim_dio(const ReebVector& v, const ApproximantReport& report, const Rational& p,
                      const Rational& eps_prime);

}  // namespace conify
