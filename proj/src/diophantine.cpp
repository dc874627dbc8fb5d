#include "conify/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace conify {

namespace {

ExactScalar from_integer(const Integer& z) { return ExactScalar(Rational(z)); }

Integer lcm_of_denominators(const std::vector<Rational>& qs) {
  Integer den = 1;
  for (const auto& q : qs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  return den;
}

// Signals that D * w_i is obviously more than `bound` away from an integer,
// judged in floating point with a generous margin. Never rejects a candidate
// that could pass the exact test.
bool clearly_far(double x, double bound) {
  const double e = std::fabs(x - std::nearbyint(x));
  return e > bound + 1e-9 * (1.0 + std::fabs(x));
}

}  // namespace

// --- ReebVector ----------------------------------------------------------

ReebVector::ReebVector(std::vector<ExactScalar> entries, std::int64_t n) : entries_(std::move(entries)), n_(n) {
  if (entries_.empty()) throw PreconditionError("weight vector is empty");
  if (n_ < 0) throw PreconditionError("dimension must be non-negative");
  for (const auto& w : entries_) {
    if (w.sign() <= 0) throw PreconditionError("weights must be positive, got " + w.str());
    if (!w.is_rational()) {
      if (d_ != 0 && d_ != w.radicand()) throw FieldMismatch("weights from different quadratic fields");
      d_ = w.radicand();
    }
  }
  if (d_ == 0) {
    rank_ = 1;
    s_ = 0;
    return;
  }
  s_ = 1;
  const auto lead = std::find_if(entries_.begin(), entries_.end(), [](const ExactScalar& w) { return !w.is_rational(); });
  const Rational a0 = lead->rational_part();
  const Rational b0 = lead->radical_part();
  rank_ = 1;
  for (const auto& w : entries_) {
    if (w.rational_part() * b0 != w.radical_part() * a0) rank_ = 2;
  }
}

ExactScalar ReebVector::min_entry() const { return *std::min_element(entries_.begin(), entries_.end()); }

int rational_rank(const ReebVector& v) { return v.rank(); }

bool one_in_span(const ReebVector& v) {
  if (v.rank() == 2 || v.is_rational()) return true;
  // Rank one with an irrational direction: the span is Q * (a + b s), b != 0.
  return false;
}

// --- AffineHull ----------------------------------------------------------

AffineHull affine_hull(const ReebVector& v) {
  AffineHull h;
  const std::size_t l = v.size();
  h.s = v.s();
  if (h.s == 0) {
    h.reorder.resize(l);
    std::iota(h.reorder.begin(), h.reorder.end(), 0);
    std::vector<Rational> values;
    for (const auto& w : v.entries()) values.push_back(w.rational_part());
    h.m = lcm_of_denominators(values);
    h.a.assign(1, {});
    for (const auto& q : values) h.a[0].push_back(Integer(q * Rational(h.m)));
    return h;
  }
  std::size_t lead = 0;
  while (v[lead].is_rational()) ++lead;
  h.reorder.push_back(lead);
  for (std::size_t i = 0; i < l; ++i) {
    if (i != lead) h.reorder.push_back(i);
  }
  const Rational a0 = v[lead].rational_part();
  const Rational b0 = v[lead].radical_part();
  std::vector<Rational> slope, offset;
  for (std::size_t j = 1; j < l; ++j) {
    const ExactScalar& w = v[h.reorder[j]];
    Rational alpha = w.radical_part() / b0;
    Rational beta = w.rational_part() - alpha * a0;
    slope.push_back(alpha);
    offset.push_back(beta);
  }
  std::vector<Rational> all = slope;
  all.insert(all.end(), offset.begin(), offset.end());
  h.m = lcm_of_denominators(all);
  h.a.assign(2, {});
  for (std::size_t j = 0; j + 1 < l; ++j) {
    h.a[0].push_back(Integer(offset[j] * Rational(h.m)));
    h.a[1].push_back(Integer(slope[j] * Rational(h.m)));
  }
  return h;
}

bool AffineHull::verify(const ReebVector& v) const {
  const std::size_t l = v.size();
  if (reorder.size() != l || a.size() != static_cast<std::size_t>(s) + 1) return false;
  for (std::size_t j = 0; j + s < l; ++j) {
    ExactScalar rhs = from_integer(a[0][j]);
    for (int i = 1; i <= s; ++i) rhs += from_integer(a[i][j]) * v[reorder[i - 1]];
    if (from_integer(m) * v[reorder[s + j]] != rhs) return false;
  }
  return true;
}

Integer AffineHull::max_abs_coefficient() const {
  Integer top = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    for (const auto& x : a[i]) top = std::max(top, Integer(abs(x)));
  }
  return top;
}

// --- reports ---------------------------------------------------------------

std::vector<Rational> ApproximantReport::approximant() const {
  std::vector<Rational> out;
  for (const auto& w : w_tilde) out.push_back(Rational(w, D));
  return out;
}

std::vector<std::string> ApproximantReport::error_strings() const {
  std::vector<std::string> out;
  for (const auto& e : errors) out.push_back(e.str());
  return out;
}

std::vector<std::string> ApproximantReport::certificate_strings() const {
  std::vector<std::string> out;
  for (const auto& c : bound_certificates) out.push_back(c.str());
  return out;
}

ApproximantReport make_report(const ReebVector& v, const Integer& D, std::vector<Integer> w_tilde, const Integer& N) {
  if (w_tilde.size() != v.size()) throw ArityMismatch("approximant length differs from weight vector length");
  if (D <= 0 || N <= 0) throw PreconditionError("D and N must be positive");
  ApproximantReport r;
  r.D = D;
  r.w_tilde = std::move(w_tilde);
  r.N = N;
  r.nice = true;
  const ExactScalar bound(Rational(1, N));
  for (std::size_t i = 0; i < v.size(); ++i) {
    ExactScalar e = abs(from_integer(D) * v[i] - from_integer(r.w_tilde[i]));
    SignCertificate cert = (bound - e).sign_certificate();
    if (cert.sign <= 0) r.nice = false;
    r.errors.push_back(std::move(e));
    r.bound_certificates.push_back(std::move(cert));
  }
  return r;
}

namespace {

// Nearest integers when every |D w_i - nearest| < 1/N, exactly.
std::optional<std::vector<Integer>> dirichlet_candidate(const ReebVector& v, const std::vector<double>& approx,
                                                        std::uint64_t D, const Integer& N, double bound) {
  for (double w : approx) {
    if (clearly_far(w * static_cast<double>(D), bound)) return std::nullopt;
  }
  const ExactScalar dd(Rational(static_cast<unsigned long>(D)));
  const ExactScalar exact_bound(Rational(1, N));
  std::vector<Integer> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ExactScalar x = dd * v[i];
    Integer k = x.nearest();
    if (abs(x - from_integer(k)) >= exact_bound) return std::nullopt;
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<double> doubles_of(const ReebVector& v) {
  std::vector<double> out;
  for (const auto& w : v.entries()) out.push_back(w.to_double());
  return out;
}

ApproximantReport exact_hit(const ReebVector& v, const Integer& N, std::uint64_t cap) {
  std::vector<Rational> values;
  for (const auto& w : v.entries()) values.push_back(w.rational_part());
  const Integer D = lcm_of_denominators(values);
  if (D > Integer(static_cast<unsigned long>(cap))) {
    throw NotFound("common denominator " + D.get_str() + " exceeds the search cap");
  }
  std::vector<Integer> w_tilde;
  for (const auto& q : values) w_tilde.push_back(Integer(q * Rational(D)));
  return make_report(v, D, std::move(w_tilde), N);
}

void check_search_args(const Integer& N, std::uint64_t cap) {
  if (N < 2) throw PreconditionError("N must be at least 2");
  if (Integer(static_cast<unsigned long>(cap)) < N) throw PreconditionError("cap must be at least N");
}

}  // namespace

ApproximantReport dirichlet_approximant(const ReebVector& v, const Integer& N, std::uint64_t cap) {
  check_search_args(N, cap);
  if (v.is_rational()) return exact_hit(v, N, cap);
  const auto approx = doubles_of(v);
  const double bound = 1.0 / N.get_d();
  for (std::uint64_t D = 1; D <= cap; ++D) {
    if (auto w = dirichlet_candidate(v, approx, D, N, bound)) {
      return make_report(v, Integer(static_cast<unsigned long>(D)), std::move(*w), N);
    }
  }
  throw NotFound("no Dirichlet approximant with D <= " + std::to_string(cap));
}

Integer default_N(const ReebVector& v) {
  return (ExactScalar(static_cast<long>(4 * v.n())) / v.min_entry()).ceil();
}

// --- cones -----------------------------------------------------------------

std::size_t ConeDescription::dimension() const { return kind == Kind::Box ? lo.size() : generators.empty() ? 0 : generators.front().size(); }

ConeDescription ConeDescription::ray(const std::vector<Rational>& v) {
  ConeDescription c;
  c.generators = {v};
  c.simplicial = true;
  c.simplicial_subset = {0};
  return c;
}

ConeDescription ConeDescription::box(std::vector<Rational> lo, std::vector<Rational> hi) {
  if (lo.size() != hi.size()) throw ArityMismatch("box bounds have different lengths");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (sgn(lo[i]) <= 0 || lo[i] > hi[i]) throw PreconditionError("box bounds must satisfy 0 < lo <= hi");
  }
  ConeDescription c;
  c.kind = Kind::Box;
  c.lo = std::move(lo);
  c.hi = std::move(hi);
  return c;
}

ConeDescription default_cone(const ReebVector& v) {
  std::vector<Rational> lo, hi;
  for (const auto& w : v.entries()) {
    const ExactScalar tolerance = w / ExactScalar(8L);
    Rational q;
    for (unsigned k = 0;; ++k) {
      Integer scale = 1;
      mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), k);
      q = Rational((w * from_integer(scale)).nearest(), scale);
      if (sgn(q) > 0 && abs(w - ExactScalar(q)) <= tolerance) break;
    }
    lo.push_back(q * Rational(3, 4));
    hi.push_back(q * Rational(5, 4));
  }
  return ConeDescription::box(std::move(lo), std::move(hi));
}

std::string ConeMembership::certificate() const {
  if (!contains) return "not contained";
  if (scale) return "lambda = " + scale->str();
  std::string out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (k) out += " + ";
    out += "(" + coefficients[k].str() + ")*g" + std::to_string(basis[k]);
  }
  return out;
}

namespace {

// Solves sum_k c_k cols[k] = rhs when the columns are linearly independent
// and the system is consistent.
std::optional<std::vector<ExactScalar>> solve_independent(const std::vector<const std::vector<Rational>*>& cols,
                                                          const std::vector<ExactScalar>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t r = cols.size();
  std::vector<std::vector<ExactScalar>> m(rows, std::vector<ExactScalar>(r + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < r; ++k) m[i][k] = ExactScalar((*cols[k])[i]);
    m[i][r] = rhs[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_row(r);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = row;
    while (p < rows && m[p][k].is_zero()) ++p;
    if (p == rows) return std::nullopt;  // dependent columns
    std::swap(m[p], m[row]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][k].is_zero()) continue;
      const ExactScalar f = m[i][k] / m[row][k];
      for (std::size_t c = k; c <= r; ++c) m[i][c] -= f * m[row][c];
    }
    pivot_row[k] = row++;
  }
  for (std::size_t i = row; i < rows; ++i) {
    if (!m[i][r].is_zero()) return std::nullopt;  // inconsistent
  }
  std::vector<ExactScalar> out(r);
  for (std::size_t k = 0; k < r; ++k) out[k] = m[pivot_row[k]][r] / m[pivot_row[k]][k];
  return out;
}

bool independent(const std::vector<std::vector<Rational>>& vs) {
  if (vs.empty()) return true;
  std::vector<std::vector<Rational>> m = vs;
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank == m.size();
}

}  // namespace

ConeMembership cone_contains(const ConeDescription& sigma, const std::vector<ExactScalar>& v) {
  if (v.size() != sigma.dimension()) throw ArityMismatch("cone and vector dimensions differ");
  ConeMembership out;
  if (sigma.kind == ConeDescription::Kind::Box) {
    std::optional<ExactScalar> low, high;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].sign() <= 0) return out;
      const ExactScalar a = ExactScalar(sigma.lo[i]) / v[i];
      const ExactScalar b = ExactScalar(sigma.hi[i]) / v[i];
      if (!low || a > *low) low = a;
      if (!high || b < *high) high = b;
    }
    if (low && *low <= *high) {
      out.contains = true;
      out.scale = *low;
    }
    return out;
  }
  const std::size_t g = sigma.generators.size();
  if (std::all_of(v.begin(), v.end(), [](const ExactScalar& x) { return x.is_zero(); })) {
    out.contains = true;
    return out;
  }
  // Carathéodory: some linearly independent subset already suffices.
  for (std::size_t size = 1; size <= std::min(g, v.size()); ++size) {
    std::vector<bool> pick(g, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> idx;
      std::vector<const std::vector<Rational>*> cols;
      for (std::size_t k = 0; k < g; ++k) {
        if (pick[k]) {
          idx.push_back(k);
          cols.push_back(&sigma.generators[k]);
        }
      }
      auto c = solve_independent(cols, v);
      if (c && std::all_of(c->begin(), c->end(), [](const ExactScalar& x) { return x.sign() > 0; })) {
        out.contains = true;
        out.basis = std::move(idx);
        out.coefficients = std::move(*c);
        return out;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

ConeMembership cone_contains(const ConeDescription& sigma, const std::vector<Rational>& v) {
  std::vector<ExactScalar> e(v.begin(), v.end());
  return cone_contains(sigma, e);
}

ApproximantReport nice_approximant(const ReebVector& v, const ConeDescription& sigma, const Integer& N,
                                   std::uint64_t cap) {
  check_search_args(N, cap);
  if (!cone_contains(sigma, v.entries()).contains) {
    throw PreconditionError("reference cone does not contain the weight vector");
  }
  if (N < default_N(v)) throw PreconditionError("N is below the bound ceil(4n / min w) = " + default_N(v).get_str());

  auto accept = [&](ApproximantReport r) -> std::optional<ApproximantReport> {
    const ConeMembership m = cone_contains(sigma, r.approximant());
    if (!m.contains) return std::nullopt;
    r.cone_certificate = m.certificate();
    return r;
  };

  if (v.is_rational()) {
    if (auto r = accept(exact_hit(v, N, cap))) return *r;
    throw NotFound("outside cone: the exact value is not in the reference cone");
  }
  const auto approx = doubles_of(v);
  const double bound = 1.0 / N.get_d();
  bool any_candidate = false;
  for (std::uint64_t D = 1; D <= cap; ++D) {
    auto w = dirichlet_candidate(v, approx, D, N, bound);
    if (!w) continue;
    any_candidate = true;
    if (auto r = accept(make_report(v, Integer(static_cast<unsigned long>(D)), std::move(*w), N))) return *r;
  }
  if (any_candidate) throw NotFound("outside cone: no Dirichlet candidate with D <= " + std::to_string(cap) + " lies in the reference cone");
  throw NotFound("no Dirichlet approximant with D <= " + std::to_string(cap));
}

// --- corner cubes and the cone sigma' ---------------------------------------

Integer default_N_prime(const AffineHull& hull, const Integer& N) {
  const Integer spread = Integer(hull.s) * hull.max_abs_coefficient();
  return N * hull.m * std::max(Integer(1), spread) + 1;
}

std::vector<CornerHit> kronecker_corner_search(const ReebVector& v, const Integer& n_prime, std::uint64_t cap) {
  const AffineHull hull = affine_hull(v);
  if (hull.s == 0) throw PreconditionError("corner search needs 1, w_1..w_s independent with s >= 1");
  if (n_prime < 2) throw PreconditionError("N' must be at least 2");
  const auto s = static_cast<std::size_t>(hull.s);
  std::vector<const ExactScalar*> lead;
  std::vector<double> approx;
  for (std::size_t i = 0; i < s; ++i) {
    lead.push_back(&v[hull.reorder[i]]);
    approx.push_back(lead.back()->to_double());
  }
  const ExactScalar side(Rational(1, n_prime));
  const ExactScalar far_side = ExactScalar(1L) - side;
  const double bound = 1.0 / n_prime.get_d();

  std::vector<CornerHit> out;
  for (std::size_t k = 0; k < (std::size_t{1} << s); ++k) {
    std::vector<int> corner(s);
    for (std::size_t i = 0; i < s; ++i) corner[i] = static_cast<int>((k >> i) & 1U);
    bool found = false;
    for (std::uint64_t C = 1; C <= cap && !found; ++C) {
      bool plausible = true;
      for (std::size_t i = 0; i < s && plausible; ++i) {
        const double x = approx[i] * static_cast<double>(C);
        const double f = x - std::floor(x);
        const double margin = 1e-9 * (1.0 + std::fabs(x));
        plausible = corner[i] == 0 ? f <= bound + margin || f >= 1 - margin : f >= 1 - bound - margin || f <= margin;
      }
      if (!plausible) continue;
      CornerHit hit;
      hit.corner = corner;
      hit.C = Integer(static_cast<unsigned long>(C));
      bool inside = true;
      for (std::size_t i = 0; i < s && inside; ++i) {
        const ExactScalar x = ExactScalar(Rational(hit.C)) * *lead[i];
        ExactScalar f = x.frac();
        inside = corner[i] == 0 ? f <= side : f >= far_side;
        hit.v_tilde.push_back(x.nearest());
        hit.fractional_parts.push_back(std::move(f));
      }
      if (inside) {
        out.push_back(std::move(hit));
        found = true;
      }
    }
    if (!found) throw NotFound("corner " + std::to_string(k) + " not reached with C <= " + std::to_string(cap));
  }
  return out;
}

ConeDescription build_sigma_prime(const ReebVector& v, const std::vector<CornerHit>& corners, const AffineHull& hull,
                                  const Integer& N) {
  if (!hull.verify(v)) throw PreconditionError("affine hull data does not match the weight vector");
  if (v.is_rational()) {
    std::vector<Rational> ray;
    for (const auto& w : v.entries()) ray.push_back(w.rational_part());
    ConeDescription c = ConeDescription::ray(ray);
    std::vector<Rational> values = ray;
    const Integer D = lcm_of_denominators(values);
    std::vector<Integer> w_tilde;
    for (const auto& q : values) w_tilde.push_back(Integer(q * Rational(D)));
    c.approximants.push_back(make_report(v, D, std::move(w_tilde), N));
    return c;
  }
  const auto s = static_cast<std::size_t>(hull.s);
  const std::size_t l = v.size();
  if (corners.size() != (std::size_t{1} << s)) throw PreconditionError("corner data incomplete");

  ConeDescription cone;
  for (std::size_t k = 0; k < corners.size(); ++k) {
    const CornerHit& hit = corners[k];
    if (hit.v_tilde.size() != s || hit.corner.size() != s) throw PreconditionError("corner data incomplete");
    const Integer D = hull.m * hit.C;
    std::vector<Integer> w_tilde(l);
    for (std::size_t i = 0; i < s; ++i) w_tilde[hull.reorder[i]] = hull.m * hit.v_tilde[i];
    for (std::size_t j = 0; j + s < l; ++j) {
      Integer x = hit.C * hull.a[0][j];
      for (std::size_t i = 0; i < s; ++i) x += hull.a[i + 1][j] * hit.v_tilde[i];
      w_tilde[hull.reorder[s + j]] = x;
    }
    ApproximantReport report = make_report(v, D, std::move(w_tilde), N);
    if (!report.nice) {
      throw NotFound("approximant for corner " + std::to_string(k) + " is not nice; raise N'");
    }
    // The lead coordinates of the corner sit strictly below (corner 0) or
    // above (corner 1) the weight vector.
    for (std::size_t i = 0; i < s; ++i) {
      const ExactScalar w = v[hull.reorder[i]];
      const ExactScalar q(Rational(hit.v_tilde[i], hit.C));
      SignCertificate cert = (hit.corner[i] == 0 ? w - q : q - w).sign_certificate();
      if (cert.sign <= 0) throw PreconditionError("corner " + std::to_string(k) + " is on the wrong side");
      cone.bracket_certificates.push_back(std::move(cert));
    }
    cone.generators.push_back(report.approximant());
    cone.approximants.push_back(std::move(report));
  }
  cone.simplicial = independent(cone.generators);
  const ConeMembership m = cone_contains(cone, v.entries());
  if (!m.contains) throw NotFound("containment selection failed; raise N' or the cap");
  cone.simplicial_subset = m.basis;
  return cone;
}

bool verify_claim_dio(const ReebVector& v, const ApproximantReport& report, const Rational& p,
                      const Rational& eps_prime) {
  if (report.w_tilde.size() != v.size()) throw ArityMismatch("report length differs from weight vector length");
  ExactScalar d;
  const Rational inv_d(1, report.D);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const ExactScalar rel = abs(v[i] - ExactScalar(Rational(report.w_tilde[i]) * inv_d)) / v[i];
    if (rel > d) d = rel;
  }
  const ExactScalar lhs = ExactScalar(p * Rational(report.D)) * d;
  const ExactScalar bound = ExactScalar(p) / (ExactScalar(Rational(report.N)) * v.min_entry());
  return lhs < bound && bound < ExactScalar(eps_prime / 2);
}

}  // namespace conify
