#include "conify/degeneration.hpp"

#include <numeric>

namespace conify {

namespace {

std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), 0);
  return map;
}

WeightData family_weights(const std::vector<std::int64_t>& weights) {
  WeightData wd;
  for (auto w : weights) wd.weights.emplace_back(static_cast<long>(w));
  wd.t_weight = Rational(1);
  return wd;
}

void check_weights(const std::vector<std::int64_t>& weights, std::size_t arity) {
  if (weights.size() != arity) throw ArityMismatch("weight vector length differs from ring arity");
  for (auto w : weights) {
    if (w <= 0) throw PreconditionError("test configuration weights must be positive integers");
  }
}

}  // namespace

TestConfiguration TestConfiguration::from_family(const Ring& base_ring, const IdealPresentation& family,
                                                 const std::vector<std::int64_t>& weights) {
  check_weights(weights, base_ring.arity());
  if (family.ring.arity() != base_ring.arity() + 1) throw ArityMismatch("family ring must be (base..., t)");
  TestConfiguration tc;
  tc.base_ring = base_ring;
  tc.family_ideal = family;
  tc.weights = family_weights(weights);
  tc.family_ideal.weights = tc.weights;
  return tc;
}

TestConfiguration build_test_configuration(const IdealPresentation& ideal, const std::vector<std::int64_t>& weights,
                                           const GroebnerOptions& options) {
  check_weights(weights, ideal.ring.arity());
  const std::size_t l = ideal.ring.arity();
  const Ring family_ring = ideal.ring.with_appended(ideal.ring.fresh_name("t"));

  std::vector<Polynomial> gens;
  for (const auto& f : ideal.generators) {
    std::vector<std::uint64_t> wt;
    std::uint64_t lowest = UINT64_MAX;
    for (const auto& term : f.terms()) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < l; ++i) s += static_cast<std::uint64_t>(weights[i]) * term.monomial[i];
      wt.push_back(s);
      lowest = std::min(lowest, s);
    }
    std::vector<Term> terms;
    for (std::size_t k = 0; k < f.terms().size(); ++k) {
      Monomial m(l + 1);
      for (std::size_t i = 0; i < l; ++i) m[i] = f.terms()[k].monomial[i];
      m[l] = static_cast<Monomial::Exponent>(wt[k] - lowest);
      terms.push_back({std::move(m), f.terms()[k].coeff});
    }
    gens.emplace_back(family_ring, std::move(terms));
  }

  TestConfiguration tc;
  tc.base_ring = ideal.ring;
  tc.weights = family_weights(weights);
  IdealPresentation family = saturate_by_variable(IdealPresentation(family_ring, std::move(gens)), l, options);
  tc.family_ideal = canonical(family, options);
  tc.family_ideal.weights = tc.weights;
  tc.saturated = true;
  return tc;
}

namespace {

IdealPresentation fiber_at(const TestConfiguration& tc, long value, const GroebnerOptions& options) {
  const auto keep = identity_map(tc.base_ring.arity());
  std::vector<Polynomial> gens;
  for (const auto& g : tc.family_ideal.generators) {
    gens.push_back(g.substitute(tc.t_index(), Rational(value)).restrict_to(tc.base_ring, keep));
  }
  return canonical(IdealPresentation(tc.base_ring, std::move(gens)), options);
}

}  // namespace

IdealPresentation central_fiber(const TestConfiguration& tc, const GroebnerOptions& options) {
  if (!tc.saturated) throw PreconditionError("central fiber requires a t-saturated family");
  return fiber_at(tc, 0, options);
}

IdealPresentation general_fiber(const TestConfiguration& tc, const GroebnerOptions& options) {
  return fiber_at(tc, 1, options);
}

bool flatness_witness(const TestConfiguration& tc, const GroebnerOptions& options) {
  const Polynomial t = Polynomial::variable(tc.family_ideal.ring, tc.t_index());
  return same_ideal(ideal_quotient(tc.family_ideal, t, options), tc.family_ideal, options);
}

std::map<std::int64_t, std::uint64_t> hilbert_function(const IdealPresentation& ideal, const WeightData& wd,
                                                       std::int64_t cap, const GroebnerOptions& options) {
  if (cap < 0) throw PreconditionError("cap must be non-negative");
  if (wd.weights.size() != ideal.ring.arity()) throw ArityMismatch("weight vector length differs from ring arity");
  const auto w = wd.integer_weights();
  for (auto x : w) {
    if (x <= 0) throw PreconditionError("Hilbert function requires positive integer weights");
  }
  const GroebnerBasis gb = reduced_basis(ideal, MonomialOrder::grevlex(), options);
  for (const auto& g : gb.elements()) {
    if (!is_homogeneous(g, wd).homogeneous) throw PreconditionError("ideal is not homogeneous for the given weights");
  }
  const auto leads = gb.leading_monomials();

  std::map<std::int64_t, std::uint64_t> out;
  for (std::int64_t k = 0; k <= cap; ++k) out[k] = 0;
  const std::size_t n = w.size();
  Monomial m(n);
  // Depth-first enumeration of exponent vectors of weight <= cap.
  auto walk = [&](auto&& self, std::size_t i, std::int64_t used) -> void {
    if (i == n) {
      for (const auto& lm : leads) {
        if (lm.divides(m)) return;
      }
      ++out[used];
      return;
    }
    for (std::int64_t e = 0; used + e * w[i] <= cap; ++e) {
      m[i] = static_cast<Monomial::Exponent>(e);
      self(self, i + 1, used + e * w[i]);
    }
    m[i] = 0;
  };
  walk(walk, 0, 0);
  return out;
}

std::vector<std::int64_t> integer_ray(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) {
    if (sgn(q) <= 0) throw PreconditionError("approximant entries must be positive");
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  std::vector<Integer> num;
  Integer g = 0;
  for (const auto& q : v) {
    num.push_back(q.get_num() * (den / q.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.back().get_mpz_t());
  }
  std::vector<std::int64_t> out;
  for (auto& x : num) {
    x /= g;
    if (!x.fits_slong_p()) throw PreconditionError("approximant too large for integer weights");
    out.push_back(x.get_si());
  }
  return out;
}

IdealPresentation stable_initial_ideal(const IdealPresentation& ideal, const std::vector<ExactScalar>& xi,
                                       const std::vector<Rational>& first, const std::vector<Rational>& second,
                                       const GroebnerOptions& options) {
  const std::size_t l = ideal.ring.arity();
  if (xi.size() != l || first.size() != l || second.size() != l) {
    throw ArityMismatch("weight and approximant lengths must equal the ring arity");
  }
  bool irrational = false;
  for (const auto& x : xi) {
    if (x.sign() <= 0) throw PreconditionError("weights must be positive");
    irrational = irrational || !x.is_rational();
  }
  if (!irrational) throw PreconditionError("stability check expects an irrational weight vector");
  if (first == second) throw PreconditionError("approximants must be distinct");

  const IdealPresentation a = central_fiber(build_test_configuration(ideal, integer_ray(first), options), options);
  const IdealPresentation b = central_fiber(build_test_configuration(ideal, integer_ray(second), options), options);
  if (a.generators != b.generators) {
    throw Unstable("central fibers differ between the two approximants; refine them");
  }
  return a;
}

}  // namespace conify
