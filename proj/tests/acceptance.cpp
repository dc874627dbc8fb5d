// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "conify/cli.hpp"
#include "conify/degeneration.hpp"
#include "conify/diophantine.hpp"
#include "conify/numerics.hpp"
#include "conify/poisson.hpp"

using namespace conify;

namespace {

using Clock = std::chrono::steady_clock;

struct Line {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Line()>& body, double limit_seconds = 0) {
  const auto start = Clock::now();
  Line line;
  try {
    line = body();
  } catch (const std::exception& e) {
    line = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && seconds >= limit_seconds) {
    line.pass = false;
    line.detail += "; over the time limit";
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3f s", seconds);
  std::printf("[%s] %2d %s: %s (%s)\n", line.pass ? "PASS" : "FAIL", id, title, line.detail.c_str(), timing);
  std::fflush(stdout);
  failures += line.pass ? 0 : 1;
}

Polynomial random_poly(const Ring& r, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4), terms(1, 4), deg(0, 4);
  std::vector<Term> ts;
  const int k = terms(rng);
  for (int j = 0; j < k; ++j) {
    Monomial m(r.arity());
    int budget = deg(rng);
    for (std::size_t i = 0; i < r.arity() && budget > 0; ++i) {
      std::uniform_int_distribution<int> e(0, budget);
      m[i] = static_cast<Monomial::Exponent>(i + 1 == r.arity() ? budget : e(rng));
      budget -= static_cast<int>(m[i]);
    }
    const int c = coeff(rng);
    if (c != 0) ts.push_back({m, Rational(c)});
  }
  return Polynomial(r, ts);
}

struct DegenerationCase {
  IdealPresentation ideal;
  std::vector<std::int64_t> weights;
};

std::vector<DegenerationCase> degeneration_cases() {
  std::mt19937_64 rng(20240607);
  const std::vector<std::string> names{"x", "y", "z"};
  std::uniform_int_distribution<int> arity(1, 3), gens(1, 3), weight(1, 5);
  std::vector<DegenerationCase> out;
  while (out.size() < 20) {
    const Ring r(std::vector<std::string>(names.begin(), names.begin() + arity(rng)));
    std::vector<Polynomial> g;
    const int k = gens(rng);
    for (int j = 0; j < k; ++j) {
      Polynomial p = random_poly(r, rng);
      if (!p.is_zero() && !p.is_constant()) g.push_back(std::move(p));
    }
    if (g.empty()) continue;
    // Unit ideals agree trivially; keep only proper ones.
    if (reduced_basis(IdealPresentation(r, g), MonomialOrder::grevlex()).is_unit()) continue;
    std::vector<std::int64_t> w;
    for (std::size_t i = 0; i < r.arity(); ++i) w.push_back(weight(rng));
    out.push_back({IdealPresentation(r, g), w});
  }
  return out;
}

std::vector<ExactScalar> scalars(const std::vector<std::int64_t>& w) {
  std::vector<ExactScalar> out;
  for (auto x : w) out.push_back(ExactScalar(static_cast<long>(x)));
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

std::string cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out, err;
  const int c = run(args, out, err);
  if (code) *code = c;
  return out.str();
}

}  // namespace

int main() {
  const ExactScalar r2 = ExactScalar::sqrt_of(2);
  const auto cases = degeneration_cases();
  std::vector<TestConfiguration> configs;

  report(1, "degeneration oracle agreement", [&] {
    int agree = 0;
    std::string first_bad;
    for (const auto& c : cases) {
      configs.push_back(build_test_configuration(c.ideal, c.weights));
      const IdealPresentation fiber = central_fiber(configs.back());
      const IdealPresentation oracle = weighted_initial_ideal(c.ideal, scalars(c.weights));
      if (fiber.generators == oracle.generators) {
        ++agree;
      } else if (first_bad.empty()) {
        first_bad = "; first mismatch on <" + join(c.ideal.generator_strings()) + ">";
      }
    }
    return Line{agree == 20, std::to_string(agree) + "/20 reduced bases equal" + first_bad};
  }, 60);

  report(2, "flatness and hilbert function", [&] {
    int flat = 0;
    for (const auto& tc : configs) flat += flatness_witness(tc) ? 1 : 0;
    const Ring xyz({"x", "y", "z"});
    WeightData wd;
    wd.weights = {2, 2, 2};
    const auto h = hilbert_function(IdealPresentation::parse(xyz, {"x*y - z^2"}), wd, 8);
    // Count x^a y^b z^c with c <= 1 and 2(a + b + c) = k directly.
    bool hilbert_ok = true;
    std::string values;
    for (std::int64_t k = 0; k <= 8; k += 2) {
      std::uint64_t count = 0;
      for (std::int64_t c = 0; c <= 1; ++c) {
        if (2 * c <= k) count += static_cast<std::uint64_t>((k - 2 * c) / 2 + 1);
      }
      hilbert_ok = hilbert_ok && h.at(k) == count && count == static_cast<std::uint64_t>(k + 1);
      values += (values.empty() ? "" : ", ") + std::to_string(h.at(k));
    }
    return Line{flat == static_cast<int>(configs.size()) && configs.size() == 20 && hilbert_ok,
                std::to_string(flat) + "/" + std::to_string(configs.size()) + " flat; hilbert at 0,2,4,6,8 = " + values};
  }, 60);

  std::vector<std::pair<ReebVector, ApproximantReport>> nice;

  report(3, "diophantine exactness", [&] {
    const ReebVector v({r2, ExactScalar(2) - r2}, 2);
    const ApproximantReport a = nice_approximant(v, default_cone(v), 14);
    nice.emplace_back(v, a);
    const bool ok = a.D == 5 && a.w_tilde == std::vector<Integer>{7, 3} && a.nice &&
                    a.bound_certificates[0].str() == "9800 < 9801" && a.D < 196;
    return Line{ok, "D = " + a.D.get_str() + ", w~ = (" + a.w_tilde[0].get_str() + ", " + a.w_tilde[1].get_str() +
                        "), " + a.bound_certificates[0].str()};
  }, 1);

  report(4, "sigma prime", [&] {
    const ReebVector v({r2}, 1);
    const AffineHull hull = affine_hull(v);
    const Integer N = 19;
    const Integer np = default_N_prime(hull, N);
    const ConeDescription sigma = build_sigma_prime(v, kronecker_corner_search(v, np), hull, N);
    for (const auto& r : sigma.approximants) nice.emplace_back(v, r);
    std::vector<std::string> certs;
    for (const auto& c : sigma.bracket_certificates) certs.push_back(c.str());
    const ConeMembership m = cone_contains(sigma, v.entries());
    bool rational_generators = true;
    for (const auto& g : sigma.generators) rational_generators = rational_generators && g.size() == 1;
    const ReebVector q({ExactScalar(Rational(3, 2)), ExactScalar(Rational(1, 2))}, 2);
    const ConeDescription ray = build_sigma_prime(q, {}, affine_hull(q), N);
    const bool ray_ok = ray.generators.size() == 1 && ray.generators[0] == std::vector<Rational>{Rational(3, 2), Rational(1, 2)} &&
                        cone_contains(ray, q.entries()).contains;
    const bool ok = rational_generators && certs == std::vector<std::string>{"576 < 578", "288 < 289"} && m.contains &&
                    !m.certificate().empty() && ray_ok;
    return Line{ok, "N' = " + np.get_str() + ", brackets " + join(certs) + ", certificate " + m.certificate() +
                        (ray_ok ? ", rational case is a ray" : ", rational case not a ray")};
  }, 5);

  report(5, "claim bound with p = 2, eps' = p/n", [&] {
    int held = 0;
    for (const auto& [v, r] : nice) {
      held += verify_claim_dio(v, r, 2, Rational(2, v.n())) ? 1 : 0;
    }
    return Line{held == static_cast<int>(nice.size()) && nice.size() >= 3,
                std::to_string(held) + "/" + std::to_string(nice.size()) + " approximants"};
  });

  report(6, "poisson catalogue", [&] {
    bool ok = true;
    std::string detail;
    auto need = [&](bool cond, const std::string& what) {
      if (!cond) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + what;
      }
    };
    for (const char* name : {"a1", "a2"}) {
      const InputDocument d = parse_input(catalogue_entry(name).text);
      need(satisfies_jacobi(*d.bracket), std::string(name) + " jacobi");
      need(preserves_ideal(*d.bracket, d.ideal_presentation()), std::string(name) + " ideal");
      const auto bw = bracket_weight(*d.bracket, d.weight_data());
      need(bw && *bw == ExactScalar(-2), std::string(name) + " bracket weight");
    }
    for (const char* name : {"c2", "ogrady_weights"}) {
      const InputDocument d = parse_input(catalogue_entry(name).text);
      const auto fw = form_weight(*d.form, d.weight_data());
      need(fw && *fw == ExactScalar(2), std::string(name) + " form weight");
    }
    for (const auto& e : catalogue()) {
      const InputDocument d = parse_input(e.text);
      need(one_in_span(ReebVector(d.weights, d.dim.value_or(0))), e.name + " one_in_span");
    }
    return Line{ok, ok ? "a1, a2 brackets; c2, ogrady_weights forms; 1 in span for all 5 entries" : detail};
  }, 5);

  report(7, "semi-invariant decomposition", [&] {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> n_dist(1, 4), w_dist(1, 5), e_dist(0, 20);
    int ok = 0;
    for (int k = 0; k < 200; ++k) {
      const int n = n_dist(rng);
      WeightData wd;
      for (int i = 0; i < n; ++i) wd.weights.push_back(ExactScalar(static_cast<long>(w_dist(rng))));
      wd.t_weight = Rational(w_dist(rng));
      std::vector<Monomial::Exponent> e;
      for (int i = 0; i <= n; ++i) e.push_back(static_cast<Monomial::Exponent>(e_dist(rng)));
      const Monomial m(e);
      const Decomposition d = decompose_semiinvariant(m, wd);
      Monomial product = d.prefix;
      bool good = true;
      for (const auto& f : d.factors) {
        good = good && semi_invariant_weight(f, wd) == 0;
        product = product * f;
      }
      good = good && product == m;
      for (int i = 0; i < n; ++i) good = good && static_cast<std::int64_t>(d.prefix[i]) < d.bounds.C[i];
      good = good && static_cast<std::int64_t>(d.prefix[n]) < d.bounds.D;
      ok += good ? 1 : 0;
    }
    return Line{ok == 200, std::to_string(ok) + "/200 round trips within C_i and D"};
  }, 5);

  report(8, "rotations", [&] {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      const double d = g(rng), e = g(rng), f = g(rng);
      worst = std::max(worst, reconstruction_error(rotation_from_target(d, e, f), d, e, f));
    }
    const double pi = std::numbers::pi;
    const double h = 1 / std::sqrt(2.0);
    struct Expect {
      Vec3 target;
      Vec3 axis;
      double theta;
    };
    const std::vector<Expect> worked{{{1, 0, 0}, {1, 0, 0}, 0}, {{0, 1, 0}, {h, h, 0}, pi}, {{0, 0, 1}, {0, 1, 0}, 3 * pi / 2}};
    double worked_err = 0;
    for (const auto& w : worked) {
      const RotationSolution s = rotation_from_target(w.target[0], w.target[1], w.target[2]);
      worked_err = std::max(worked_err, std::fabs(s.theta - w.theta));
      if (w.theta != 0) {
        for (int i = 0; i < 3; ++i) worked_err = std::max(worked_err, std::fabs(s.axis[i] - w.axis[i]));
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max reconstruction error %.2e over 1000; worked examples off by %.2e", worst, worked_err);
    return Line{worst < 1e-9 && worked_err < 1e-12, buf};
  });

  report(9, "model metric scaling", [&] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> w(0.1, 6), z(-4, 4), tau(0.05, 20);
    std::uniform_int_distribution<int> dim(1, 5);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      ModelMetricPoint p;
      const int n = dim(rng);
      for (int i = 0; i < n; ++i) {
        p.z.emplace_back(z(rng), z(rng));
        p.weights.push_back(w(rng));
      }
      worst = std::max(worst, scaling_pullback_check(p, tau(rng)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max relative discrepancy %.2e over 1000 samples", worst);
    return Line{worst < 1e-9, buf};
  });

  report(10, "determinism", [&] {
    int bases = 0, bases_ok = 0;
    for (const auto& c : cases) {
      std::vector<Polynomial> g = c.ideal.generators;
      const GroebnerBasis ref = reduced_basis(c.ideal, MonomialOrder::grevlex());
      std::vector<std::size_t> idx(g.size());
      std::iota(idx.begin(), idx.end(), 0);
      do {
        std::vector<Polynomial> perm;
        for (auto i : idx) perm.push_back(g[i]);
        ++bases;
        bases_ok += reduced_basis(IdealPresentation(c.ideal.ring, perm), MonomialOrder::grevlex()) == ref ? 1 : 0;
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
    const std::vector<std::vector<std::string>> commands{
        {"demo", "a1"},        {"demo", "ogrady_weights"},
        {"rank", "--weights", "1, s, 1+s", "--field", "quad:2"},
        {"approximate", "--weights", "sqrt(2), 2-sqrt(2)", "--N", "14"},
        {"cone", "--weights", "sqrt(2)", "--N", "19"},
        {"cone", "--weights", "sqrt(2), 2-sqrt(2)", "--N", "19", "--pretty"},
        {"decompose", "--weights", "1,2,3", "--tweight", "2", "--monomial", "x1^5*x2^3*x3^7*t^4"},
        {"invariants", "--weights", "1,2", "--tweight", "3"},
        {"rotate", "--target", "0.1,-0.7,0.2"},
    };
    int outputs = 0, outputs_ok = 0;
    for (const auto& c : commands) {
      const std::string a = cli(c), b = cli(c);
      ++outputs;
      outputs_ok += (a == b && !a.empty()) ? 1 : 0;
    }
    // Permuted ideal generators give the same central fiber.
    const std::string doc1 = "ring x y z\nweights 1 2 3\nideal\n  x^3 - z\n  y^2 - x*z\n  x*y\nend\n";
    const std::string doc2 = "ring x y z\nweights 1 2 3\nideal\n  x*y\n  x^3 - z\n  y^2 - x*z\nend\n";
    const InputDocument d1 = parse_input(doc1), d2 = parse_input(doc2);
    ++outputs;
    outputs_ok += central_fiber(build_test_configuration(d1.ideal_presentation(), {1, 2, 3})).generators ==
                          central_fiber(build_test_configuration(d2.ideal_presentation(), {1, 2, 3})).generators
                      ? 1
                      : 0;
    return Line{bases == bases_ok && outputs == outputs_ok,
                std::to_string(bases_ok) + "/" + std::to_string(bases) + " permuted bases, " + std::to_string(outputs_ok) +
                    "/" + std::to_string(outputs) + " repeated outputs identical"};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
