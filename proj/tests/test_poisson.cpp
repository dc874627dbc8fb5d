#include <doctest.h>

#include <random>

#include "conify/degeneration.hpp"
#include "conify/poisson.hpp"

using namespace conify;

namespace {

const Ring xyz({"x", "y", "z"});

Polynomial P(const char* s, const Ring& r = xyz) { return Polynomial::parse(s, r); }

PoissonTable a1_table() {
  PoissonTable p(xyz);
  p.set(0, 1, P("4*z"));
  p.set(0, 2, P("2*x"));
  p.set(1, 2, P("-2*y"));
  return p;
}

// {z_i, f} = sum_l (df/dz_l) {z_i, z_l}, read straight off the table.
Polynomial bracket_with_coordinate(const PoissonTable& p, std::size_t i, const Polynomial& f) {
  Polynomial out(p.ring());
  for (std::size_t l = 0; l < p.ring().arity(); ++l) out += f.derivative(l) * p.get(i, l);
  return out;
}

Polynomial jacobi_oracle(const PoissonTable& p, std::size_t i, std::size_t j, std::size_t k) {
  return bracket_with_coordinate(p, i, p.get(j, k)) + bracket_with_coordinate(p, j, p.get(k, i)) +
         bracket_with_coordinate(p, k, p.get(i, j));
}

WeightData grading(std::vector<ExactScalar> w, std::optional<Rational> t = std::nullopt) {
  WeightData wd;
  wd.weights = std::move(w);
  wd.t_weight = t;
  return wd;
}

Monomial mono(std::vector<Monomial::Exponent> e) { return Monomial(std::move(e)); }

}  // namespace

TEST_CASE("brackets follow the Leibniz rule") {
  const PoissonTable p = a1_table();
  CHECK(p.get(1, 0) == P("-4*z"));
  CHECK(p.get(0, 0).is_zero());
  CHECK(p.bracket(P("x"), P("x*y - z^2")).is_zero());
  CHECK(p.bracket(P("x^2"), P("y")) == P("8*x*z"));
  CHECK(p.bracket(P("x*y"), P("z")) == P("2*x*y - 2*x*y"));
}

TEST_CASE("jacobi defects") {
  CHECK(satisfies_jacobi(a1_table()));
  for (const auto& d : jacobi_defect(a1_table())) CHECK(d.value.is_zero());

  PoissonTable flat(Ring({"u", "v"}));
  flat.set(0, 1, Polynomial::constant(flat.ring(), 1));
  CHECK(jacobi_defect(flat).empty());

  PoissonTable bad(xyz);
  bad.set(0, 1, P("z"));
  bad.set(1, 2, P("x"));
  bad.set(2, 0, P("x"));
  const auto defects = jacobi_defect(bad);
  REQUIRE(defects.size() == 1);
  CHECK(defects[0].value == P("-z"));
  CHECK_FALSE(satisfies_jacobi(bad));
}

TEST_CASE("jacobi defects agree with a direct expansion") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-2, 2), e(0, 2);
  const Ring r({"a", "b", "c", "d"});
  for (int k = 0; k < 20; ++k) {
    PoissonTable p(r);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        std::vector<Term> ts;
        for (int m = 0; m < 2; ++m) {
          ts.push_back({mono({static_cast<unsigned>(e(rng)), static_cast<unsigned>(e(rng)),
                              static_cast<unsigned>(e(rng)), static_cast<unsigned>(e(rng))}),
                        Rational(c(rng))});
        }
        p.set(i, j, Polynomial(r, ts));
      }
    }
    for (const auto& d : jacobi_defect(p)) CHECK(d.value == jacobi_oracle(p, d.i, d.j, d.k));
  }
}

TEST_CASE("ideal preservation") {
  const auto ideal = IdealPresentation::parse(xyz, {"x*y - z^2"});
  CHECK(preserves_ideal(a1_table(), ideal));
  CHECK(preserves_ideal(PoissonTable(xyz), ideal));
  PoissonTable p(Ring({"x", "y"}));
  p.set(0, 1, Polynomial::constant(p.ring(), 1));
  CHECK_FALSE(preserves_ideal(p, IdealPresentation::parse(p.ring(), {"x"})));

  PoissonTable q = a1_table();
  q.set_ideal(ideal);
  CHECK(q.reduce(P("x*y")) == q.reduce(P("z^2")));
}

TEST_CASE("bracket and form weights") {
  CHECK(*bracket_weight(a1_table(), grading({2, 2, 2})) == ExactScalar(-2));
  PoissonTable flat(Ring({"u", "v"}));
  flat.set(0, 1, Polynomial::constant(flat.ring(), 1));
  CHECK(*bracket_weight(flat, grading({1, 1})) == ExactScalar(-2));
  PoissonTable mixed(Ring({"x", "y"}));
  mixed.set(0, 1, P("x + x^2", mixed.ring()));
  CHECK_FALSE(bracket_weight(mixed, grading({1, 1})));

  FormTable duv(Ring({"u", "v"}));
  duv.add(0, 1, Polynomial::constant(duv.ring(), 1));
  CHECK(*form_weight(duv, grading({1, 1})) == ExactScalar(2));
  const Ring z4({"z1", "z2", "z3", "z4"});
  FormTable two(z4);
  two.add(0, 2, Polynomial::constant(z4, 1));
  two.add(1, 3, Polynomial::constant(z4, 1));
  CHECK(*form_weight(two, grading({1, 2, 3, 2})) == ExactScalar(4));
  FormTable off(xyz);
  off.add(0, 1, Polynomial::constant(xyz, 1));
  off.add(0, 2, P("x"));
  CHECK_FALSE(form_weight(off, grading({1, 1, 1})));
  FormTable swapped(xyz);
  swapped.add(1, 0, Polynomial::constant(xyz, 1));
  CHECK(swapped.coefficients().at({0, 1}) == Polynomial::constant(xyz, -1));
}

TEST_CASE("scale-up conditions") {
  const auto tc = build_test_configuration(IdealPresentation::parse(xyz, {"x*y - z^2 - x^3"}), {2, 2, 2});
  WeightData wd = grading({2, 2, 2}, Rational(2));
  wd.form_weight = Rational(2);
  const ScaleupReport ok = check_scaleup(tc, a1_table(), wd);
  CHECK(ok.t_weight_positive);
  CHECK(ok.bracket_weight_matches);
  CHECK(ok.positive_section_weights);
  CHECK(ok.all_pass());
  // Informational: at w = 2 the x^3 term is off by the t weight, and the
  // undeformed bracket moves {y, t^2 x^3} = -12 x^2 t^2 z out of the family.
  CHECK_FALSE(ok.family_homogeneous);
  CHECK_FALSE(ok.family_preserved);
  WeightData unit = wd;
  unit.t_weight = Rational(1);
  CHECK(check_scaleup(tc, a1_table(), unit).family_homogeneous);
  const auto cone = build_test_configuration(IdealPresentation::parse(xyz, {"x*y - z^2"}), {2, 2, 2});
  const ScaleupReport trivial = check_scaleup(cone, a1_table(), unit);
  CHECK(trivial.family_homogeneous);
  CHECK(trivial.family_preserved);

  WeightData negative = wd;
  negative.t_weight = Rational(-1);
  CHECK_FALSE(check_scaleup(tc, a1_table(), negative).t_weight_positive);

  WeightData flat = wd;
  flat.weights[2] = ExactScalar(0);
  CHECK_FALSE(check_scaleup(tc, a1_table(), flat).positive_section_weights);
}

TEST_CASE("invariant generators") {
  CHECK(invariant_generators(grading({1, 1}, Rational(1)), 6) == std::vector<Monomial>{mono({0, 1, 1}), mono({1, 0, 1})});
  CHECK(invariant_generators(grading({2}, Rational(1)), 6) == std::vector<Monomial>{mono({1, 2})});
  CHECK(invariant_generators(grading({}, Rational(1)), 6).empty());
  // Weights (1, 2) with w = 2 need x1^2 t, x2 t and the prescribed x2^2 t^2.
  const auto g = invariant_generators(grading({1, 2}, Rational(2)), 6);
  CHECK(std::find(g.begin(), g.end(), mono({2, 0, 1})) != g.end());
  CHECK(std::find(g.begin(), g.end(), mono({0, 1, 1})) != g.end());
  for (const auto& m : g) CHECK(semi_invariant_weight(m, grading({1, 2}, Rational(2))) == 0);
}

TEST_CASE("semi-invariant decomposition") {
  const WeightData w11 = grading({1, 1}, Rational(1));
  const Decomposition d = decompose_semiinvariant(mono({2, 0, 1}), w11);
  CHECK(d.bounds.m == 1);
  CHECK(d.bounds.C == std::vector<std::int64_t>{2, 2});
  CHECK(d.bounds.D == 1);
  CHECK(d.prefix == mono({1, 0, 0}));
  CHECK(d.factors == std::vector<Monomial>{mono({1, 0, 1})});

  const Decomposition inv = decompose_semiinvariant(mono({1, 0, 1}), w11);
  CHECK(inv.prefix.is_one());
  CHECK(inv.factors == std::vector<Monomial>{mono({1, 0, 1})});

  const Decomposition twice = decompose_semiinvariant(mono({3, 2}), grading({1}, Rational(1)));
  CHECK(twice.bounds.C == std::vector<std::int64_t>{2});
  CHECK(twice.bounds.D == 1);
  CHECK(twice.prefix == mono({1, 0}));
  CHECK(twice.factors == std::vector<Monomial>{mono({1, 1}), mono({1, 1})});
}

TEST_CASE("decompositions round trip within the bounds") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> n_dist(1, 4), w_dist(1, 5), e_dist(0, 20);
  for (int k = 0; k < 100; ++k) {
    const int n = n_dist(rng);
    std::vector<ExactScalar> w;
    for (int i = 0; i < n; ++i) w.push_back(static_cast<long>(w_dist(rng)));
    const WeightData wd = grading(w, Rational(w_dist(rng)));
    std::vector<Monomial::Exponent> e;
    for (int i = 0; i <= n; ++i) e.push_back(static_cast<Monomial::Exponent>(e_dist(rng)));
    const Monomial m(e);
    const Decomposition d = decompose_semiinvariant(m, wd);
    Monomial product = d.prefix;
    for (const auto& f : d.factors) {
      CHECK(semi_invariant_weight(f, wd) == 0);
      product = product * f;
    }
    CHECK(product == m);
    for (int i = 0; i < n; ++i) CHECK(static_cast<std::int64_t>(d.prefix[i]) < d.bounds.C[i]);
    CHECK(static_cast<std::int64_t>(d.prefix[n]) < d.bounds.D);
  }
}

TEST_CASE("monoid operations need integer weights") {
  CHECK_THROWS_AS(invariant_generators(grading({ExactScalar::sqrt_of(2)}, Rational(1)), 4), PreconditionError);
  CHECK_THROWS_AS(decompose_semiinvariant(mono({1, 1}), grading({ExactScalar(Rational(1, 2))}, Rational(1))),
                  PreconditionError);
}
