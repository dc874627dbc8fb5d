#include <doctest.h>

#include <algorithm>
#include <random>

#include "conify/groebner.hpp"

using namespace conify;

namespace {

// Textbook Buchberger without criteria, used as an oracle.
Polynomial naive_reduce(Polynomial f, const std::vector<Polynomial>& g, const MonomialOrder& o) {
  Polynomial rest(f.ring());
  while (!f.is_zero()) {
    const Term lt = f.leading_term(o);
    bool divided = false;
    for (const auto& h : g) {
      const Term& lh = h.leading_term(o);
      if (lh.monomial.divides(lt.monomial)) {
        f -= h.times(lt.monomial.over(lh.monomial), lt.coeff / lh.coeff);
        divided = true;
        break;
      }
    }
    if (!divided) {
      const Polynomial head = Polynomial::monomial(f.ring(), lt.monomial, lt.coeff);
      rest += head;
      f -= head;
    }
  }
  return rest;
}

std::vector<Polynomial> naive_reduced_basis(std::vector<Polynomial> g, const MonomialOrder& o) {
  g.erase(std::remove_if(g.begin(), g.end(), [](const Polynomial& p) { return p.is_zero(); }), g.end());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Polynomial r = naive_reduce(s_polynomial(g[i], g[j], o), g, o);
      if (!r.is_zero()) g.push_back(r);
    }
  }
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = g[i].leading_term(o).monomial;
      const auto& mj = g[j].leading_term(o).monomial;
      redundant = mj.divides(mi) && (!(mi == mj) || j < i);
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const Polynomial lead = Polynomial::monomial(minimal[i].ring(), minimal[i].leading_term(o).monomial,
                                                 minimal[i].leading_term(o).coeff);
    out.push_back((lead + naive_reduce(minimal[i] - lead, others, o)).monic(o));
  }
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return o.greater(b.leading_term(o).monomial, a.leading_term(o).monomial);
  });
  return out;
}

Polynomial random_poly(const Ring& r, std::mt19937_64& rng, unsigned max_deg, int terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m(r.arity());
    unsigned budget = deg(rng);
    for (std::size_t i = 0; i < r.arity() && budget; ++i) {
      std::uniform_int_distribution<unsigned> e(0, budget);
      m[i] = e(rng);
      budget -= m[i];
    }
    const int c = coeff(rng);
    if (c) ts.push_back({m, Rational(c)});
  }
  return Polynomial(r, ts);
}

IdealPresentation ideal(const Ring& r, std::vector<std::string> gens) { return IdealPresentation::parse(r, gens); }

std::vector<std::string> strs(const GroebnerBasis& g) {
  std::vector<std::string> out;
  for (const auto& p : g.elements()) out.push_back(p.str());
  return out;
}

}  // namespace

TEST_CASE("normal forms") {
  const Ring r({"x", "y", "z"});
  const auto lex = MonomialOrder::lex();
  const GroebnerBasis bx(r, lex, {Polynomial::parse("x", r)});
  CHECK(normal_form(Polynomial::parse("x^2", r), bx).is_zero());
  const GroebnerBasis b(r, lex, {Polynomial::parse("x*y - z", r)});
  CHECK(normal_form(Polynomial::parse("x^2*y", r), b) == Polynomial::parse("x*z", r));
  const GroebnerBasis empty(r, lex, {});
  const Polynomial f = Polynomial::parse("x + y^2", r);
  CHECK(normal_form(f, empty) == f);
}

TEST_CASE("reduced bases of small ideals") {
  const Ring xy({"x", "y"});
  const Ring xyz({"x", "y", "z"});
  const auto lex = MonomialOrder::lex();
  CHECK(strs(reduced_basis(ideal(xy, {"x", "y"}), lex)) == std::vector<std::string>{"y", "x"});
  const GroebnerBasis unit = reduced_basis(ideal(xy, {"x*y - 1", "x^2"}), lex);
  CHECK(unit.is_unit());
  CHECK(strs(unit) == std::vector<std::string>{"1"});
  CHECK(strs(reduced_basis(ideal(xyz, {"x*y - z^2", "x - y"}), lex)) ==
        std::vector<std::string>{"y^2 - z^2", "x - y"});
}

TEST_CASE("agreement with the naive oracle") {
  std::mt19937_64 rng(11);
  const Ring r({"x", "y", "z"});
  for (const auto& order : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
    for (int k = 0; k < 15; ++k) {
      std::vector<Polynomial> gens;
      for (int g = 0; g < 3; ++g) gens.push_back(random_poly(r, rng, 3, 3));
      const GroebnerBasis gb = reduced_basis(IdealPresentation(r, gens), order);
      CHECK(gb.elements() == naive_reduced_basis(gens, order));
      CHECK(satisfies_buchberger_criterion(gb));
    }
  }
}

TEST_CASE("ideal members reduce to zero") {
  std::mt19937_64 rng(5);
  const Ring r({"x", "y", "z"});
  for (int k = 0; k < 20; ++k) {
    std::vector<Polynomial> gens{random_poly(r, rng, 3, 3), random_poly(r, rng, 3, 3)};
    const GroebnerBasis gb = reduced_basis(IdealPresentation(r, gens), MonomialOrder::grevlex());
    Polynomial member = gens[0] * random_poly(r, rng, 2, 3) + gens[1] * random_poly(r, rng, 2, 3);
    CHECK(normal_form(member, gb).is_zero());
  }
}

TEST_CASE("generator order does not matter") {
  std::mt19937_64 rng(23);
  const Ring r({"x", "y", "z"});
  for (int k = 0; k < 10; ++k) {
    std::vector<Polynomial> gens{random_poly(r, rng, 3, 3), random_poly(r, rng, 3, 3), random_poly(r, rng, 2, 2)};
    const GroebnerBasis ref = reduced_basis(IdealPresentation(r, gens), MonomialOrder::grevlex());
    std::sort(gens.begin(), gens.end(), [](const Polynomial& a, const Polynomial& b) { return a.str() < b.str(); });
    do {
      CHECK(reduced_basis(IdealPresentation(r, gens), MonomialOrder::grevlex()) == ref);
    } while (std::next_permutation(gens.begin(), gens.end(),
                                   [](const Polynomial& a, const Polynomial& b) { return a.str() < b.str(); }));
  }
}

TEST_CASE("step budget") {
  const Ring r({"x", "y", "z"});
  GroebnerOptions tight;
  tight.max_steps = 3;
  const IdealPresentation twisted = ideal(r, {"x^2*y - z^2", "x*y^2 - x*z", "y*z^2 - x^2"});
  CHECK_THROWS_AS(reduced_basis(twisted, MonomialOrder::grevlex(), tight), BudgetExceeded);
  CHECK_NOTHROW(reduced_basis(twisted, MonomialOrder::grevlex()));
}

TEST_CASE("saturation") {
  const Ring r({"x", "t"});
  CHECK(saturate_by_variable(ideal(r, {"t*x"}), 1).generator_strings() == std::vector<std::string>{"x"});
  CHECK(saturate_by_variable(ideal(r, {"x"}), 1).generator_strings() == std::vector<std::string>{"x"});
  CHECK(saturate_by_variable(ideal(r, {"t^2"}), 1).is_unit());
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const IdealPresentation i(r, {random_poly(r, rng, 3, 3), random_poly(r, rng, 3, 2)});
    const IdealPresentation once = saturate_by_variable(i, 1);
    CHECK(saturate_by_variable(once, 1).generator_strings() == once.generator_strings());
  }
}

TEST_CASE("quotients and intersections") {
  const Ring r({"x", "y", "z"});
  CHECK(ideal_quotient(ideal(r, {"x*y"}), Polynomial::parse("x", r)).generator_strings() ==
        std::vector<std::string>{"y"});
  CHECK(same_ideal(ideal_quotient(ideal(r, {"x*y - z^2", "x"}), Polynomial::parse("z", r)), ideal(r, {"x", "z"})));
  CHECK(ideal_quotient(ideal(r, {"x"}), Polynomial::parse("y", r)).generator_strings() ==
        std::vector<std::string>{"x"});
  CHECK(same_ideal(intersect(ideal(r, {"x"}), ideal(r, {"y"})), ideal(r, {"x*y"})));
  CHECK(divide_exact(Polynomial::parse("x^2 - y^2", r), Polynomial::parse("x - y", r)) ==
        Polynomial::parse("x + y", r));
  CHECK_THROWS_AS(divide_exact(Polynomial::parse("x^2 + y", r), Polynomial::parse("x", r)), PreconditionError);
}

TEST_CASE("minimal weight initial ideals") {
  const Ring r({"x", "y"});
  const std::vector<ExactScalar> ones{1, 1};
  // x^2 = (x + y^3)(x - y^3) + y^6 puts y^6 in the initial ideal.
  CHECK(weighted_initial_ideal(ideal(r, {"x + y^3", "x^2"}), ones).generator_strings() ==
        std::vector<std::string>{"x", "y^6"});
  CHECK(weighted_initial_ideal(ideal(r, {"x - y"}), {2, 1}).generator_strings() == std::vector<std::string>{"y"});
  const Ring xyz({"x", "y", "z"});
  CHECK(weighted_initial_ideal(ideal(xyz, {"x*y - z^2 - x^3"}), {2, 2, 2}).generator_strings() ==
        std::vector<std::string>{"x*y - z^2"});
}

TEST_CASE("quotient by zero is rejected") {
  const Ring r({"x", "y"});
  CHECK_THROWS_AS(ideal_quotient(ideal(r, {"x"}), Polynomial(r)), PreconditionError);
  CHECK_THROWS_AS(normal_form(Polynomial::parse("u", Ring({"u"})), GroebnerBasis(r, MonomialOrder::lex(), {})),
                  ArityMismatch);
}
