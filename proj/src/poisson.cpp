#include "conify/poisson.hpp"

#include <algorithm>
#include <numeric>

namespace conify {

PoissonTable::PoissonTable(Ring ring) : ring_(std::move(ring)) {
  const std::size_t n = ring_.arity();
  table_.assign(n, std::vector<Polynomial>(n, Polynomial(ring_)));
}

void PoissonTable::set(std::size_t i, std::size_t j, const Polynomial& p) {
  const std::size_t n = ring_.arity();
  if (i >= n || j >= n) throw ArityMismatch("bracket index out of range");
  if (!(p.ring() == ring_)) throw ArityMismatch("bracket value lives in a different ring");
  if (i == j) {
    if (!p.is_zero()) throw PreconditionError("{z, z} must vanish");
    return;
  }
  table_[i][j] = p;
  table_[j][i] = -p;
}

bool PoissonTable::is_zero() const {
  for (const auto& row : table_) {
    for (const auto& p : row) {
      if (!p.is_zero()) return false;
    }
  }
  return true;
}

void PoissonTable::set_ideal(const IdealPresentation& ideal) {
  if (!(ideal.ring == ring_)) throw ArityMismatch("ideal lives in a different ring");
  ideal_ = ideal;
  basis_ = reduced_basis(ideal, MonomialOrder::grevlex());
  for (auto& row : table_) {
    for (auto& p : row) p = normal_form(p, *basis_);
  }
}

Polynomial PoissonTable::reduce(const Polynomial& f) const { return basis_ ? normal_form(f, *basis_) : f; }

Polynomial PoissonTable::bracket(const Polynomial& f, const Polynomial& g) const {
  const std::size_t n = ring_.arity();
  std::vector<Polynomial> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  Polynomial out(ring_);
  for (std::size_t i = 0; i < n; ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || dg[j].is_zero() || table_[i][j].is_zero()) continue;
      out += df[i] * dg[j] * table_[i][j];
    }
  }
  return out;
}

void FormTable::add(std::size_t a, std::size_t b, const Polynomial& c) {
  if (a >= ring_.arity() || b >= ring_.arity()) throw ArityMismatch("form index out of range");
  if (!(c.ring() == ring_)) throw ArityMismatch("form coefficient lives in a different ring");
  if (a == b) return;
  const auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  Polynomial value = a < b ? c : -c;
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    if (!value.is_zero()) coeffs_.emplace(key, std::move(value));
    return;
  }
  it->second += value;
  if (it->second.is_zero()) coeffs_.erase(it);
}

std::vector<JacobiDefect> jacobi_defect(const PoissonTable& p) {
  const Ring& r = p.ring();
  const std::size_t n = r.arity();
  std::vector<Polynomial> z;
  for (std::size_t i = 0; i < n; ++i) z.push_back(Polynomial::variable(r, i));
  std::vector<JacobiDefect> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        Polynomial v = p.bracket(z[i], p.get(j, k)) + p.bracket(z[j], p.get(k, i)) + p.bracket(z[k], p.get(i, j));
        out.push_back({i, j, k, p.reduce(v)});
      }
    }
  }
  return out;
}

bool satisfies_jacobi(const PoissonTable& p) {
  const auto d = jacobi_defect(p);
  return std::all_of(d.begin(), d.end(), [](const JacobiDefect& x) { return x.value.is_zero(); });
}

bool preserves_ideal(const PoissonTable& p, const IdealPresentation& ideal) {
  if (!(ideal.ring == p.ring())) throw ArityMismatch("bracket and ideal live in different rings");
  const GroebnerBasis gb = reduced_basis(ideal, MonomialOrder::grevlex());
  for (std::size_t i = 0; i < p.ring().arity(); ++i) {
    const Polynomial z = Polynomial::variable(p.ring(), i);
    for (const auto& g : ideal.generators) {
      if (!normal_form(p.bracket(z, g), gb).is_zero()) return false;
    }
  }
  return true;
}

namespace {

ExactScalar variable_weight(std::size_t i, const WeightData& wd) {
  return term_weight(Monomial::variable(wd.arity(), i), wd);
}

}  // namespace

std::optional<ExactScalar> bracket_weight(const PoissonTable& p, const WeightData& wd) {
  const std::size_t n = p.ring().arity();
  if (wd.arity() != n) throw ArityMismatch("weight data does not match the bracket ring");
  std::optional<ExactScalar> lambda;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Polynomial& v = p.get(i, j);
      if (v.is_zero()) continue;
      const Homogeneity h = is_homogeneous(v, wd);
      if (!h.homogeneous) return std::nullopt;
      const ExactScalar l = *h.weight - variable_weight(i, wd) - variable_weight(j, wd);
      if (lambda && *lambda != l) return std::nullopt;
      lambda = l;
    }
  }
  return lambda;
}

std::optional<ExactScalar> form_weight(const FormTable& f, const WeightData& wd) {
  if (wd.arity() != f.ring().arity()) throw ArityMismatch("weight data does not match the form ring");
  std::optional<ExactScalar> lambda;
  for (const auto& [key, c] : f.coefficients()) {
    const Homogeneity h = is_homogeneous(c, wd);
    if (!h.homogeneous) return std::nullopt;
    const ExactScalar l = *h.weight + variable_weight(key.first, wd) + variable_weight(key.second, wd);
    if (lambda && *lambda != l) return std::nullopt;
    lambda = l;
  }
  return lambda;
}

ScaleupReport check_scaleup(const TestConfiguration& tc, const PoissonTable& p, const WeightData& wd) {
  if (!(p.ring() == tc.base_ring)) throw ArityMismatch("bracket ring differs from the family's base ring");
  if (wd.weights.size() != tc.base_ring.arity()) throw ArityMismatch("weight data does not match the base ring");
  ScaleupReport r;
  r.t_weight_positive = wd.t_weight && sgn(*wd.t_weight) > 0;

  WeightData z_only;
  z_only.weights = wd.weights;
  r.bracket_weight = bracket_weight(p, z_only);
  r.l = wd.form_weight;
  r.bracket_weight_matches = r.bracket_weight && r.l && *r.bracket_weight == ExactScalar(Rational(-*r.l));

  r.positive_section_weights =
      std::all_of(wd.weights.begin(), wd.weights.end(), [](const ExactScalar& w) { return w.sign() > 0; });
  r.section_note = "sufficient graded form only: positive fiber weights make z = 0 an invariant section";

  if (wd.t_weight) {
    r.family_homogeneous = std::all_of(tc.family_ideal.generators.begin(), tc.family_ideal.generators.end(),
                                       [&](const Polynomial& g) { return is_homogeneous(g, wd).homogeneous; });
  }
  // t is a Casimir of the family bracket.
  const Ring& fam = tc.family_ideal.ring;
  const std::size_t n = tc.base_ring.arity();
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), 0);
  PoissonTable extended(fam);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) extended.set(i, j, p.get(i, j).embed(fam, map));
  }
  r.family_preserved = preserves_ideal(extended, tc.family_ideal);
  return r;
}

namespace {

struct IntegerGrading {
  std::vector<std::int64_t> w;
  std::int64_t t = 0;
};

IntegerGrading integer_grading(const WeightData& wd) {
  if (!wd.all_integer()) throw PreconditionError("integer weights required");
  if (!wd.t_weight) throw PreconditionError("a t weight is required");
  IntegerGrading g;
  g.w = wd.integer_weights();
  for (auto x : g.w) {
    if (x <= 0) throw PreconditionError("weights must be positive integers");
  }
  const Integer t = wd.t_weight->get_num();
  if (t <= 0 || !t.fits_slong_p()) throw PreconditionError("t weight must be a positive integer");
  g.t = t.get_si();
  return g;
}

bool dominated(const Monomial& g, const Monomial& v) { return g.divides(v); }

}  // namespace

std::vector<Monomial> invariant_generators(const WeightData& wd, std::int64_t cap) {
  if (cap < 0) throw PreconditionError("cap must be non-negative");
  const IntegerGrading g = integer_grading(wd);
  const std::size_t n = g.w.size();
  // All nonzero monoid elements of total degree <= cap, grouped by degree.
  std::map<std::int64_t, std::vector<Monomial>> by_degree;
  Monomial m(n + 1);
  auto walk = [&](auto&& self, std::size_t i, std::int64_t deg, std::int64_t weight) -> void {
    if (i == n) {
      if (weight % g.t != 0) return;
      const std::int64_t b = weight / g.t;
      if (deg + b > cap || deg + b == 0) return;
      m[n] = static_cast<Monomial::Exponent>(b);
      by_degree[deg + b].push_back(m);
      m[n] = 0;
      return;
    }
    for (std::int64_t e = 0; deg + e <= cap; ++e) {
      m[i] = static_cast<Monomial::Exponent>(e);
      self(self, i + 1, deg + e, weight + e * g.w[i]);
    }
    m[i] = 0;
  };
  walk(walk, 0, 0, 0);

  std::vector<Monomial> basis;
  for (const auto& [deg, elems] : by_degree) {
    std::vector<Monomial> fresh;
    for (const auto& v : elems) {
      if (std::none_of(basis.begin(), basis.end(), [&](const Monomial& b) { return dominated(b, v); })) {
        fresh.push_back(v);
      }
    }
    basis.insert(basis.end(), fresh.begin(), fresh.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    Monomial x(n + 1);
    x[i] = static_cast<Monomial::Exponent>(g.t);
    x[n] = static_cast<Monomial::Exponent>(g.w[i]);
    if (std::find(basis.begin(), basis.end(), x) == basis.end()) basis.push_back(x);
  }
  const MonomialOrder order = MonomialOrder::grevlex();
  std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) < 0; });
  return basis;
}

std::int64_t semi_invariant_weight(const Monomial& mono, const WeightData& wd) {
  const IntegerGrading g = integer_grading(wd);
  if (mono.arity() != g.w.size() + 1) throw ArityMismatch("monomial must live in (x_1..x_n, t)");
  std::int64_t m = 0;
  for (std::size_t i = 0; i < g.w.size(); ++i) m += static_cast<std::int64_t>(mono[i]) * g.w[i];
  return m - static_cast<std::int64_t>(mono[g.w.size()]) * g.t;
}

DecompositionBounds decomposition_bounds(const WeightData& wd, std::int64_t m) {
  const IntegerGrading g = integer_grading(wd);
  DecompositionBounds b;
  b.w = g.t;
  b.m = m;
  for (auto wi : g.w) {
    const Rational c = std::max(Rational(g.t), Rational(Rational(g.t) + Rational(m, wi)));
    b.C.push_back(ceil_of(c).get_si());
  }
  Rational d = Rational(std::accumulate(g.w.begin(), g.w.end(), std::int64_t{0})) - Rational(m, g.t);
  for (auto wi : g.w) d = std::max(d, Rational(wi));
  b.D = ceil_of(d).get_si();
  return b;
}

Decomposition decompose_semiinvariant(const Monomial& mono, const WeightData& wd) {
  const IntegerGrading g = integer_grading(wd);
  const std::size_t n = g.w.size();
  Decomposition out;
  out.bounds = decomposition_bounds(wd, semi_invariant_weight(mono, wd));
  Monomial rest = mono;
  auto extract = [&](std::size_t i) {
    Monomial f(n + 1);
    f[i] = static_cast<Monomial::Exponent>(g.t);
    f[n] = static_cast<Monomial::Exponent>(g.w[i]);
    if (!f.divides(rest)) throw PreconditionError("bound violated while extracting an invariant factor");
    rest = rest.over(f);
    out.factors.push_back(std::move(f));
  };
  for (;;) {
    std::optional<std::size_t> pick;
    // a_i >= C_i forces b >= w_i.
    for (std::size_t i = 0; i < n && !pick; ++i) {
      if (static_cast<std::int64_t>(rest[i]) >= out.bounds.C[i]) pick = i;
    }
    // b >= D forces some a_i >= w.
    if (!pick && static_cast<std::int64_t>(rest[n]) >= out.bounds.D) {
      for (std::size_t i = 0; i < n && !pick; ++i) {
        if (static_cast<std::int64_t>(rest[i]) >= g.t) pick = i;
      }
      if (!pick) throw PreconditionError("no exponent reaches the t weight although b >= D");
    }
    if (!pick) break;
    extract(*pick);
  }
  out.prefix = std::move(rest);
  return out;
}

}  // namespace conify
