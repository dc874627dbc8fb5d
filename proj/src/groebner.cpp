#include "conify/groebner.hpp"

#include <algorithm>
#include <numeric>

namespace conify {

IdealPresentation::IdealPresentation(Ring r, std::vector<Polynomial> gens, std::optional<WeightData> w)
    : ring(std::move(r)), generators(std::move(gens)), weights(std::move(w)) {
  for (const auto& g : generators) {
    if (!(g.ring() == ring)) throw ArityMismatch("generator ring differs from ideal ring");
  }
  std::erase_if(generators, [](const Polynomial& g) { return g.is_zero(); });
}

IdealPresentation IdealPresentation::parse(const Ring& ring, const std::vector<std::string>& generators) {
  std::vector<Polynomial> gens;
  gens.reserve(generators.size());
  for (const auto& s : generators) gens.push_back(Polynomial::parse(s, ring));
  return IdealPresentation(ring, std::move(gens));
}

std::vector<std::string> IdealPresentation::generator_strings() const {
  std::vector<std::string> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.str());
  return out;
}

bool IdealPresentation::is_unit() const {
  return std::any_of(generators.begin(), generators.end(), [](const Polynomial& g) { return g.is_constant(); });
}

bool GroebnerBasis::is_unit() const {
  return elements_.size() == 1 && elements_.front().is_constant();
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& e : elements_) out.push_back(e.leading_term(order_).monomial);
  return out;
}

namespace {

// Terms sorted in descending order for one fixed monomial order; the
// leading term is at the front.
struct OrderedPoly {
  std::vector<Term> terms;
  std::uint64_t ecart = 0;

  bool empty() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
};

class Engine {
 public:
  Engine(const Ring& ring, const MonomialOrder& order, const GroebnerOptions& options)
      : ring_(ring), order_(order), options_(options) {}

  OrderedPoly from(const Polynomial& p) const {
    OrderedPoly out;
    out.terms = p.terms();
    std::sort(out.terms.begin(), out.terms.end(),
              [&](const Term& a, const Term& b) { return order_.greater(a.monomial, b.monomial); });
    out.ecart = ecart(out);
    return out;
  }

  Polynomial to(const OrderedPoly& p) const { return Polynomial(ring_, p.terms); }

  static std::uint64_t ecart(const OrderedPoly& p) {
    if (p.terms.empty()) return 0;
    std::uint64_t top = 0;
    for (const auto& t : p.terms) top = std::max(top, t.monomial.degree());
    return top - p.lead().monomial.degree();
  }

  void make_monic(OrderedPoly& p) const {
    if (p.empty() || p.lead().coeff == 1) return;
    const Rational inv = Rational(1) / p.lead().coeff;
    for (auto& t : p.terms) t.coeff *= inv;
  }

  void tick() {
    if (++steps_ > options_.max_steps) {
      throw BudgetExceeded("Groebner computation exceeded " + std::to_string(options_.max_steps) + " steps");
    }
  }

  // a[from..] - c * m * b[1..], assuming the leading terms cancel.
  std::vector<Term> cancel_lead(const std::vector<Term>& a, std::size_t from, const OrderedPoly& b,
                                const Monomial& m, const Rational& c) const {
    std::vector<Term> out;
    out.reserve(a.size() - from + b.terms.size());
    std::size_t i = from + 1;
    std::size_t j = 1;
    while (i < a.size() || j < b.terms.size()) {
      if (j == b.terms.size()) {
        out.push_back(a[i++]);
        continue;
      }
      Monomial bm = b.terms[j].monomial * m;
      const int cmp = i == a.size() ? -1 : order_.compare(a[i].monomial, bm);
      if (cmp > 0) {
        out.push_back(a[i++]);
      } else if (cmp < 0) {
        out.push_back({std::move(bm), Rational(-c * b.terms[j].coeff)});
        ++j;
      } else {
        Rational s = a[i].coeff - c * b.terms[j].coeff;
        if (sgn(s) != 0) out.push_back({std::move(bm), std::move(s)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Full reduction with respect to a global order.
  OrderedPoly reduce(const OrderedPoly& f, const std::vector<OrderedPoly>& basis, std::size_t skip = SIZE_MAX) {
    OrderedPoly rem;
    std::vector<Term> h = f.terms;
    std::size_t start = 0;
    while (start < h.size()) {
      const Term& lt = h[start];
      const OrderedPoly* divisor = nullptr;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (k == skip || basis[k].empty()) continue;
        if (basis[k].lead().monomial.divides(lt.monomial)) {
          divisor = &basis[k];
          break;
        }
      }
      if (divisor == nullptr) {
        rem.terms.push_back(lt);
        ++start;
        continue;
      }
      tick();
      const Monomial m = lt.monomial.over(divisor->lead().monomial);
      const Rational c = lt.coeff / divisor->lead().coeff;
      h = cancel_lead(h, start, *divisor, m, c);
      start = 0;
    }
    return rem;
  }

  OrderedPoly spoly(const OrderedPoly& f, const OrderedPoly& g) const {
    const Monomial l = f.lead().monomial.lcm(g.lead().monomial);
    const Monomial mf = l.over(f.lead().monomial);
    const Monomial mg = l.over(g.lead().monomial);
    // (1/lc f) mf f - (1/lc g) mg g
    OrderedPoly a;
    const Rational cf = Rational(1) / f.lead().coeff;
    for (const auto& t : f.terms) a.terms.push_back({t.monomial * mf, t.coeff * cf});
    const Rational cg = g.lead().coeff / Rational(1);
    OrderedPoly gs = g;
    for (auto& t : gs.terms) t.coeff /= cg;
    OrderedPoly out;
    out.terms = cancel_lead(a.terms, 0, gs, mg, Rational(1));
    out.ecart = ecart(out);
    return out;
  }

  // Mora's normal form for an arbitrary (here: local) order.
  OrderedPoly mora_nf(OrderedPoly h, const std::vector<OrderedPoly>& basis) {
    std::vector<OrderedPoly> extra;
    while (!h.empty()) {
      const OrderedPoly* best = nullptr;
      auto consider = [&](const OrderedPoly& g) {
        if (g.lead().monomial.divides(h.lead().monomial) && (best == nullptr || g.ecart < best->ecart)) best = &g;
      };
      for (const auto& g : basis) consider(g);
      for (const auto& g : extra) consider(g);
      if (best == nullptr) break;
      tick();
      OrderedPoly g = *best;
      if (g.ecart > h.ecart) extra.push_back(h);
      const Monomial m = h.lead().monomial.over(g.lead().monomial);
      const Rational c = h.lead().coeff / g.lead().coeff;
      h.terms = cancel_lead(h.terms, 0, g, m, c);
      h.ecart = ecart(h);
    }
    return h;
  }

  std::uint64_t steps() const { return steps_; }
  const MonomialOrder& order() const { return order_; }

 private:
  const Ring& ring_;
  const MonomialOrder& order_;
  GroebnerOptions options_;
  std::uint64_t steps_ = 0;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

void check_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw ArityMismatch("polynomial and basis live in different rings");
}

}  // namespace

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  check_ring(f.ring(), basis.ring());
  GroebnerOptions options;
  Engine engine(basis.ring(), basis.order(), options);
  std::vector<OrderedPoly> g;
  g.reserve(basis.elements().size());
  for (const auto& e : basis.elements()) g.push_back(engine.from(e));
  return engine.to(engine.reduce(engine.from(f), g));
}

GroebnerBasis reduced_basis(const IdealPresentation& ideal, const MonomialOrder& order,
                            const GroebnerOptions& options) {
  if (!order.is_global()) throw PreconditionError("reduced bases require a global order");
  Engine engine(ideal.ring, order, options);

  std::vector<OrderedPoly> basis;
  std::vector<Pair> pairs;
  // pending[i][j] (i < j) marks pairs still in the queue.
  std::vector<std::vector<char>> pending;

  auto add = [&](OrderedPoly p) {
    engine.make_monic(p);
    const std::size_t k = basis.size();
    for (auto& row : pending) row.push_back(0);
    pending.emplace_back(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (basis[i].empty()) continue;
      pairs.push_back({i, k, basis[i].lead().monomial.lcm(p.lead().monomial)});
      pending[i][k] = 1;
    }
    basis.push_back(std::move(p));
  };

  for (const auto& g : ideal.generators) {
    if (!(g.ring() == ideal.ring)) throw ArityMismatch("generator ring differs from ideal ring");
    OrderedPoly p = engine.reduce(engine.from(g), basis);
    if (!p.empty()) add(std::move(p));
  }

  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return pending[a][b] != 0;
  };

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm degree, then smallest lcm in the order.
    auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      const auto da = a.lcm.degree(), db = b.lcm.degree();
      if (da != db) return da < db;
      const int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    const Pair pair = *it;
    pairs.erase(it);
    pending[pair.i][pair.j] = 0;

    const OrderedPoly& f = basis[pair.i];
    const OrderedPoly& g = basis[pair.j];
    if (f.lead().monomial.coprime(g.lead().monomial)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j || basis[k].empty()) continue;
      if (basis[k].lead().monomial.divides(pair.lcm) && !is_pending(pair.i, k) && !is_pending(pair.j, k)) {
        chain = true;
      }
    }
    if (chain) continue;

    OrderedPoly h = engine.reduce(engine.spoly(f, g), basis);
    if (!h.empty()) add(std::move(h));
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<OrderedPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = basis[i].lead().monomial;
      const auto& mj = basis[j].lead().monomial;
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    OrderedPoly tail;
    tail.terms.assign(minimal[i].terms.begin() + 1, minimal[i].terms.end());
    OrderedPoly reduced = engine.reduce(tail, minimal, i);
    reduced.terms.insert(reduced.terms.begin(), minimal[i].lead());
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.lead().monomial, b.lead().monomial) < 0;
  });

  std::vector<Polynomial> elements;
  elements.reserve(minimal.size());
  for (const auto& p : minimal) elements.push_back(engine.to(p));
  return GroebnerBasis(ideal.ring, order, std::move(elements));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  check_ring(f.ring(), g.ring());
  GroebnerOptions options;
  Engine engine(f.ring(), order, options);
  return engine.to(engine.spoly(engine.from(f), engine.from(g)));
}

bool satisfies_buchberger_criterion(const GroebnerBasis& basis) {
  const auto& el = basis.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      if (!normal_form(s_polynomial(el[i], el[j], basis.order()), basis).is_zero()) return false;
    }
  }
  return true;
}

bool ideal_contains(const IdealPresentation& ideal, const Polynomial& f) {
  return normal_form(f, reduced_basis(ideal, MonomialOrder::grevlex())).is_zero();
}

IdealPresentation canonical(const IdealPresentation& ideal, const GroebnerOptions& options) {
  GroebnerBasis gb = reduced_basis(ideal, MonomialOrder::grevlex(), options);
  return IdealPresentation(ideal.ring, gb.elements(), ideal.weights);
}

bool same_ideal(const IdealPresentation& a, const IdealPresentation& b, const GroebnerOptions& options) {
  if (!(a.ring == b.ring)) return false;
  return reduced_basis(a, MonomialOrder::grevlex(), options) == reduced_basis(b, MonomialOrder::grevlex(), options);
}

IdealPresentation eliminate_leading_block(const IdealPresentation& ideal, std::size_t block, const Ring& remaining,
                                          const GroebnerOptions& options) {
  if (block + remaining.arity() != ideal.ring.arity()) throw ArityMismatch("elimination block does not fit the ring");
  GroebnerBasis gb = reduced_basis(ideal, MonomialOrder::elimination(block), options);
  std::vector<std::size_t> keep(remaining.arity());
  std::iota(keep.begin(), keep.end(), block);
  std::vector<Polynomial> out;
  for (const auto& g : gb.elements()) {
    bool free = true;
    for (std::size_t v = 0; v < block; ++v) free = free && !g.involves(v);
    if (free) out.push_back(g.restrict_to(remaining, keep));
  }
  return IdealPresentation(remaining, std::move(out));
}

namespace {

// Embeds `ideal` into (fresh, ring...) and returns the index map.
std::vector<std::size_t> shift_by_one(std::size_t n) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), 1);
  return map;
}

}  // namespace

IdealPresentation saturate_by_variable(const IdealPresentation& ideal, std::size_t var,
                                       const GroebnerOptions& options) {
  if (var >= ideal.ring.arity()) throw ArityMismatch("saturation variable out of range");
  const Ring big = ideal.ring.with_prepended(ideal.ring.fresh_name("u"));
  const auto map = shift_by_one(ideal.ring.arity());
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators) gens.push_back(g.embed(big, map));
  gens.push_back(Polynomial::variable(big, 0) * Polynomial::variable(big, var + 1) - Polynomial::constant(big, 1));
  IdealPresentation result = eliminate_leading_block(IdealPresentation(big, std::move(gens)), 1, ideal.ring, options);
  result.weights = ideal.weights;
  return result;
}

IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b, const GroebnerOptions& options) {
  if (!(a.ring == b.ring)) throw ArityMismatch("intersection of ideals in different rings");
  const Ring big = a.ring.with_prepended(a.ring.fresh_name("y"));
  const auto map = shift_by_one(a.ring.arity());
  const Polynomial y = Polynomial::variable(big, 0);
  const Polynomial one_minus_y = Polynomial::constant(big, 1) - y;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators) gens.push_back(y * g.embed(big, map));
  for (const auto& g : b.generators) gens.push_back(one_minus_y * g.embed(big, map));
  return eliminate_leading_block(IdealPresentation(big, std::move(gens)), 1, a.ring, options);
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& f) {
  check_ring(p.ring(), f.ring());
  if (f.is_zero()) throw DivisionByZero();
  const auto& order = MonomialOrder::grevlex();
  GroebnerOptions options;
  Engine engine(p.ring(), order, options);
  const OrderedPoly divisor = engine.from(f);
  std::vector<Term> h = engine.from(p).terms;
  std::vector<Term> quotient;
  while (!h.empty()) {
    const Term& lt = h.front();
    if (!divisor.lead().monomial.divides(lt.monomial)) throw PreconditionError("division is not exact");
    const Monomial m = lt.monomial.over(divisor.lead().monomial);
    const Rational c = lt.coeff / divisor.lead().coeff;
    quotient.push_back({m, c});
    h = engine.cancel_lead(h, 0, divisor, m, c);
  }
  return Polynomial(p.ring(), std::move(quotient));
}

IdealPresentation ideal_quotient(const IdealPresentation& ideal, const Polynomial& f, const GroebnerOptions& options) {
  if (f.is_zero()) throw PreconditionError("ideal quotient by the zero polynomial");
  check_ring(ideal.ring, f.ring());
  IdealPresentation meet = intersect(ideal, IdealPresentation(ideal.ring, {f}), options);
  std::vector<Polynomial> gens;
  for (const auto& g : meet.generators) gens.push_back(divide_exact(g, f));
  IdealPresentation result = canonical(IdealPresentation(ideal.ring, std::move(gens)), options);
  result.weights = ideal.weights;
  return result;
}

std::vector<Polynomial> local_standard_basis(const IdealPresentation& ideal, const std::vector<ExactScalar>& weights,
                                             const GroebnerOptions& options) {
  if (weights.size() != ideal.ring.arity()) throw ArityMismatch("weight vector length differs from ring arity");
  const MonomialOrder order = MonomialOrder::weighted(weights, MonomialOrder::WeightDirection::Local);
  Engine engine(ideal.ring, order, options);

  std::vector<OrderedPoly> basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  auto add = [&](OrderedPoly p) {
    engine.make_monic(p);
    for (std::size_t i = 0; i < basis.size(); ++i) pairs.emplace_back(i, basis.size());
    basis.push_back(std::move(p));
  };
  for (const auto& g : ideal.generators) {
    OrderedPoly p = engine.mora_nf(engine.from(g), basis);
    if (!p.empty()) add(std::move(p));
  }
  std::size_t next = 0;
  while (next < pairs.size()) {
    const auto [i, j] = pairs[next++];
    OrderedPoly h = engine.mora_nf(engine.spoly(basis[i], basis[j]), basis);
    if (!h.empty()) add(std::move(h));
  }

  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = basis[i].lead().monomial;
      const auto& mj = basis[j].lead().monomial;
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) out.push_back(engine.to(basis[i]));
  }
  return out;
}

IdealPresentation weighted_initial_ideal(const IdealPresentation& ideal, const std::vector<ExactScalar>& weights,
                                         const GroebnerOptions& options) {
  WeightData wd;
  wd.weights = weights;
  std::vector<Polynomial> forms;
  for (const auto& s : local_standard_basis(ideal, weights, options)) forms.push_back(initial_form(s, wd));
  return canonical(IdealPresentation(ideal.ring, std::move(forms)), options);
}

}  // namespace conify
