#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conify/polyring.hpp"

namespace conify {

struct IdealPresentation {
  Ring ring;
  std::vector<Polynomial> generators;
  std::optional<WeightData> weights;

  IdealPresentation() = default;
  IdealPresentation(Ring r, std::vector<Polynomial> gens, std::optional<WeightData> w = std::nullopt);

  // Parses each string in `ring`.
  static IdealPresentation parse(const Ring& ring, const std::vector<std::string>& generators);
  std::vector<std::string> generator_strings() const;
  bool is_unit() const;
};

struct GroebnerOptions {
  // Upper bound on reduction steps across the whole computation.
  std::uint64_t max_steps = 50'000'000;
};

// Reduced Groebner basis: monic, no term of an element divisible by the
// leading monomial of another, sorted by increasing leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(Ring ring, MonomialOrder order, std::vector<Polynomial> elements)
      : ring_(std::move(ring)), order_(std::move(order)), elements_(std::move(elements)) {}

  const Ring& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  bool is_unit() const;
  std::vector<Monomial> leading_monomials() const;

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.ring_ == b.ring_ && a.elements_ == b.elements_;
  }

 private:
  Ring ring_;
  MonomialOrder order_;
  std::vector<Polynomial> elements_;
};

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis);

// Requires a global order.
GroebnerBasis reduced_basis(const IdealPresentation& ideal, const MonomialOrder& order,
                            const GroebnerOptions& options = {});

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);
// Every S-polynomial of the basis reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& basis);

bool ideal_contains(const IdealPresentation& ideal, const Polynomial& f);
bool same_ideal(const IdealPresentation& a, const IdealPresentation& b, const GroebnerOptions& options = {});
// The ideal re-presented by its reduced grevlex basis.
IdealPresentation canonical(const IdealPresentation& ideal, const GroebnerOptions& options = {});

// Elements of the reduced basis for the block order that are free of the
// first `block` variables, restricted to the remaining ones.
IdealPresentation eliminate_leading_block(const IdealPresentation& ideal, std::size_t block,
                                          const Ring& remaining, const GroebnerOptions& options = {});

// (I : v^inf) via a fresh variable u, u*v - 1, and elimination of u.
IdealPresentation saturate_by_variable(const IdealPresentation& ideal, std::size_t var,
                                       const GroebnerOptions& options = {});
IdealPresentation intersect(const IdealPresentation& a, const IdealPresentation& b,
                            const GroebnerOptions& options = {});
// (I : f) = (I intersect <f>) / f.
IdealPresentation ideal_quotient(const IdealPresentation& ideal, const Polynomial& f,
                                 const GroebnerOptions& options = {});

// p / f, throwing unless f divides p exactly.
Polynomial divide_exact(const Polynomial& p, const Polynomial& f);

// Standard basis for the local order that puts minimal weight first (ties by
// grevlex), computed with Mora's normal form. Only the leading data is
// canonical; the elements themselves are not reduced.
std::vector<Polynomial> local_standard_basis(const IdealPresentation& ideal, const std::vector<ExactScalar>& weights,
                                             const GroebnerOptions& options = {});

// The ideal generated by minimal-weight initial forms of all elements of I,
// obtained from a local standard basis and returned in canonical form.
IdealPresentation weighted_initial_ideal(const IdealPresentation& ideal, const std::vector<ExactScalar>& weights,
                                         const GroebnerOptions& options = {});

}  // namespace conify
