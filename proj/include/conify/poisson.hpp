#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conify/degeneration.hpp"

namespace conify {

// Coordinate bracket table {z_i, z_j}; antisymmetric by construction.
class PoissonTable {
 public:
  PoissonTable() = default;
  explicit PoissonTable(Ring ring);

  const Ring& ring() const { return ring_; }
  // Sets {z_i, z_j} = p and {z_j, z_i} = -p.
  void set(std::size_t i, std::size_t j, const Polynomial& p);
  const Polynomial& get(std::size_t i, std::size_t j) const { return table_[i][j]; }
  bool is_zero() const;

  // Quotient context: brackets and defects are reduced modulo this ideal.
  void set_ideal(const IdealPresentation& ideal);
  const std::optional<IdealPresentation>& ideal() const { return ideal_; }

  // {f, g} through the Leibniz rule.
  Polynomial bracket(const Polynomial& f, const Polynomial& g) const;
  Polynomial reduce(const Polynomial& f) const;

 private:
  Ring ring_;
  std::vector<std::vector<Polynomial>> table_;
  std::optional<IdealPresentation> ideal_;
  std::optional<GroebnerBasis> basis_;
};

// sum_{a<b} c_ab dz_a ^ dz_b.
class FormTable {
 public:
  FormTable() = default;
  explicit FormTable(Ring ring) : ring_(std::move(ring)) {}

  const Ring& ring() const { return ring_; }
  // Adds c dz_a ^ dz_b; a > b stores -c under (b, a).
  void add(std::size_t a, std::size_t b, const Polynomial& c);
  const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& coefficients() const { return coeffs_; }

 private:
  Ring ring_;
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> coeffs_;
};

struct JacobiDefect {
  std::size_t i, j, k;
  Polynomial value;
};

// {z_i,{z_j,z_k}} + {z_j,{z_k,z_i}} + {z_k,{z_i,z_j}} for every i < j < k.
std::vector<JacobiDefect> jacobi_defect(const PoissonTable& p);
bool satisfies_jacobi(const PoissonTable& p);

bool preserves_ideal(const PoissonTable& p, const IdealPresentation& ideal);

std::optional<ExactScalar> bracket_weight(const PoissonTable& p, const WeightData& wd);
std::optional<ExactScalar> form_weight(const FormTable& f, const WeightData& wd);

struct ScaleupReport {
  bool t_weight_positive = false;
  bool bracket_weight_matches = false;
  bool positive_section_weights = false;
  std::optional<ExactScalar> bracket_weight;
  std::optional<Rational> l;
  // Informational only.
  bool family_homogeneous = false;
  bool family_preserved = false;
  std::string section_note;

  bool all_pass() const { return t_weight_positive && bracket_weight_matches && positive_section_weights; }
};

// wd carries the z weights, the t weight w (t scales by lambda^{-w}) and the
// form weight l.
ScaleupReport check_scaleup(const TestConfiguration& tc, const PoissonTable& p, const WeightData& wd);

// Monomials over (x_1..x_n, t); wd needs integer weights and an integer t weight.
std::vector<Monomial> invariant_generators(const WeightData& wd, std::int64_t cap);

struct DecompositionBounds {
  std::vector<std::int64_t> C;
  std::int64_t D = 0;
  std::int64_t w = 0;
  std::int64_t m = 0;
};

struct Decomposition {
  Monomial prefix;
  std::vector<Monomial> factors;
  DecompositionBounds bounds;
};

// Weight sum a_i w_i - b w of x^a t^b.
std::int64_t semi_invariant_weight(const Monomial& mono, const WeightData& wd);
DecompositionBounds decomposition_bounds(const WeightData& wd, std::int64_t m);
Decomposition decompose_semiinvariant(const Monomial& mono, const WeightData& wd);

}  // namespace conify
