#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "conify/groebner.hpp"

namespace conify {

// One-parameter family over the line with coordinate t, the last variable of
// the family ring. z_i has weight w_i and t scales by lambda^{-1}.
struct TestConfiguration {
  Ring base_ring;
  IdealPresentation family_ideal;
  WeightData weights;
  bool saturated = false;

  std::size_t t_index() const { return family_ideal.ring.arity() - 1; }
  // Takes an arbitrary family ideal in (base..., t) as is, unsaturated.
  static TestConfiguration from_family(const Ring& base_ring, const IdealPresentation& family,
                                       const std::vector<std::int64_t>& weights);
};

TestConfiguration build_test_configuration(const IdealPresentation& ideal, const std::vector<std::int64_t>& weights,
                                           const GroebnerOptions& options = {});

// t = 0 fiber in canonical form.
IdealPresentation central_fiber(const TestConfiguration& tc, const GroebnerOptions& options = {});
// t = 1 fiber in canonical form.
IdealPresentation general_fiber(const TestConfiguration& tc, const GroebnerOptions& options = {});

bool flatness_witness(const TestConfiguration& tc, const GroebnerOptions& options = {});

// Dimension of each graded piece of the quotient ring for weights 0..cap.
std::map<std::int64_t, std::uint64_t> hilbert_function(const IdealPresentation& ideal, const WeightData& wd,
                                                       std::int64_t cap, const GroebnerOptions& options = {});

// Scales a positive rational vector to the primitive integer vector on its ray.
std::vector<std::int64_t> integer_ray(const std::vector<Rational>& v);

// Central fiber for two rational approximants of an irrational xi; throws
// Unstable when they disagree.
IdealPresentation stable_initial_ideal(const IdealPresentation& ideal, const std::vector<ExactScalar>& xi,
                                       const std::vector<Rational>& first, const std::vector<Rational>& second,
                                       const GroebnerOptions& options = {});

}  // namespace conify
