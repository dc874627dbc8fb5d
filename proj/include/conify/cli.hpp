#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conify/poisson.hpp"

namespace conify {

struct InputDocument {
  std::int64_t field_d = 0;  // 0 for Q
  Ring ring;
  std::vector<ExactScalar> weights;
  std::optional<Rational> t_weight;
  std::optional<Rational> form_weight;
  std::optional<std::int64_t> dim;
  std::vector<Polynomial> ideal;
  std::optional<PoissonTable> bracket;
  std::optional<FormTable> form;

  IdealPresentation ideal_presentation() const;
  WeightData weight_data() const;
};

InputDocument parse_input(std::string_view text);

// Scalars separated by commas when any comma is present, otherwise by blanks.
std::vector<ExactScalar> parse_scalar_list(std::string_view text, std::int64_t field_d);

struct CatalogueEntry {
  std::string name;
  std::string summary;
  std::string text;  // input document
  std::optional<std::string> expected_bracket_weight;
  std::optional<std::string> expected_form_weight;
  std::optional<int> expected_rank;
  std::vector<std::uint64_t> expected_hilbert;  // weights 0, 1, 2, ...
  std::vector<std::string> expected_central_fiber;
};

const std::vector<CatalogueEntry>& catalogue();
const CatalogueEntry& catalogue_entry(const std::string& name);

struct CheckResult {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

// Re-verifies every expected fact of a catalogue entry.
std::vector<CheckResult> verify_entry(const CatalogueEntry& entry);

// argv without the program name. Returns the process exit code:
// 0 success, 1 usage error, 2 domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conify
