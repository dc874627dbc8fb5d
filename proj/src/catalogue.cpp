#include <array>
#include <sstream>

#include "conify/cli.hpp"
#include "conify/diophantine.hpp"

namespace conify {

namespace {

using Sym4 = std::array<std::array<Rational, 4>, 4>;

// sp_4 as J * S with S symmetric; coordinates z1..z10 are dual to the basis
// S_ab = e_ab + e_ba (a <= b, S_aa = e_aa). [J S, J T] = J (S J T - T J S).
std::string sp4_bracket_lines() {
  const std::array<std::array<int, 4>, 4> J{{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}}};
  std::vector<std::pair<int, int>> index;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) index.emplace_back(a, b);
  }
  auto basis = [&](std::size_t k) {
    Sym4 s{};
    for (auto& row : s) row.fill(0);
    s[index[k].first][index[k].second] = 1;
    s[index[k].second][index[k].first] = 1;
    return s;
  };
  auto mul = [](const Sym4& x, const Sym4& y) {
    Sym4 out{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        Rational v = 0;
        for (int k = 0; k < 4; ++k) v += x[i][k] * y[k][j];
        out[i][j] = v;
      }
    }
    return out;
  };
  Sym4 jm{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) jm[i][j] = J[i][j];
  }
  std::ostringstream out;
  for (std::size_t p = 0; p < index.size(); ++p) {
    for (std::size_t q = p + 1; q < index.size(); ++q) {
      const Sym4 s = basis(p), t = basis(q);
      const Sym4 a = mul(mul(s, jm), t);
      const Sym4 b = mul(mul(t, jm), s);
      std::string rhs;
      for (std::size_t k = 0; k < index.size(); ++k) {
        const auto [i, j] = index[k];
        const Rational c = a[i][j] - b[i][j];
        if (sgn(c) == 0) continue;
        const std::string var = "z" + std::to_string(k + 1);
        if (!rhs.empty()) rhs += sgn(c) > 0 ? " + " : " - ";
        else if (sgn(c) < 0) rhs += "-";
        const Rational m = abs(c);
        rhs += (m == 1 ? "" : m.get_str() + "*") + var;
      }
      if (!rhs.empty()) out << "  {z" << p + 1 << ",z" << q + 1 << "} = " << rhs << "\n";
    }
  }
  return out.str();
}

std::vector<CatalogueEntry> build() {
  std::vector<CatalogueEntry> out;

  CatalogueEntry c2;
  c2.name = "c2";
  c2.summary = "flat C^2 with the standard symplectic form";
  c2.text =
      "ring u v\n"
      "weights 1 1\n"
      "sympweight 2\n"
      "dim 2\n"
      "bracket\n"
      "  {u,v} = 1\n"
      "end\n"
      "form\n"
      "  [u,v] = 1\n"
      "end\n";
  c2.expected_bracket_weight = "-2";
  c2.expected_form_weight = "2";
  c2.expected_rank = 1;
  c2.expected_hilbert = {1, 2, 3, 4, 5};
  out.push_back(c2);

  CatalogueEntry a1;
  a1.name = "a1";
  a1.summary = "A1 surface singularity xy = z^2";
  a1.text =
      "ring x y z\n"
      "weights 2 2 2\n"
      "tweight 1\n"
      "sympweight 2\n"
      "dim 2\n"
      "ideal\n"
      "  x*y - z^2\n"
      "end\n"
      "bracket\n"
      "  {x,y} = 4*z\n"
      "  {x,z} = 2*x\n"
      "  {y,z} = -2*y\n"
      "end\n";
  a1.expected_bracket_weight = "-2";
  a1.expected_rank = 1;
  a1.expected_hilbert = {1, 0, 3, 0, 5, 0, 7, 0, 9};
  a1.expected_central_fiber = {"x*y - z^2"};
  out.push_back(a1);

  CatalogueEntry a2;
  a2.name = "a2";
  a2.summary = "A2 surface singularity xy = z^3";
  a2.text =
      "ring x y z\n"
      "weights 3 3 2\n"
      "tweight 1\n"
      "sympweight 2\n"
      "dim 2\n"
      "ideal\n"
      "  x*y - z^3\n"
      "end\n"
      "bracket\n"
      "  {x,y} = 9*z^2\n"
      "  {x,z} = 3*x\n"
      "  {y,z} = -3*y\n"
      "end\n";
  a2.expected_bracket_weight = "-2";
  a2.expected_rank = 1;
  // Standard monomials z^c x^a y^b with c <= 2, weight 3a + 3b + 2c.
  a2.expected_hilbert = {1, 0, 1, 2, 1, 2, 3, 2, 3};
  a2.expected_central_fiber = {"z^3 - x*y"};
  out.push_back(a2);

  CatalogueEntry a1d;
  a1d.name = "a1_deformed";
  a1d.summary = "xy = z^2 + x^3, degenerating to the A1 cone";
  a1d.text =
      "ring x y z\n"
      "weights 2 2 2\n"
      "tweight 1\n"
      "dim 2\n"
      "ideal\n"
      "  x*y - z^2 - x^3\n"
      "end\n";
  a1d.expected_rank = 1;
  a1d.expected_central_fiber = {"x*y - z^2"};
  out.push_back(a1d);

  CatalogueEntry og;
  og.name = "ogrady_weights";
  og.summary = "weight data of the O'Grady ten-dimensional example: C^10 of weight 2 and C^4 of weight 1";
  std::ostringstream text;
  text << "ring";
  for (int i = 1; i <= 14; ++i) text << " z" << i;
  text << "\nweights 2 2 2 2 2 2 2 2 2 2 1 1 1 1\n"
       << "sympweight 2\n"
       << "dim 10\n"
       << "bracket\n"
       << sp4_bracket_lines() << "  {z11,z13} = 1\n  {z12,z14} = 1\nend\n"
       << "form\n  [z11,z13] = 1\n  [z12,z14] = 1\nend\n";
  og.text = text.str();
  og.expected_bracket_weight = "-2";
  og.expected_form_weight = "2";
  og.expected_rank = 1;
  out.push_back(og);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out + "]";
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::vector<std::string> s;
  for (auto x : v) s.push_back(std::to_string(x));
  return join(s);
}

}  // namespace

const std::vector<CatalogueEntry>& catalogue() {
  static const std::vector<CatalogueEntry> entries = build();
  return entries;
}

const CatalogueEntry& catalogue_entry(const std::string& name) {
  for (const auto& e : catalogue()) {
    if (e.name == name) return e;
  }
  throw NotFound("no catalogue entry named '" + name + "'");
}

std::vector<CheckResult> verify_entry(const CatalogueEntry& entry) {
  std::vector<CheckResult> out;
  auto check = [&](std::string name, std::string expected, std::string actual) {
    const bool pass = expected == actual;
    out.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };
  auto opt = [](const std::optional<ExactScalar>& x) { return x ? x->str() : std::string("none"); };

  const InputDocument doc = parse_input(entry.text);
  const WeightData wd = doc.weight_data();
  const ReebVector reeb(doc.weights, doc.dim.value_or(static_cast<std::int64_t>(doc.weights.size())));

  if (doc.bracket) {
    const auto defects = jacobi_defect(*doc.bracket);
    std::size_t nonzero = 0;
    for (const auto& d : defects) nonzero += d.value.is_zero() ? 0 : 1;
    check("jacobi_defect", "0 nonzero of " + std::to_string(defects.size()),
          std::to_string(nonzero) + " nonzero of " + std::to_string(defects.size()));
    if (!doc.ideal.empty()) {
      check("preserves_ideal", "true", preserves_ideal(*doc.bracket, doc.ideal_presentation()) ? "true" : "false");
    }
  }
  if (entry.expected_bracket_weight) {
    check("bracket_weight", *entry.expected_bracket_weight, doc.bracket ? opt(bracket_weight(*doc.bracket, wd)) : "none");
    if (doc.form_weight) {
      check("bracket_weight = -l", "-" + to_string(*doc.form_weight),
            doc.bracket ? opt(bracket_weight(*doc.bracket, wd)) : "none");
    }
  }
  if (entry.expected_form_weight) {
    check("form_weight", *entry.expected_form_weight, doc.form ? opt(form_weight(*doc.form, wd)) : "none");
  }
  if (entry.expected_rank) check("rational_rank", std::to_string(*entry.expected_rank), std::to_string(rational_rank(reeb)));
  check("one_in_span", "true", one_in_span(reeb) ? "true" : "false");

  if (!entry.expected_hilbert.empty()) {
    const auto h = hilbert_function(doc.ideal_presentation(), wd, static_cast<std::int64_t>(entry.expected_hilbert.size()) - 1);
    std::vector<std::uint64_t> got;
    for (const auto& [k, v] : h) got.push_back(v);
    check("hilbert_function", join(entry.expected_hilbert), join(got));
  }
  if (!entry.expected_central_fiber.empty()) {
    std::vector<Rational> ray;
    for (const auto& w : doc.weights) ray.push_back(w.rational_part());
    const TestConfiguration tc = build_test_configuration(doc.ideal_presentation(), integer_ray(ray));
    check("central_fiber", join(entry.expected_central_fiber), join(central_fiber(tc).generator_strings()));
    check("flatness_witness", "true", flatness_witness(tc) ? "true" : "false");
    // Independent path: minimal-weight initial ideal from a local standard basis.
    check("initial_ideal", join(entry.expected_central_fiber),
          join(weighted_initial_ideal(doc.ideal_presentation(), doc.weights).generator_strings()));
  }
  return out;
}

}  // namespace conify
