#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "conify/cli.hpp"
#include "conify/diophantine.hpp"
#include "conify/numerics.hpp"

namespace conify {

namespace {

using nlohmann::json;

// A usage problem detected after CLI11 accepted the arguments.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string input;
  std::string weights;
  std::string field;
  std::string tweight;
  std::string monomial;
  std::string target;
  std::string demo;
  std::int64_t N = 0;
  std::int64_t n_prime = 0;
  std::int64_t n = 0;
  std::uint64_t cap = 1'000'000;
  std::int64_t degree_cap = 10;
  bool pretty = false;
  bool json_out = true;
};

std::vector<std::string> strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

std::vector<std::string> strings(const std::vector<ExactScalar>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

std::vector<std::string> strings(const std::vector<Rational>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::vector<std::string> strings(const std::vector<Integer>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

class Session {
 public:
  explicit Session(const Flags& f) : f_(f) {}

  std::int64_t field() const {
    if (f_.field.empty() || f_.field == "rational") return doc_ ? doc_->field_d : 0;
    if (f_.field.rfind("quad:", 0) == 0) {
      std::int64_t d = 0;
      try {
        d = std::stoll(f_.field.substr(5));
      } catch (const std::exception&) {
        throw UsageError("--field expects 'rational' or 'quad:D'");
      }
      if (!is_squarefree(d)) throw UsageError("--field quad:D needs a squarefree D >= 2");
      return d;
    }
    throw UsageError("--field expects 'rational' or 'quad:D'");
  }

  const InputDocument& doc() {
    if (!doc_) {
      if (f_.input.empty()) throw UsageError("this subcommand needs --input FILE");
      std::ifstream in(f_.input, std::ios::binary);
      if (!in) throw UsageError("cannot read input file '" + f_.input + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      doc_ = parse_input(buf.str());
    }
    return *doc_;
  }

  bool has_input() const { return !f_.input.empty(); }

  std::vector<ExactScalar> weights() {
    if (!f_.weights.empty()) {
      if (has_input()) doc();
      auto w = parse_scalar_list(f_.weights, field());
      for (const auto& x : w) {
        if (x.sign() <= 0) throw PreconditionError("weight " + x.str() + " is not positive");
      }
      return w;
    }
    if (has_input() && !doc().weights.empty()) return doc().weights;
    throw UsageError("weights are required (--weights or a 'weights' line)");
  }

  std::optional<Rational> t_weight() {
    if (!f_.tweight.empty()) {
      const ExactScalar v = ExactScalar::parse(f_.tweight);
      if (!v.is_rational()) throw PreconditionError("t weight must be rational");
      return v.rational_part();
    }
    if (has_input()) return doc().t_weight;
    return std::nullopt;
  }

  std::int64_t dimension(std::size_t l) {
    if (f_.n > 0) return f_.n;
    if (has_input() && doc().dim) return *doc().dim;
    return static_cast<std::int64_t>(l);
  }

  IdealPresentation ideal() {
    IdealPresentation p = doc().ideal_presentation();
    if (!f_.weights.empty()) {
      WeightData wd;
      wd.weights = weights();
      p.weights = wd;
    }
    return p;
  }

  const Flags& flags() const { return f_; }

 private:
  const Flags& f_;
  std::optional<InputDocument> doc_;
};

std::vector<std::int64_t> integer_weights_of(const std::vector<ExactScalar>& w) {
  std::vector<Rational> ray;
  for (const auto& x : w) {
    if (!x.is_rational()) throw PreconditionError("this operation needs rational weights");
    ray.push_back(x.rational_part());
  }
  return integer_ray(ray);
}

json report_json(const ApproximantReport& r) {
  json j;
  j["D"] = r.D.get_str();
  j["w_tilde"] = strings(r.w_tilde);
  j["N"] = r.N.get_str();
  j["errors_as_strings"] = r.error_strings();
  j["nice"] = r.nice;
  j["certificate"] = r.certificate_strings();
  j["approximant"] = strings(r.approximant());
  if (r.cone_certificate) j["cone_certificate"] = *r.cone_certificate;
  return j;
}

json checks_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  return arr;
}

Integer pick_N(Session& s, const ReebVector& v) {
  if (s.flags().N > 0) return Integer(static_cast<long>(s.flags().N));
  return std::max(default_N(v), Integer(2));
}

json cmd_initial_ideal(Session& s) {
  const IdealPresentation ideal = s.ideal();
  const auto w = s.weights();
  json j;
  j["ring"] = ideal.ring.names();
  j["weights"] = strings(w);
  const bool rational = std::all_of(w.begin(), w.end(), [](const ExactScalar& x) { return x.is_rational(); });
  if (rational) {
    const auto iw = integer_weights_of(w);
    j["integer_weights"] = iw;
    j["central_fiber"] = strings(central_fiber(build_test_configuration(ideal, iw)).generators);
    return j;
  }
  const ReebVector v(w, s.dimension(w.size()));
  Integer N = pick_N(s, v);
  const ApproximantReport first = dirichlet_approximant(v, N, s.flags().cap);
  ApproximantReport second = first;
  for (int k = 0; k < 32 && second.approximant() == first.approximant(); ++k) {
    N *= 2;
    second = dirichlet_approximant(v, N, s.flags().cap);
  }
  j["approximants"] = {report_json(first), report_json(second)};
  j["central_fiber"] = strings(stable_initial_ideal(ideal, w, first.approximant(), second.approximant()).generators);
  return j;
}

TestConfiguration configuration(Session& s) {
  return build_test_configuration(s.ideal(), integer_weights_of(s.weights()));
}

json cmd_testconfig(Session& s) {
  const TestConfiguration tc = configuration(s);
  json j;
  j["ring"] = tc.family_ideal.ring.names();
  j["family"] = strings(tc.family_ideal.generators);
  j["saturated"] = tc.saturated;
  j["weights"] = tc.weights.integer_weights();
  j["t_weight"] = to_string(*tc.weights.t_weight);
  return j;
}

json cmd_fiber(Session& s) {
  const TestConfiguration tc = configuration(s);
  return {{"central_fiber", strings(central_fiber(tc).generators)},
          {"general_fiber", strings(general_fiber(tc).generators)}};
}

json cmd_flatness(Session& s) {
  const TestConfiguration tc = configuration(s);
  return {{"flat", flatness_witness(tc)}, {"family", strings(tc.family_ideal.generators)}};
}

json cmd_hilbert(Session& s) {
  WeightData wd;
  wd.weights = s.weights();
  const auto h = hilbert_function(s.ideal(), wd, s.flags().degree_cap);
  json arr = json::array();
  for (const auto& [k, d] : h) arr.push_back({{"weight", k}, {"dim", d}});
  return {{"hilbert", arr}};
}

json cmd_rank(Session& s) {
  const auto w = s.weights();
  const ReebVector v(w, s.dimension(w.size()));
  const AffineHull h = affine_hull(v);
  json hull;
  hull["reorder"] = h.reorder;
  hull["m"] = h.m.get_str();
  json rows = json::array();
  for (const auto& row : h.a) rows.push_back(strings(row));
  hull["a"] = rows;
  return {{"rank", v.rank()}, {"s", v.s()}, {"one_in_span", one_in_span(v)}, {"affine_hull", hull}};
}

json cmd_approximate(Session& s) {
  const auto w = s.weights();
  const ReebVector v(w, s.dimension(w.size()));
  const Integer N = pick_N(s, v);
  json j = report_json(nice_approximant(v, default_cone(v), N, s.flags().cap));
  j["default_N"] = default_N(v).get_str();
  return j;
}

json cmd_cone(Session& s) {
  const auto w = s.weights();
  const ReebVector v(w, s.dimension(w.size()));
  const Integer N = pick_N(s, v);
  const AffineHull hull = affine_hull(v);
  std::vector<CornerHit> corners;
  Integer np;
  if (!v.is_rational()) {
    np = s.flags().n_prime > 0 ? Integer(static_cast<long>(s.flags().n_prime)) : default_N_prime(hull, N);
    corners = kronecker_corner_search(v, np, s.flags().cap);
  }
  const ConeDescription cone = build_sigma_prime(v, corners, hull, N);
  const ConeMembership m = cone_contains(cone, v.entries());
  json gens = json::array();
  for (const auto& g : cone.generators) gens.push_back(strings(g));
  json reports = json::array();
  for (const auto& r : cone.approximants) reports.push_back(report_json(r));
  json brackets = json::array();
  for (const auto& c : cone.bracket_certificates) brackets.push_back(c.str());
  json j = {{"generators", gens},
            {"simplicial", cone.simplicial},
            {"simplicial_subset", cone.simplicial_subset},
            {"contains", m.contains},
            {"certificate", m.certificate()},
            {"bracket_certificates", brackets},
            {"approximants", reports},
            {"N", N.get_str()}};
  if (!v.is_rational()) j["N_prime"] = np.get_str();
  return j;
}

json cmd_poisson_check(Session& s) {
  const InputDocument& doc = s.doc();
  if (!doc.bracket) throw PreconditionError("the input has no bracket block");
  json j;
  json defects = json::array();
  bool jacobi = true;
  for (const auto& d : jacobi_defect(*doc.bracket)) {
    if (d.value.is_zero()) continue;
    jacobi = false;
    defects.push_back({{"triple", {doc.ring.name(d.i), doc.ring.name(d.j), doc.ring.name(d.k)}}, {"value", d.value.str()}});
  }
  j["jacobi"] = jacobi;
  j["jacobi_defects"] = defects;
  j["preserves_ideal"] = doc.ideal.empty() ? json(nullptr) : json(preserves_ideal(*doc.bracket, doc.ideal_presentation()));
  if (doc.weights.empty()) return j;
  const WeightData wd = doc.weight_data();
  const auto bw = bracket_weight(*doc.bracket, wd);
  j["bracket_weight"] = bw ? json(bw->str()) : json(nullptr);
  if (doc.form) {
    const auto fw = form_weight(*doc.form, wd);
    j["form_weight"] = fw ? json(fw->str()) : json(nullptr);
  }
  j["one_in_span"] = one_in_span(ReebVector(doc.weights, s.dimension(doc.weights.size())));
  const auto tw = s.t_weight();
  const bool rational = std::all_of(doc.weights.begin(), doc.weights.end(), [](const ExactScalar& x) { return x.is_rational(); });
  if (tw && rational && !doc.ideal.empty()) {
    // The family has to be graded by the same weights as the bracket.
    const std::vector<std::int64_t> iw = wd.all_integer() ? wd.integer_weights() : integer_weights_of(doc.weights);
    const TestConfiguration tc = build_test_configuration(doc.ideal_presentation(), iw);
    WeightData full = wd;
    full.t_weight = *tw;
    const ScaleupReport r = check_scaleup(tc, *doc.bracket, full);
    j["scaleup"] = {{"t_weight_positive", r.t_weight_positive},
                    {"bracket_weight_matches", r.bracket_weight_matches},
                    {"positive_section_weights", r.positive_section_weights},
                    {"all_pass", r.all_pass()},
                    {"family", strings(tc.family_ideal.generators)},
                    {"family_homogeneous", r.family_homogeneous},
                    {"family_preserved", r.family_preserved},
                    {"section_note", r.section_note}};
  }
  return j;
}

// Weights, t weight and the ring (x_1..x_n, t) for the monoid commands.
struct Grading {
  WeightData wd;
  Ring ring;
};

Grading grading(Session& s) {
  Grading g;
  g.wd.weights = s.weights();
  g.wd.t_weight = s.t_weight();
  if (!g.wd.t_weight) throw UsageError("a t weight is required (--tweight or a 'tweight' line)");
  Ring base;
  if (s.has_input()) {
    base = s.doc().ring;
  } else {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < g.wd.weights.size(); ++i) names.push_back("x" + std::to_string(i + 1));
    base = Ring(names);
  }
  if (base.arity() != g.wd.weights.size()) throw ArityMismatch("weights do not match the ring");
  g.ring = base.with_appended(base.fresh_name("t"));
  return g;
}

json cmd_decompose(Session& s) {
  if (s.flags().monomial.empty()) throw UsageError("decompose needs --monomial");
  const Grading g = grading(s);
  const Polynomial p = Polynomial::parse(s.flags().monomial, g.ring);
  if (p.size() != 1) throw PreconditionError("--monomial must be a single monomial");
  const Decomposition d = decompose_semiinvariant(p.terms().front().monomial, g.wd);
  json factors = json::array();
  for (const auto& f : d.factors) factors.push_back(monomial_str(f, g.ring));
  return {{"prefix", monomial_str(d.prefix, g.ring)},
          {"factors", factors},
          {"C", d.bounds.C},
          {"D", d.bounds.D},
          {"m", d.bounds.m},
          {"w", d.bounds.w},
          {"coefficient", to_string(p.terms().front().coeff)}};
}

json cmd_invariants(Session& s) {
  const Grading g = grading(s);
  json gens = json::array();
  for (const auto& m : invariant_generators(g.wd, s.flags().degree_cap)) gens.push_back(monomial_str(m, g.ring));
  return {{"generators", gens}, {"ring", g.ring.names()}};
}

json cmd_rotate(Session& s) {
  if (s.flags().target.empty()) throw UsageError("rotate needs --target d,e,f");
  std::vector<double> t;
  std::stringstream in(s.flags().target);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      t.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--target expects three comma-separated numbers");
    }
  }
  if (t.size() != 3) throw UsageError("--target expects three comma-separated numbers");
  const RotationSolution r = rotation_from_target(t[0], t[1], t[2]);
  json rows = json::array();
  for (const auto& row : r.rotation) rows.push_back(row);
  return {{"c", r.c},
          {"axis", r.axis},
          {"theta", r.theta},
          {"rotation", rows},
          {"quaternion", r.quaternion},
          {"reconstruction_error", reconstruction_error(r, t[0], t[1], t[2])},
          {"orthogonality_error", orthogonality_error(r.rotation)}};
}

json cmd_demo(Session& s, int& code) {
  const CatalogueEntry& e = catalogue_entry(s.flags().demo);
  const auto checks = verify_entry(e);
  const bool all = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  code = all ? 0 : 2;
  return {{"entry", e.name}, {"summary", e.summary}, {"checks", checks_json(checks)}, {"all_pass", all}};
}

void emit(std::ostream& out, json j, const std::string& command, bool pretty) {
  j["schema"] = "conify/1";
  j["command"] = command;
  out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Exact degenerations, approximants and Poisson checks for weighted cones", "conify"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_option("--input", f.input, "input document");
    c->add_option("--weights", f.weights, "weights, comma or blank separated");
    c->add_option("--field", f.field, "rational | quad:D");
    c->add_flag("--pretty", f.pretty, "indent JSON output");
    c->add_flag("--json", f.json_out, "compact JSON output (default)");
  };
  struct Subcommand {
    const char* name;
    const char* help;
  };
  const std::vector<Subcommand> listing = {
      {"initial-ideal", "central fiber of the weight degeneration"},
      {"testconfig", "t-saturated one-parameter family"},
      {"fiber", "central and general fibers of the family"},
      {"flatness", "t is a nonzerodivisor on the family"},
      {"hilbert", "graded Hilbert function up to --degree-cap"},
      {"rank", "rational rank, s and the affine hull"},
      {"approximate", "nice approximant in the default box cone"},
      {"cone", "corner-cube search and the simplicial cone"},
      {"poisson-check", "Jacobi, ideal preservation and weights of a bracket"},
      {"decompose", "semi-invariant monomial decomposition"},
      {"invariants", "invariant monomials up to --degree-cap"},
      {"rotate", "rotation carrying (c,0,0) to --target"},
      {"demo", "verify a catalogue entry end to end"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& sp : listing) {
    CLI::App* c = app.add_subcommand(sp.name, sp.help);
    common(c);
    subs[sp.name] = c;
  }
  for (const char* name : {"approximate", "cone", "initial-ideal", "rank", "poisson-check"}) {
    subs[name]->add_option("--N", f.N, "bound N, default ceil(4n / min w)")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
    subs[name]->add_option("--n", f.n, "complex dimension n")->check(CLI::PositiveNumber);
  }
  for (const char* name : {"approximate", "cone", "initial-ideal"}) {
    subs[name]->add_option("--cap", f.cap, "search cap")->check(CLI::PositiveNumber);
  }
  subs["cone"]->add_option("--Nprime", f.n_prime, "corner cube parameter N'")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  subs["hilbert"]->add_option("--cap,--degree-cap", f.degree_cap, "largest weight")->check(CLI::NonNegativeNumber);
  subs["invariants"]->add_option("--degree-cap,--cap", f.degree_cap, "largest total degree")->check(CLI::NonNegativeNumber);
  for (const char* name : {"decompose", "invariants", "poisson-check"}) {
    subs[name]->add_option("--tweight", f.tweight, "weight w of t");
  }
  subs["decompose"]->add_option("--monomial", f.monomial, "monomial in (x..., t)");
  subs["rotate"]->add_option("--target", f.target, "d,e,f");
  subs["demo"]->add_option("name", f.demo, "catalogue entry")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "conify: " << e.what() << "\n" << app.help();
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Session s(f);
  try {
    int code = 0;
    json j;
    if (command == "initial-ideal") j = cmd_initial_ideal(s);
    else if (command == "testconfig") j = cmd_testconfig(s);
    else if (command == "fiber") j = cmd_fiber(s);
    else if (command == "flatness") j = cmd_flatness(s);
    else if (command == "hilbert") j = cmd_hilbert(s);
    else if (command == "rank") j = cmd_rank(s);
    else if (command == "approximate") j = cmd_approximate(s);
    else if (command == "cone") j = cmd_cone(s);
    else if (command == "poisson-check") j = cmd_poisson_check(s);
    else if (command == "decompose") j = cmd_decompose(s);
    else if (command == "invariants") j = cmd_invariants(s);
    else if (command == "rotate") j = cmd_rotate(s);
    else if (command == "demo") j = cmd_demo(s, code);
    emit(out, std::move(j), command, f.pretty);
    return code;
  } catch (const UsageError& e) {
    err << "conify " << command << ": " << e.what() << "\n" << subs[command]->help();
    return 1;
  } catch (const Error& e) {
    emit(out, {{"error", e.what()}}, command, f.pretty);
    err << "conify " << command << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace conify
