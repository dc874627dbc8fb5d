#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "conify/cli.hpp"

namespace conify {

IdealPresentation InputDocument::ideal_presentation() const {
  IdealPresentation p(ring, ideal);
  if (!weights.empty()) p.weights = weight_data();
  return p;
}

WeightData InputDocument::weight_data() const {
  WeightData wd;
  wd.weights = weights;
  wd.form_weight = form_weight;
  return wd;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : text_(text) {}

  InputDocument run() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      handle(line);
      pos = end + 1;
    }
    if (block_ != Block::None) fail("block '" + block_name() + "' is not closed by 'end'", 1);
    if (!have_ring_) throw ParseError("ring required", line_no_, 1);
    finish();
    return std::move(doc_);
  }

 private:
  enum class Block { None, Ideal, Bracket, Form };

  [[noreturn]] void fail(const std::string& what, std::size_t column) const {
    throw ParseError(what, line_no_, column);
  }

  std::string block_name() const {
    switch (block_) {
      case Block::Ideal: return "ideal";
      case Block::Bracket: return "bracket";
      case Block::Form: return "form";
      default: return "";
    }
  }

  // Column (1-based) of `part`, which must be a view into the current line.
  std::size_t column_of(std::string_view part) const { return static_cast<std::size_t>(part.data() - line_start_) + 1; }

  template <class F>
  auto located(std::string_view part, F&& f) const {
    try {
      return f();
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      fail(e.what(), column_of(part) + (e.column() ? e.column() - 1 : 0));
    } catch (const Error& e) {
      fail(e.what(), column_of(part));
    }
  }

  void require_ring(std::string_view keyword) const {
    if (!have_ring_) fail("ring required before '" + std::string(keyword) + "'", 1);
  }

  void handle(std::string_view raw) {
    line_start_ = raw.data();
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    for (char c : line) {
      if (static_cast<unsigned char>(c) > 127) fail("non-ASCII character", 1);
    }
    line = trim(line);
    if (line.empty()) return;

    if (block_ != Block::None) {
      if (line == "end") {
        block_ = Block::None;
        return;
      }
      if (block_ == Block::Ideal) {
        add_generator(line);
      } else {
        add_entry(line);
      }
      return;
    }

    std::size_t split = 0;
    while (split < line.size() && !std::isspace(static_cast<unsigned char>(line[split]))) ++split;
    const std::string keyword(line.substr(0, split));
    const std::string_view rest = trim(line.substr(split));

    if (keyword == "field") {
      field(rest);
    } else if (keyword == "ring") {
      ring(rest);
    } else if (keyword == "weights") {
      if (rest.empty()) fail("weights expects at least one scalar", column_of(line));
      doc_.weights = located(rest, [&] { return parse_scalar_list(rest, doc_.field_d); });
      weights_line_ = line_no_;
      for (const auto& w : doc_.weights) {
        if (!w.is_rational() && doc_.field_d == 0) doc_.field_d = w.radicand();
      }
    } else if (keyword == "tweight") {
      doc_.t_weight = rational(rest, "tweight");
    } else if (keyword == "sympweight") {
      doc_.form_weight = rational(rest, "sympweight");
    } else if (keyword == "dim") {
      const auto w = words(rest);
      if (w.size() != 1 || w[0].find_first_not_of("0123456789") != std::string::npos || w[0].size() > 9) {
        fail("dim expects one non-negative integer", column_of(rest));
      }
      doc_.dim = std::stoll(w[0]);
    } else if (keyword == "ideal" || keyword == "bracket" || keyword == "form") {
      require_ring(keyword);
      const Block b = keyword == "ideal" ? Block::Ideal : keyword == "bracket" ? Block::Bracket : Block::Form;
      if (b == Block::Bracket && !doc_.bracket) doc_.bracket = PoissonTable(doc_.ring);
      if (b == Block::Form && !doc_.form) doc_.form = FormTable(doc_.ring);
      if (rest.empty()) {
        block_ = b;
      } else if (b == Block::Ideal) {
        add_generator(rest);
      } else {
        const Block saved = block_;
        block_ = b;
        add_entry(rest);
        block_ = saved;
      }
    } else if (keyword == "end") {
      fail("'end' without an open block", column_of(line));
    } else {
      fail("unknown keyword '" + keyword + "'", column_of(line));
    }
  }

  void field(std::string_view rest) {
    if (have_ring_ || !doc_.weights.empty()) fail("field must be declared before ring and weights", 1);
    const auto w = words(rest);
    if (w.size() == 1 && w[0] == "rational") {
      doc_.field_d = 0;
      return;
    }
    if (w.size() == 2 && w[0] == "quad") {
      std::int64_t d = 0;
      try {
        d = std::stoll(w[1]);
      } catch (const std::exception&) {
        fail("quad expects an integer radicand", column_of(rest));
      }
      if (!is_squarefree(d)) fail("quad radicand must be a squarefree integer >= 2", column_of(rest));
      doc_.field_d = d;
      return;
    }
    fail("field expects 'rational' or 'quad D'", column_of(rest));
  }

  void ring(std::string_view rest) {
    if (have_ring_) fail("ring declared twice", 1);
    const auto names = words(rest);
    if (names.empty()) fail("ring expects at least one variable", 1);
    for (const auto& n : names) {
      if (!(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) fail("bad variable name '" + n + "'", 1);
      for (char c : n) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) fail("bad variable name '" + n + "'", 1);
      }
      if (n == "sqrt") fail("'sqrt' is reserved", 1);
    }
    doc_.ring = located(rest, [&] { return Ring(names); });
    have_ring_ = true;
  }

  Rational rational(std::string_view rest, const char* keyword) {
    if (rest.empty()) fail(std::string(keyword) + " expects a rational number", 1);
    const ExactScalar v = located(rest, [&] { return ExactScalar::parse(rest, doc_.field_d); });
    if (!v.is_rational()) fail(std::string(keyword) + " must be rational", column_of(rest));
    return v.rational_part();
  }

  void add_generator(std::string_view text) {
    Polynomial p = located(text, [&] { return Polynomial::parse(text, doc_.ring); });
    if (!p.is_zero()) doc_.ideal.push_back(std::move(p));
  }

  // {a,b} = p  or  [a,b] = c
  void add_entry(std::string_view line) {
    const bool bracket = block_ == Block::Bracket;
    const char open = bracket ? '{' : '[';
    const char close = bracket ? '}' : ']';
    const std::string shape = bracket ? "{a,b} = p" : "[a,b] = c";
    if (line.front() != open) fail("expected '" + shape + "'", column_of(line));
    const auto closing = line.find(close);
    const auto comma = line.find(',');
    if (closing == std::string_view::npos || comma == std::string_view::npos || comma > closing) {
      fail("expected '" + shape + "'", column_of(line));
    }
    const std::string_view a = trim(line.substr(1, comma - 1));
    const std::string_view b = trim(line.substr(comma + 1, closing - comma - 1));
    std::string_view rhs = trim(line.substr(closing + 1));
    if (rhs.empty() || rhs.front() != '=') fail("expected '=' after '" + std::string(1, close) + "'", column_of(line) + closing + 1);
    rhs = trim(rhs.substr(1));
    if (rhs.empty()) fail("missing right-hand side", column_of(line) + closing + 1);
    const auto ia = doc_.ring.index_of(a);
    const auto ib = doc_.ring.index_of(b);
    if (!ia) fail("unknown variable '" + std::string(a) + "'", a.empty() ? column_of(line) : column_of(a));
    if (!ib) fail("unknown variable '" + std::string(b) + "'", b.empty() ? column_of(line) : column_of(b));
    if (*ia == *ib) fail("entry pairs a variable with itself", column_of(line));
    const Polynomial p = located(rhs, [&] { return Polynomial::parse(rhs, doc_.ring); });
    if (bracket) {
      const auto key = std::minmax(*ia, *ib);
      if (!seen_.insert(key).second) fail("bracket entry given twice", column_of(line));
      doc_.bracket->set(*ia, *ib, p);
    } else {
      doc_.form->add(*ia, *ib, p);
    }
  }

  void finish() {
    if (!doc_.weights.empty()) {
      if (doc_.weights.size() != doc_.ring.arity()) {
        throw ArityMismatch("line " + std::to_string(weights_line_) + ": " + std::to_string(doc_.weights.size()) +
                            " weights for " + std::to_string(doc_.ring.arity()) + " ring variables");
      }
      for (const auto& w : doc_.weights) {
        if (w.sign() <= 0) {
          throw PreconditionError("line " + std::to_string(weights_line_) + ": weight " + w.str() + " is not positive");
        }
      }
    }
  }

  std::string_view text_;
  const char* line_start_ = nullptr;
  std::size_t line_no_ = 0;
  std::size_t weights_line_ = 0;
  Block block_ = Block::None;
  bool have_ring_ = false;
  std::set<std::pair<std::size_t, std::size_t>> seen_;
  InputDocument doc_;
};

}  // namespace

namespace {

bool is_operator(char c) { return c == '+' || c == '-' || c == '*' || c == '/'; }

// Whitespace-separated items; blanks around a binary operator or inside
// parentheses do not split, so "1 + 1*s" is one item and "1 -2" two.
std::vector<std::pair<std::size_t, std::size_t>> blank_items(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> tokens;
  for (std::size_t pos = 0; pos < text.size();) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    tokens.emplace_back(pos, end);
    pos = end;
  }
  std::vector<std::pair<std::size_t, std::size_t>> items;
  int depth = 0;
  bool join = false;
  for (const auto& [b, e] : tokens) {
    const std::string_view tok = text.substr(b, e - b);
    const bool lone_minus = tok == "-";
    const bool leading = tok.front() == '+' || tok.front() == '*' || tok.front() == '/' || lone_minus;
    if (!items.empty() && (join || depth > 0 || leading)) {
      items.back().second = e;
    } else {
      items.emplace_back(b, e);
    }
    for (char c : tok) depth += c == '(' ? 1 : c == ')' ? -1 : 0;
    join = is_operator(tok.back());
  }
  return items;
}

}  // namespace

std::vector<ExactScalar> parse_scalar_list(std::string_view text, std::int64_t field_d) {
  std::vector<std::pair<std::size_t, std::size_t>> items;
  if (text.find(',') != std::string_view::npos) {
    for (std::size_t pos = 0;;) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      if (trim(text.substr(pos, end - pos)).empty()) throw ParseError("empty entry in list", 0, pos + 1);
      items.emplace_back(pos, end);
      if (end == text.size()) break;
      pos = end + 1;
    }
  } else {
    items = blank_items(text);
  }
  std::vector<ExactScalar> out;
  for (const auto& [pos, end] : items) {
    try {
      ExactScalar v = ExactScalar::parse(text.substr(pos, end - pos), field_d);
      if (!v.is_rational() && field_d == 0) field_d = v.radicand();
      out.push_back(std::move(v));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 0, pos + e.column());
    }
  }
  return out;
}

InputDocument parse_input(std::string_view text) { return DocumentParser(text).run(); }

}  // namespace conify
