#include "conify/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

namespace conify {

// --- Ring ------------------------------------------------------------------

Ring::Ring(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if ((*names_)[i] == (*names_)[j]) throw PreconditionError("duplicate variable '" + (*names_)[i] + "'");
    }
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

std::string Ring::fresh_name(const std::string& stem) const {
  std::string candidate = stem;
  while (index_of(candidate)) candidate += "_";
  return candidate;
}

Ring Ring::with_appended(const std::string& name) const {
  std::vector<std::string> names = *names_;
  names.push_back(name);
  return Ring(std::move(names));
}

Ring Ring::with_prepended(const std::string& name) const {
  std::vector<std::string> names;
  names.reserve(names_->size() + 1);
  names.push_back(name);
  names.insert(names.end(), names_->begin(), names_->end());
  return Ring(std::move(names));
}

// --- Monomial --------------------------------------------------------------

Monomial Monomial::variable(std::size_t arity, std::size_t index, Exponent power) {
  Monomial m(arity);
  m.e_[index] = power;
  return m;
}

std::uint64_t Monomial::degree() const {
  return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += other.e_[i];
  return r;
}

Monomial Monomial::over(const Monomial& divisor) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= divisor.e_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], other.e_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != 0 && other.e_[i] != 0) return false;
  }
  return true;
}

// --- MonomialOrder ---------------------------------------------------------

MonomialOrder MonomialOrder::elimination(std::size_t block) {
  MonomialOrder o(Base::Grevlex);
  o.block_ = block;
  return o;
}

MonomialOrder MonomialOrder::weighted(std::vector<ExactScalar> weights, WeightDirection direction,
                                      Base tie_break) {
  MonomialOrder o(tie_break);
  o.direction_ = direction;
  Integer den = 1;
  for (const auto& w : weights) {
    if (!w.is_rational()) {
      if (o.radicand_ != 0 && o.radicand_ != w.radicand()) throw FieldMismatch("weights from different fields");
      o.radicand_ = w.radicand();
    }
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.rational_part().get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.radical_part().get_den_mpz_t());
  }
  for (const auto& w : weights) {
    const Integer a = w.rational_part().get_num() * (den / w.rational_part().get_den());
    const Integer b = w.radical_part().get_num() * (den / w.radical_part().get_den());
    if (!a.fits_slong_p() || !b.fits_slong_p() || abs(a) > (1L << 40) || abs(b) > (1L << 40)) {
      throw PreconditionError("weight too large for a term order after clearing denominators");
    }
    o.int_a_.push_back(a.get_si());
    o.int_b_.push_back(b.get_si());
  }
  o.weights_ = std::move(weights);
  return o;
}

bool MonomialOrder::is_global() const {
  if (weights_.empty()) return true;
  const bool positive = std::all_of(weights_.begin(), weights_.end(), [](const ExactScalar& w) { return w.sign() > 0; });
  return direction_ == WeightDirection::Global ? positive : false;
}

std::string MonomialOrder::describe() const {
  std::string s = base_ == Base::Grevlex ? "grevlex" : "lex";
  if (block_ > 0) s = "elimination(" + std::to_string(block_) + ")+" + s;
  if (!weights_.empty()) {
    s = std::string(direction_ == WeightDirection::Global ? "max-weight" : "min-weight") + "(";
    for (std::size_t i = 0; i < weights_.size(); ++i) s += (i ? "," : "") + weights_[i].str();
    s += ")+" + std::string(base_ == Base::Grevlex ? "grevlex" : "lex");
  }
  return s;
}

int MonomialOrder::compare_base(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) const {
  if (base_ == Base::Lex) {
    for (std::size_t i = from; i < to; ++i) {
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
  }
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = from; i < to; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = to; i-- > from;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

namespace {

int sign_of_sum(__int128 a, __int128 b, std::int64_t d) {
  const int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
  const int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // |a|, |b| stay far below 2^60 for the exponent ranges used here.
  const __int128 a2 = a * a;
  const __int128 b2d = b * b * d;
  return a2 > b2d ? sa : sb;
}

}  // namespace

int MonomialOrder::compare_weight(const Monomial& a, const Monomial& b) const {
  __int128 da = 0, db = 0;
  for (std::size_t i = 0; i < int_a_.size(); ++i) {
    const __int128 diff = static_cast<__int128>(a[i]) - static_cast<__int128>(b[i]);
    da += diff * int_a_[i];
    db += diff * int_b_[i];
  }
  const int s = sign_of_sum(da, db, radicand_);
  return direction_ == WeightDirection::Global ? s : -s;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (!int_a_.empty()) {
    if (int_a_.size() != a.arity()) throw ArityMismatch("weight vector length differs from ring arity");
    const int w = compare_weight(a, b);
    if (w != 0) return w;
  }
  if (block_ > 0 && block_ < a.arity()) {
    const int first = compare_base(a, b, 0, block_);
    if (first != 0) return first;
    return compare_base(a, b, block_, a.arity());
  }
  return compare_base(a, b, 0, a.arity());
}

// --- Polynomial ------------------------------------------------------------

namespace {

const MonomialOrder& canonical_order() {
  static const MonomialOrder order = MonomialOrder::grevlex();
  return order;
}

}  // namespace

Polynomial::Polynomial(Ring ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.monomial.arity() != ring_.arity()) throw ArityMismatch("monomial arity differs from ring arity");
  }
  normalize();
}

void Polynomial::normalize() {
  const auto& order = canonical_order();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& x, const Term& y) { return order.greater(x.monomial, y.monomial); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().monomial == t.monomial) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.coeff) == 0; });
  terms_ = std::move(merged);
}

Polynomial Polynomial::constant(Ring ring, const Rational& c) {
  Polynomial p(ring);
  if (sgn(c) != 0) p.terms_.push_back({Monomial(ring.arity()), c});
  return p;
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  if (index >= ring.arity()) throw ArityMismatch("variable index out of range");
  const std::size_t n = ring.arity();
  return monomial(std::move(ring), Monomial::variable(n, index), 1);
}

Polynomial Polynomial::monomial(Ring ring, Monomial m, const Rational& c) {
  if (m.arity() != ring.arity()) throw ArityMismatch("monomial arity differs from ring arity");
  Polynomial p(std::move(ring));
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

std::uint64_t Polynomial::total_degree() const {
  // Leading grevlex term has maximal total degree.
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

const Term& Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
  const Term* best = &terms_.front();
  for (const auto& t : terms_) {
    if (order.greater(t.monomial, best->monomial)) best = &t;
  }
  return *best;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (terms_.empty()) return *this;
  Rational lc = leading_term(order).coeff;
  return scaled(Rational(1) / lc);
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

namespace {

void check_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b)) throw ArityMismatch("polynomials live in different rings");
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  const auto& order = canonical_order();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = order.compare(a[i].monomial, b[j].monomial);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back({b[j].monomial, sign > 0 ? Rational(b[j].coeff) : Rational(-b[j].coeff)});
      ++j;
    } else {
      Rational s = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
      if (sgn(s) != 0) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same_ring(ring_, o.ring_);
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same_ring(ring_, o.ring_);
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_same_ring(a.ring_, b.ring_);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.push_back({x.monomial * y.monomial, x.coeff * y.coeff});
  }
  return Polynomial(a.ring_, std::move(out));
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::times(const Monomial& m, const Rational& c) const {
  if (sgn(c) == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) {
    t.monomial = t.monomial * m;
    t.coeff *= c;
  }
  // Multiplying by a monomial preserves grevlex order.
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.monomial[var] == 0) continue;
    Monomial m = t.monomial;
    const auto e = m[var];
    m[var] = e - 1;
    out.push_back({std::move(m), t.coeff * Rational(static_cast<unsigned long>(e))});
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::substitute(std::size_t var, const Rational& c) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Monomial m = t.monomial;
    Rational coeff = t.coeff;
    if (m[var] > 0) {
      Rational p;
      mpz_pow_ui(p.get_num_mpz_t(), c.get_num_mpz_t(), m[var]);
      mpz_pow_ui(p.get_den_mpz_t(), c.get_den_mpz_t(), m[var]);
      p.canonicalize();
      coeff *= p;
      m[var] = 0;
    }
    out.push_back({std::move(m), std::move(coeff)});
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::embed(const Ring& target, std::span<const std::size_t> index_map) const {
  if (index_map.size() != ring_.arity()) throw ArityMismatch("index map length differs from ring arity");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target.arity());
    for (std::size_t i = 0; i < index_map.size(); ++i) m[index_map[i]] = t.monomial[i];
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial(target, std::move(out));
}

Polynomial Polynomial::restrict_to(const Ring& target, std::span<const std::size_t> index_map) const {
  if (index_map.size() != target.arity()) throw ArityMismatch("index map length differs from target arity");
  std::vector<bool> kept(ring_.arity(), false);
  for (auto idx : index_map) kept[idx] = true;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < ring_.arity(); ++i) {
      if (!kept[i] && t.monomial[i] != 0) throw PreconditionError("polynomial involves a dropped variable");
    }
    Monomial m(target.arity());
    for (std::size_t i = 0; i < index_map.size(); ++i) m[i] = t.monomial[index_map[i]];
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial(target, std::move(out));
}

bool Polynomial::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.monomial[var] != 0; });
}

bool Polynomial::same_terms(const Polynomial& o) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].monomial == o.terms_[i].monomial) || terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

std::string monomial_str(const Monomial& m, const Ring& ring) {
  std::string s;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = sgn(t.coeff) < 0;
    const Rational mag = abs(t.coeff);
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      s += to_string(mag);
    } else if (mag == 1) {
      s += monomial_str(t.monomial, ring_);
    } else {
      s += to_string(mag) + "*" + monomial_str(t.monomial, ring_);
    }
  }
  return s;
}

// --- parsing ---------------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 0, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (accept('-')) {
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = power();
    for (;;) {
      if (accept('*')) {
        p = p * power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        p = p.scaled(Rational(1) / d.terms().front().coeff);
      } else {
        skip_space();
        if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '(')) {
          fail("implicit multiplication is not allowed; use '*'");
        }
        return p;
      }
    }
  }

  Polynomial power() {
    Polynomial base = unary();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return atom();
  }

  Polynomial atom() {
    skip_space();
    if (accept('(')) {
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial::constant(ring_, Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, const Ring& ring) { return PolyParser(text, ring).run(); }

// --- weights ---------------------------------------------------------------

bool WeightData::all_integer() const {
  return std::all_of(weights.begin(), weights.end(), [](const ExactScalar& w) { return w.is_integer(); }) &&
         (!t_weight || t_weight->get_den() == 1);
}

std::vector<std::int64_t> WeightData::integer_weights() const {
  std::vector<std::int64_t> out;
  for (const auto& w : weights) {
    if (!w.is_integer()) throw PreconditionError("weight " + w.str() + " is not an integer");
    const auto& num = w.rational_part().get_num();
    if (!num.fits_slong_p()) throw PreconditionError("weight out of range");
    out.push_back(num.get_si());
  }
  return out;
}

void WeightData::validate() const {
  for (const auto& w : weights) {
    if (w.sign() <= 0) throw PreconditionError("weight " + w.str() + " is not positive");
  }
  if (t_weight && sgn(*t_weight) <= 0) throw PreconditionError("t-weight must be positive");
}

ExactScalar term_weight(const Monomial& m, const WeightData& wd) {
  if (m.arity() != wd.arity()) {
    throw ArityMismatch("monomial has " + std::to_string(m.arity()) + " variables but " +
                        std::to_string(wd.arity()) + " weights were given");
  }
  ExactScalar total;
  for (std::size_t i = 0; i < wd.weights.size(); ++i) {
    if (m[i] != 0) total += wd.weights[i] * ExactScalar(static_cast<long>(m[i]));
  }
  if (wd.t_weight) {
    const auto b = m[wd.weights.size()];
    total -= ExactScalar(Rational(*wd.t_weight * Rational(static_cast<unsigned long>(b))));
  }
  return total;
}

Polynomial initial_form(const Polynomial& f, const WeightData& wd) {
  if (f.is_zero()) throw PreconditionError("initial form of the zero polynomial");
  std::optional<ExactScalar> lowest;
  std::vector<ExactScalar> weights;
  weights.reserve(f.size());
  for (const auto& t : f.terms()) {
    weights.push_back(term_weight(t.monomial, wd));
    if (!lowest || weights.back() < *lowest) lowest = weights.back();
  }
  std::vector<Term> kept;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (weights[i] == *lowest) kept.push_back(f.terms()[i]);
  }
  return Polynomial(f.ring(), std::move(kept));
}

Homogeneity is_homogeneous(const Polynomial& f, const WeightData& wd) {
  Homogeneity h;
  if (f.is_zero()) {
    h.homogeneous = true;
    return h;
  }
  const ExactScalar first = term_weight(f.terms().front().monomial, wd);
  for (const auto& t : f.terms()) {
    if (!(term_weight(t.monomial, wd) == first)) return h;
  }
  h.homogeneous = true;
  h.weight = first;
  return h;
}

}  // namespace conify
