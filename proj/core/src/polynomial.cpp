#include "charp/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <ostream>

#include "charp/error.hpp"

namespace charp {

// ---------------------------------------------------------------------------
// Monomial

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<std::uint32_t> out(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    const std::uint64_t s = std::uint64_t{exps_[i]} + other.exps_[i];
    if (s > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorKind::ExponentOverflow, "exponent exceeds 32 bits");
    }
    out[i] = static_cast<std::uint32_t>(s);
  }
  return Monomial(std::move(out));
}

Monomial Monomial::scaled(std::uint64_t factor) const {
  std::vector<std::uint32_t> out(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && factor > std::numeric_limits<std::uint32_t>::max() / exps_[i]) {
      throw Error(ErrorKind::ExponentOverflow, "exponent exceeds 32 bits");
    }
    out[i] = static_cast<std::uint32_t>(exps_[i] * factor);
  }
  return Monomial(std::move(out));
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  if (!divisor.divides(*this)) {
    throw Error(ErrorKind::InvalidArgument, "monomial quotient is not exact");
  }
  std::vector<std::uint32_t> out(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) out[i] = exps_[i] - divisor.exps_[i];
  return Monomial(std::move(out));
}

std::string Monomial::to_string(std::span<const std::string> names) const {
  std::string out;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
  }
  return out.empty() ? "1" : out;
}

std::strong_ordering grevlex(const Monomial& a, const Monomial& b) noexcept {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da <=> db;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

std::vector<std::string> default_var_names(std::size_t nvars) {
  if (nvars <= 3) {
    static const char* kShort[] = {"x", "y", "z"};
    return {kShort, kShort + nvars};
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------------------
// MultiPoly

namespace {

using TermMap = std::map<Monomial, FieldElement, GrevlexGreater>;

void accumulate(TermMap& acc, const Monomial& mono, const FieldElement& c) {
  auto [it, inserted] = acc.try_emplace(mono, c);
  if (!inserted) it->second += c;
}

}  // namespace

MultiPoly MultiPoly::from_terms(const FieldContext& ctx, std::size_t nvars,
                                std::vector<Term> terms) {
  TermMap acc;
  for (auto& t : terms) {
    if (t.monomial.nvars() != nvars) {
      throw Error(ErrorKind::ContextMismatch, "monomial has wrong number of variables");
    }
    if (&t.coeff.context() != &ctx) {
      throw Error(ErrorKind::ContextMismatch, "coefficient from a different field");
    }
    accumulate(acc, t.monomial, t.coeff);
  }
  MultiPoly out(ctx, nvars);
  for (auto& [mono, c] : acc) {
    if (!c.is_zero()) out.terms_.push_back({mono, c});
  }
  return out;
}

MultiPoly MultiPoly::constant(const FieldContext& ctx, std::size_t nvars,
                              const FieldElement& c) {
  return monomial(ctx, Monomial(nvars), c);
}

MultiPoly MultiPoly::variable(const FieldContext& ctx, std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  std::vector<std::uint32_t> exps(nvars, 0);
  exps[index] = 1;
  return monomial(ctx, Monomial(std::move(exps)), ctx.one());
}

MultiPoly MultiPoly::monomial(const FieldContext& ctx, const Monomial& mono,
                              const FieldElement& c) {
  MultiPoly out(ctx, mono.nvars());
  if (!c.is_zero()) out.terms_.push_back({mono, c});
  return out;
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

const MultiPoly::Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no leading term");
  return terms_.front();
}

FieldElement MultiPoly::coefficient(const Monomial& mono) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                             [](const Term& t, const Monomial& m) { return grevlex(t.monomial, m) > 0; });
  if (it != terms_.end() && it->monomial == mono) return it->coeff;
  return ctx_->zero();
}

std::uint64_t MultiPoly::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

void MultiPoly::check_compatible(const MultiPoly& other) const {
  if (ctx_ != other.ctx_ || nvars_ != other.nvars_) {
    throw Error(ErrorKind::ContextMismatch, "polynomials over different rings");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  check_compatible(rhs);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end()) {
      merged.push_back(std::move(*a++));
      continue;
    }
    if (a == terms_.end()) {
      merged.push_back(*b++);
      continue;
    }
    const auto cmp = grevlex(a->monomial, b->monomial);
    if (cmp > 0) {
      merged.push_back(std::move(*a++));
    } else if (cmp < 0) {
      merged.push_back(*b++);
    } else {
      FieldElement c = a->coeff + b->coeff;
      if (!c.is_zero()) merged.push_back({std::move(a->monomial), c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) { return *this += -rhs; }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b);
  MultiPoly out(*a.ctx_, a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  TermMap acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) accumulate(acc, s.monomial * t.monomial, s.coeff * t.coeff);
  }
  for (auto& [mono, c] : acc) {
    if (!c.is_zero()) out.terms_.push_back({mono, c});
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

MultiPoly MultiPoly::scaled(const FieldElement& c) const {
  if (c.is_zero()) return MultiPoly(*ctx_, nvars_);
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.coeff *= c;
  return out;
}

MultiPoly MultiPoly::times_monomial(const Monomial& mono) const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.monomial = t.monomial * mono;
  return out;
}

MultiPoly MultiPoly::pow(std::uint64_t exponent) const {
  MultiPoly result = constant(*ctx_, nvars_, ctx_->one());
  if (terms_.size() == 1) {
    return monomial(*ctx_, terms_[0].monomial.scaled(exponent), terms_[0].coeff.pow(exponent));
  }
  MultiPoly base = *this;
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result *= base;
    if (exponent > 1) base *= base;
  }
  return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.ctx_ != b.ctx_ || a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) ||
        !(a.terms_[i].coeff == b.terms_[i].coeff)) {
      return false;
    }
  }
  return true;
}

std::string MultiPoly::to_string() const { return to_string(default_var_names(nvars_)); }

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    const std::string c = t.coeff.to_string();
    if (t.monomial.is_one()) {
      out += c;
    } else if (t.coeff.is_one()) {
      out += t.monomial.to_string(names);
    } else {
      const bool compound = c.find('+') != std::string::npos;
      out += compound ? "(" + c + ")" : c;
      out += "*" + t.monomial.to_string(names);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& f) { return os << f.to_string(); }

// ---------------------------------------------------------------------------
// RationalFn

RationalFn::RationalFn(MultiPoly num)
    : num_(num),
      den_(MultiPoly::constant(num.context(), num.nvars(), num.context().one())) {}

RationalFn::RationalFn(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (&num_.context() != &den_.context() || num_.nvars() != den_.nvars()) {
    throw Error(ErrorKind::ContextMismatch, "numerator and denominator over different rings");
  }
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  normalize();
}

void RationalFn::normalize() {
  const FieldElement lead = den_.leading_term().coeff;
  if (lead.is_one()) return;
  const FieldElement inv = lead.inverse();
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RationalFn& RationalFn::operator+=(const RationalFn& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ = den_ * rhs.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ = den_ * rhs.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator*=(const RationalFn& rhs) {
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& rhs) {
  if (rhs.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  num_ = num_ * rhs.den_;
  den_ = den_ * rhs.num_;
  normalize();
  return *this;
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFn::to_string() const { return to_string(default_var_names(num_.nvars())); }

std::string RationalFn::to_string(std::span<const std::string> names) const {
  std::string n = num_.to_string(names);
  if (den_.is_constant()) return n;
  std::string d = den_.to_string(names);
  if (num_.size() > 1) n = "(" + n + ")";
  if (d.find_first_of("+*") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

// ---------------------------------------------------------------------------
// MonomialIdeal

MonomialIdeal::MonomialIdeal(std::size_t nvars, std::vector<Monomial> generators)
    : nvars_(nvars) {
  for (const auto& g : generators) {
    if (g.nvars() != nvars) {
      throw Error(ErrorKind::ContextMismatch, "generator has wrong number of variables");
    }
  }
  std::sort(generators.begin(), generators.end(),
            [](const Monomial& a, const Monomial& b) { return grevlex(a, b) < 0; });
  for (auto& g : generators) {
    if (!contains(g)) gens_.push_back(std::move(g));
  }
}

bool MonomialIdeal::contains(const Monomial& mono) const noexcept {
  return std::any_of(gens_.begin(), gens_.end(),
                     [&](const Monomial& g) { return g.divides(mono); });
}

bool MonomialIdeal::is_unit() const noexcept {
  return gens_.size() == 1 && gens_[0].is_one();
}

std::string MonomialIdeal::to_string(std::span<const std::string> names) const {
  if (gens_.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i > 0) out += ",";
    out += gens_[i].to_string(names);
  }
  return out + ")";
}

bool member(const MonomialIdeal& ideal, const MultiPoly& f) {
  if (ideal.nvars() != f.nvars()) {
    throw Error(ErrorKind::ContextMismatch, "ideal and polynomial in different rings");
  }
  for (const auto& t : f.terms()) {
    if (!ideal.contains(t.monomial)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const FieldContext& ctx, std::span<const std::string> names)
      : text_(text), ctx_(ctx), names_(names) {}

  MultiPoly parse() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    MultiPoly f = expr();
    skip_space();
    if (pos_ != text_.size()) {
      throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return f;
  }

 private:
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

  MultiPoly expr() {
    MultiPoly f = term();
    for (;;) {
      if (accept('+')) {
        f += term();
      } else if (accept('-')) {
        f -= term();
      } else {
        return f;
      }
    }
  }

  MultiPoly term() {
    MultiPoly f = factor();
    while (accept('*')) f *= factor();
    return f;
  }

  MultiPoly factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    MultiPoly base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      std::uint64_t e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (e > std::numeric_limits<std::uint32_t>::max()) {
          throw Error(ErrorKind::ExponentOverflow, "exponent exceeds 32 bits");
        }
        ++pos_;
      }
      if (pos_ == start) throw SyntaxError(pos_, "expected exponent");
      return base.pow(e);
    }
    return base;
  }

  MultiPoly atom() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly f = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint64_t p = ctx_.characteristic();
      std::uint64_t value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = (value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0')) % p;
        ++pos_;
      }
      return MultiPoly::constant(ctx_, names_.size(), ctx_.from_int(static_cast<std::int64_t>(value)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == ident) return MultiPoly::variable(ctx_, names_.size(), i);
      }
      if (ident == "u" && !ctx_.is_prime_field()) {
        return MultiPoly::constant(ctx_, names_.size(), ctx_.generator());
      }
      throw SyntaxError(start, "unknown identifier '" + std::string(ident) + "'");
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const FieldContext& ctx_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

// Splits on `sep` at parenthesis depth zero, keeping offsets for diagnostics.
std::vector<std::pair<std::size_t, std::string_view>> split_top_level(std::string_view text,
                                                                      char sep) {
  std::vector<std::pair<std::size_t, std::string_view>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == sep && depth == 0) {
      parts.emplace_back(start, text.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.emplace_back(start, text.substr(start));
  return parts;
}

MultiPoly parse_at(std::string_view text, std::size_t offset, const FieldContext& ctx,
                   std::span<const std::string> names) {
  try {
    return Parser(text, ctx, names).parse();
  } catch (const SyntaxError& e) {
    // Re-anchor the position relative to the full input.
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" at position "));
    throw SyntaxError(e.position() + offset, msg);
  }
}

}  // namespace

MultiPoly parse_poly(std::string_view text, const FieldContext& ctx,
                     std::span<const std::string> names) {
  return Parser(text, ctx, names).parse();
}

MultiPoly parse_poly(std::string_view text, const FieldContext& ctx, std::size_t nvars) {
  const auto names = default_var_names(nvars);
  return parse_poly(text, ctx, names);
}

RationalFn parse_rational(std::string_view text, const FieldContext& ctx,
                          std::span<const std::string> names) {
  const auto parts = split_top_level(text, '/');
  if (parts.size() > 2) throw SyntaxError(parts[2].first - 1, "more than one '/'");
  MultiPoly num = parse_at(parts[0].second, parts[0].first, ctx, names);
  if (parts.size() == 1) return RationalFn(std::move(num));
  MultiPoly den = parse_at(parts[1].second, parts[1].first, ctx, names);
  if (den.is_zero()) throw SyntaxError(parts[1].first, "zero denominator");
  return RationalFn(std::move(num), std::move(den));
}

FieldElement parse_field_element(std::string_view text, const FieldContext& ctx) {
  const MultiPoly f = Parser(text, ctx, {}).parse();
  return f.is_zero() ? ctx.zero() : f.leading_term().coeff;
}

MonomialIdeal parse_monomial_ideal(std::string_view text, const FieldContext& ctx,
                                   std::span<const std::string> names) {
  std::vector<Monomial> gens;
  const auto parts = split_top_level(text, ',');
  for (const auto& [offset, part] : parts) {
    const MultiPoly g = parse_at(part, offset, ctx, names);
    if (g.is_zero()) {
      if (parts.size() == 1) return MonomialIdeal(names.size(), {});
      continue;
    }
    if (g.size() != 1) throw SyntaxError(offset, "ideal generator is not a monomial");
    gens.push_back(g.leading_term().monomial);
  }
  return MonomialIdeal(names.size(), std::move(gens));
}

}  // namespace charp
