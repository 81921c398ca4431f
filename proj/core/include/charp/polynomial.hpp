#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charp/field.hpp"

namespace charp {

// Exponent vector. Entries are 32-bit; products and scalings that would leave
// that range throw ExponentOverflow.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
  Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}

  std::size_t nvars() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }

  std::uint64_t degree() const noexcept;
  bool is_one() const noexcept;
  // Componentwise <=.
  bool divides(const Monomial& other) const noexcept;

  Monomial operator*(const Monomial& other) const;
  // Every exponent multiplied by factor.
  Monomial scaled(std::uint64_t factor) const;
  // Componentwise difference; requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::vector<std::uint32_t> exps_;
};

// Graded reverse lexicographic order with x_1 > x_2 > ... > x_n.
std::strong_ordering grevlex(const Monomial& a, const Monomial& b) noexcept;

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grevlex(a, b) > 0;
  }
};

// x, y, z for up to three variables, x1..xn beyond that.
std::vector<std::string> default_var_names(std::size_t nvars);

// Sparse polynomial over F_{p^m}. Terms are kept sorted by decreasing grevlex
// with no zero coefficients, so the zero polynomial has no terms.
class MultiPoly {
 public:
  struct Term {
    Monomial monomial;
    FieldElement coeff;
  };

  MultiPoly(const FieldContext& ctx, std::size_t nvars) : ctx_(&ctx), nvars_(nvars) {}

  // Combines like terms, drops zeros and sorts.
  static MultiPoly from_terms(const FieldContext& ctx, std::size_t nvars,
                              std::vector<Term> terms);
  static MultiPoly constant(const FieldContext& ctx, std::size_t nvars,
                            const FieldElement& c);
  static MultiPoly variable(const FieldContext& ctx, std::size_t nvars, std::size_t index);
  static MultiPoly monomial(const FieldContext& ctx, const Monomial& mono,
                            const FieldElement& c);

  const FieldContext& context() const noexcept { return *ctx_; }
  std::size_t nvars() const noexcept { return nvars_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  const Term& leading_term() const;
  FieldElement coefficient(const Monomial& mono) const;
  std::uint64_t total_degree() const noexcept;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const FieldElement& c) const;
  MultiPoly times_monomial(const Monomial& mono) const;
  MultiPoly pow(std::uint64_t exponent) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  std::string to_string() const;
  std::string to_string(std::span<const std::string> names) const;

 private:
  void check_compatible(const MultiPoly& other) const;

  const FieldContext* ctx_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& f);

// Fraction num/den, stored unreduced with den normalised to leading
// coefficient 1. Equality is by cross-multiplication.
class RationalFn {
 public:
  explicit RationalFn(MultiPoly num);
  RationalFn(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  RationalFn& operator+=(const RationalFn& rhs);
  RationalFn& operator-=(const RationalFn& rhs);
  RationalFn& operator*=(const RationalFn& rhs);
  RationalFn& operator/=(const RationalFn& rhs);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }

  friend bool operator==(const RationalFn& a, const RationalFn& b);

  std::string to_string() const;
  std::string to_string(std::span<const std::string> names) const;

 private:
  void normalize();

  MultiPoly num_;
  MultiPoly den_;
};

// Ideal generated by monomials; the generating set is kept minimal. No
// generators means the zero ideal.
class MonomialIdeal {
 public:
  MonomialIdeal(std::size_t nvars, std::vector<Monomial> generators);

  std::size_t nvars() const noexcept { return nvars_; }
  std::span<const Monomial> generators() const noexcept { return gens_; }
  bool contains(const Monomial& mono) const noexcept;
  bool is_unit() const noexcept;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t nvars_;
  std::vector<Monomial> gens_;
};

// True iff every term of f is divisible by some generator.
bool member(const MonomialIdeal& ideal, const MultiPoly& f);

// Grammar: sums and differences of products of powers; atoms are integers,
// variable names, the field generator `u` (extension fields only), and
// parenthesised expressions. Whitespace is ignored.
MultiPoly parse_poly(std::string_view text, const FieldContext& ctx,
                     std::span<const std::string> names);
MultiPoly parse_poly(std::string_view text, const FieldContext& ctx, std::size_t nvars);

// "num" or "num/den"; each side follows the polynomial grammar.
RationalFn parse_rational(std::string_view text, const FieldContext& ctx,
                          std::span<const std::string> names);

// Integer literal, or u-polynomial such as "u+1" in extension fields.
FieldElement parse_field_element(std::string_view text, const FieldContext& ctx);

// Comma-separated monomial generators, e.g. "x^2,y". "0" is the zero ideal.
MonomialIdeal parse_monomial_ideal(std::string_view text, const FieldContext& ctx,
                                   std::span<const std::string> names);

}  // namespace charp
