#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charp/field.hpp"
#include "charp/polynomial.hpp"

namespace charp {

// A power series known modulo t^N. Coefficients at and beyond N are unknown,
// never assumed zero.
class TruncatedSeries {
 public:
  TruncatedSeries(const FieldContext& ctx, std::size_t precision)
      : ctx_(&ctx), coeffs_(precision, ctx.zero()) {}
  TruncatedSeries(const FieldContext& ctx, std::vector<FieldElement> coeffs);

  static TruncatedSeries monomial(const FieldContext& ctx, std::size_t exponent,
                                  const FieldElement& c, std::size_t precision);

  const FieldContext& context() const noexcept { return *ctx_; }
  std::size_t precision() const noexcept { return coeffs_.size(); }
  std::span<const FieldElement> coefficients() const noexcept { return coeffs_; }
  const FieldElement& operator[](std::size_t i) const { return coeffs_.at(i); }

  // Index of the first nonzero coefficient, or nullopt when every known
  // coefficient vanishes (inconclusive).
  std::optional<std::size_t> order() const noexcept;

  TruncatedSeries truncated(std::size_t precision) const;

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  TruncatedSeries scaled(const FieldElement& c) const;
  TruncatedSeries pow(std::uint64_t exponent) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  const FieldContext* ctx_;
  std::vector<FieldElement> coeffs_;
};

// Image of f under x_i -> images[i], correct modulo t^precision. Every image
// must be known to at least that precision (PrecisionMismatch otherwise).
TruncatedSeries substitute_series(const MultiPoly& f, std::span<const TruncatedSeries> images,
                                  std::size_t precision);

}  // namespace charp
