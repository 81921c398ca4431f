#include "charp/series.hpp"

#include <algorithm>
#include <map>

#include "charp/error.hpp"

namespace charp {

TruncatedSeries::TruncatedSeries(const FieldContext& ctx, std::vector<FieldElement> coeffs)
    : ctx_(&ctx), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (&c.context() != ctx_) {
      throw Error(ErrorKind::ContextMismatch, "series coefficient from a different field");
    }
  }
}

TruncatedSeries TruncatedSeries::monomial(const FieldContext& ctx, std::size_t exponent,
                                          const FieldElement& c, std::size_t precision) {
  TruncatedSeries s(ctx, precision);
  if (exponent < precision) s.coeffs_[exponent] = c;
  return s;
}

std::optional<std::size_t> TruncatedSeries::order() const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return i;
  }
  return std::nullopt;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t precision) const {
  if (precision > coeffs_.size()) {
    throw Error(ErrorKind::PrecisionMismatch,
                "series known to precision " + std::to_string(coeffs_.size()) +
                    ", requested " + std::to_string(precision));
  }
  return TruncatedSeries(*ctx_, {coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(precision)});
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()), ctx_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  coeffs_.resize(std::min(coeffs_.size(), rhs.coeffs_.size()), ctx_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.ctx_ != b.ctx_) throw Error(ErrorKind::ContextMismatch, "series over different fields");
  const std::size_t n = std::min(a.precision(), b.precision());
  TruncatedSeries out(*a.ctx_, n);
  // Skipping zero coefficients keeps sparse (lacunary) series cheap.
  std::vector<std::size_t> support_b;
  for (std::size_t j = 0; j < n; ++j) {
    if (!b.coeffs_[j].is_zero()) support_b.push_back(j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j : support_b) {
      if (i + j >= n) break;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const FieldElement& c) const {
  TruncatedSeries out = *this;
  for (auto& x : out.coeffs_) x *= c;
  return out;
}

TruncatedSeries TruncatedSeries::pow(std::uint64_t exponent) const {
  const std::size_t n = precision();
  const auto ord = order();
  if (exponent > 0 && ord && *ord > 0 && exponent >= (n + *ord - 1) / *ord) {
    return TruncatedSeries(*ctx_, n);
  }
  TruncatedSeries result = monomial(*ctx_, 0, ctx_->one(), n);
  TruncatedSeries base = *this;
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result = result * base;
    if (exponent > 1) base = base * base;
  }
  return result;
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = c.to_string();
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (!c.is_one()) out += cs + "*";
    out += i == 1 ? std::string("t") : "t^" + std::to_string(i);
  }
  if (!out.empty()) out += " + ";
  return out + "O(t^" + std::to_string(coeffs_.size()) + ")";
}

TruncatedSeries substitute_series(const MultiPoly& f, std::span<const TruncatedSeries> images,
                                  std::size_t precision) {
  if (images.size() != f.nvars()) {
    throw Error(ErrorKind::ContextMismatch, "need one series image per variable");
  }
  std::vector<TruncatedSeries> truncated;
  truncated.reserve(images.size());
  for (const auto& s : images) {
    if (&s.context() != &f.context()) {
      throw Error(ErrorKind::ContextMismatch, "series and polynomial over different fields");
    }
    truncated.push_back(s.truncated(precision));
  }
  const FieldContext& ctx = f.context();
  std::vector<std::map<std::uint32_t, TruncatedSeries>> powers(images.size());
  auto power = [&](std::size_t var, std::uint32_t e) -> const TruncatedSeries& {
    auto it = powers[var].find(e);
    if (it == powers[var].end()) {
      it = powers[var].emplace(e, truncated[var].pow(e)).first;
    }
    return it->second;
  };

  TruncatedSeries out(ctx, precision);
  for (const auto& term : f.terms()) {
    TruncatedSeries value = TruncatedSeries::monomial(ctx, 0, term.coeff, precision);
    for (std::size_t v = 0; v < f.nvars() && value.order(); ++v) {
      if (term.monomial[v] != 0) value = value * power(v, term.monomial[v]);
    }
    out += value;
  }
  return out;
}

}  // namespace charp
