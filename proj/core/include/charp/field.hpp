#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace charp {

inline constexpr unsigned kMaxExtensionDegree = 12;
inline constexpr std::uint32_t kMaxCharacteristic = 1u << 20;

class FieldElement;

// The finite field F_p[u]/(mu) for the lexicographically least monic
// irreducible mu of degree m. Contexts are interned: one per (p, m), alive for
// the whole process, compared by address.
class FieldContext {
 public:
  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

  std::uint32_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return m_; }
  bool is_prime_field() const noexcept { return m_ == 1; }

  // Monic modulus, coefficients from u^0 up to u^m.
  std::span<const std::uint32_t> modulus() const noexcept {
    return {modulus_.data(), modulus_.size()};
  }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t value) const;
  // The class of u. In a prime field this is 0 since mu = u.
  FieldElement generator() const;
  FieldElement from_residues(std::span<const std::uint32_t> residues) const;

  // Number of elements if it fits in 64 bits, else 0.
  std::uint64_t order() const noexcept { return order_; }

  // Every element, in residue-counter order. SizeBound above 2^16 elements.
  std::vector<FieldElement> elements() const;

  std::string modulus_string() const;

 private:
  friend const FieldContext& make_context(std::uint32_t p, unsigned m);
  FieldContext(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus);

  std::uint32_t p_;
  unsigned m_;
  std::vector<std::uint32_t> modulus_;
  std::uint64_t order_;
};

// Returns the interned context for F_{p^m}. Throws NotPrime or DegreeTooLarge.
const FieldContext& make_context(std::uint32_t p, unsigned m = 1);

bool is_prime(std::uint64_t n) noexcept;

class FieldElement {
 public:
  using Residues = std::array<std::uint32_t, kMaxExtensionDegree>;

  explicit FieldElement(const FieldContext& ctx) : ctx_(&ctx) {}

  const FieldContext& context() const noexcept { return *ctx_; }
  std::span<const std::uint32_t> residues() const noexcept {
    return {r_.data(), ctx_->degree()};
  }

  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.ctx_ == b.ctx_ && a.r_ == b.r_;
  }

  FieldElement pow(std::uint64_t exponent) const;
  FieldElement inverse() const;

  // Decimal residue for prime fields, a u-polynomial such as "u^2+u+1"
  // otherwise.
  std::string to_string() const;

 private:
  friend class FieldContext;
  void check_same(const FieldElement& other) const;

  const FieldContext* ctx_;
  Residues r_{};
};

std::ostream& operator<<(std::ostream& os, const FieldElement& a);

// a^(p^k).
FieldElement frobenius_pow(const FieldElement& a, std::uint64_t k);

// The unique b with b^(p^k) = a.
FieldElement pth_root(const FieldElement& a, std::uint64_t k);

}  // namespace charp
