#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "charp/polynomial.hpp"

namespace charp {

// The p^-e-linear map f -> Phi_e(g * f) on k[x_1..x_n], where Phi_e takes the
// Frobenius decomposition component at the top reduced monomial
// (x_1 ... x_n)^(p^e - 1). Every element of Hom_R(F^e_* R, R) has this form
// for a unique multiplier g.
class CartierMap {
 public:
  CartierMap(std::uint64_t level, MultiPoly multiplier);

  std::uint64_t level() const noexcept { return level_; }
  const MultiPoly& multiplier() const noexcept { return multiplier_; }
  const FieldContext& context() const noexcept { return multiplier_.context(); }
  std::size_t nvars() const noexcept { return multiplier_.nvars(); }

  MultiPoly operator()(const MultiPoly& f) const;

 private:
  std::uint64_t level_;
  MultiPoly multiplier_;
};

// (x_1 ... x_n)^(p^e - 1).
Monomial top_monomial(std::size_t nvars, std::uint32_t p, std::uint64_t e);

// Phi_e(f).
MultiPoly trace_project(const MultiPoly& f, std::uint64_t e);

MultiPoly apply(const CartierMap& phi, const MultiPoly& f);

// Multiplier (x_1 ... x_n)^(p^e - 1); sends 1 to 1.
CartierMap canonical_splitting(const FieldContext& ctx, std::size_t nvars, std::uint64_t e);

// phi(1) == 1.
bool is_splitting(const CartierMap& phi);

// Level e + d map equal to outer(inner(f)) for every f; its multiplier is
// g_outer^(p^d) * g_inner where d is the inner level.
CartierMap compose(const CartierMap& outer, const CartierMap& inner);

using ApplyFn = std::function<MultiPoly(const MultiPoly&)>;

// Samples random r, s and checks apply(r^(p^e) * s) == r * apply(s).
bool check_linearity(const CartierMap& phi, std::size_t trials, std::uint64_t seed = 0);
bool check_linearity(const ApplyFn& apply_fn, const FieldContext& ctx, std::size_t nvars,
                     std::uint64_t level, std::size_t trials, std::uint64_t seed = 0);

// phi(F^e_* J) is contained in J, checked on the generators u * b of F^e_* J
// (u a minimal generator of J, b a reduced monomial). SizeBound when p^(en)
// exceeds kMaxBasisSize.
bool check_compatible(const CartierMap& phi, const MonomialIdeal& ideal);

}  // namespace charp
