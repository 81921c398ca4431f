#include "charp/cartier.hpp"

#include <random>

#include "charp/error.hpp"
#include "charp/frobenius.hpp"
#include "charp/random.hpp"

namespace charp {

CartierMap::CartierMap(std::uint64_t level, MultiPoly multiplier)
    : level_(level), multiplier_(std::move(multiplier)) {
  if (level_ == 0) throw Error(ErrorKind::InvalidArgument, "Cartier map level must be at least 1");
  frobenius_degree(multiplier_.context().characteristic(), level_);
}

MultiPoly CartierMap::operator()(const MultiPoly& f) const { return apply(*this, f); }

Monomial top_monomial(std::size_t nvars, std::uint32_t p, std::uint64_t e) {
  const auto q = frobenius_degree(p, e);
  return Monomial(std::vector<std::uint32_t>(nvars, static_cast<std::uint32_t>(q - 1)));
}

MultiPoly trace_project(const MultiPoly& f, std::uint64_t e) {
  return component(f, e, top_monomial(f.nvars(), f.context().characteristic(), e));
}

MultiPoly apply(const CartierMap& phi, const MultiPoly& f) {
  if (&phi.context() != &f.context() || phi.nvars() != f.nvars()) {
    throw Error(ErrorKind::ContextMismatch, "map and polynomial over different rings");
  }
  return trace_project(phi.multiplier() * f, phi.level());
}

CartierMap canonical_splitting(const FieldContext& ctx, std::size_t nvars, std::uint64_t e) {
  if (e == 0) throw Error(ErrorKind::InvalidArgument, "Cartier map level must be at least 1");
  return CartierMap(e, MultiPoly::monomial(ctx, top_monomial(nvars, ctx.characteristic(), e),
                                           ctx.one()));
}

bool is_splitting(const CartierMap& phi) {
  const MultiPoly one = MultiPoly::constant(phi.context(), phi.nvars(), phi.context().one());
  return apply(phi, one) == one;
}

CartierMap compose(const CartierMap& outer, const CartierMap& inner) {
  if (&outer.context() != &inner.context() || outer.nvars() != inner.nvars()) {
    throw Error(ErrorKind::ContextMismatch, "composing maps over different rings");
  }
  // g_o * Phi_d(g_i f) = Phi_d(g_o^(p^d) g_i f) and Phi_e . Phi_d = Phi_(e+d).
  return CartierMap(outer.level() + inner.level(),
                    frobenius_image(outer.multiplier(), inner.level()) * inner.multiplier());
}

bool check_linearity(const CartierMap& phi, std::size_t trials, std::uint64_t seed) {
  return check_linearity([&phi](const MultiPoly& f) { return apply(phi, f); }, phi.context(),
                         phi.nvars(), phi.level(), trials, seed);
}

bool check_linearity(const ApplyFn& apply_fn, const FieldContext& ctx, std::size_t nvars,
                     std::uint64_t level, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
  std::mt19937_64 rng(seed);
  const auto q = static_cast<std::uint32_t>(frobenius_degree(ctx.characteristic(), level));
  for (std::size_t k = 0; k < trials; ++k) {
    const MultiPoly r = random_poly(ctx, nvars, 4, 3, rng);
    const MultiPoly s = random_poly(ctx, nvars, 6, 3 * q, rng);
    if (apply_fn(frobenius_image(r, level) * s) != r * apply_fn(s)) return false;
  }
  return true;
}

bool check_compatible(const CartierMap& phi, const MonomialIdeal& ideal) {
  if (ideal.nvars() != phi.nvars()) {
    throw Error(ErrorKind::ContextMismatch, "ideal and map over different rings");
  }
  const FieldContext& ctx = phi.context();
  const auto basis = free_basis(phi.nvars(), ctx.characteristic(), phi.level());
  for (const auto& u : ideal.generators()) {
    for (const auto& b : basis) {
      const MultiPoly generator = MultiPoly::monomial(ctx, u * b, ctx.one());
      if (!member(ideal, apply(phi, generator))) return false;
    }
  }
  return true;
}

}  // namespace charp
