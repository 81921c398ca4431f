#include "charp/frobenius.hpp"

#include <algorithm>
#include <limits>

#include "charp/error.hpp"

namespace charp {

std::uint64_t frobenius_degree(std::uint32_t p, std::uint64_t e) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (q > std::numeric_limits<std::uint32_t>::max() / p) {
      throw Error(ErrorKind::ExponentOverflow, "p^e exceeds 32 bits");
    }
    q *= p;
  }
  return q;
}

MultiPoly frobenius_image(const MultiPoly& f, std::uint64_t e) {
  if (e == 0) return f;
  const FieldContext& ctx = f.context();
  const std::uint64_t q = frobenius_degree(ctx.characteristic(), e);
  std::vector<MultiPoly::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    terms.push_back({t.monomial.scaled(q), frobenius_pow(t.coeff, e)});
  }
  // Scaling preserves grevlex order, but from_terms keeps the invariant honest.
  return MultiPoly::from_terms(ctx, f.nvars(), std::move(terms));
}

namespace {

void check_level(std::uint64_t e) {
  if (e == 0) throw Error(ErrorKind::InvalidArgument, "Frobenius level must be at least 1");
}

// Splits exponent vector alpha = q * beta + rho with rho reduced.
std::pair<Monomial, Monomial> split_exponents(const Monomial& alpha, std::uint64_t q) {
  std::vector<std::uint32_t> beta(alpha.nvars());
  std::vector<std::uint32_t> rho(alpha.nvars());
  for (std::size_t i = 0; i < alpha.nvars(); ++i) {
    beta[i] = static_cast<std::uint32_t>(alpha[i] / q);
    rho[i] = static_cast<std::uint32_t>(alpha[i] % q);
  }
  return {Monomial(std::move(beta)), Monomial(std::move(rho))};
}

}  // namespace

FrobDecomposition decompose(const MultiPoly& f, std::uint64_t e) {
  check_level(e);
  const FieldContext& ctx = f.context();
  const std::uint64_t q = frobenius_degree(ctx.characteristic(), e);
  std::map<Monomial, std::vector<MultiPoly::Term>, GrevlexGreater> buckets;
  for (const auto& t : f.terms()) {
    auto [beta, rho] = split_exponents(t.monomial, q);
    buckets[rho].push_back({std::move(beta), pth_root(t.coeff, e)});
  }
  FrobDecomposition d{&ctx, f.nvars(), e, {}};
  for (auto& [rho, terms] : buckets) {
    d.components.emplace(rho, MultiPoly::from_terms(ctx, f.nvars(), std::move(terms)));
  }
  return d;
}

MultiPoly component(const MultiPoly& f, std::uint64_t e, const Monomial& reduced) {
  check_level(e);
  const FieldContext& ctx = f.context();
  const std::uint64_t q = frobenius_degree(ctx.characteristic(), e);
  std::vector<MultiPoly::Term> terms;
  for (const auto& t : f.terms()) {
    auto [beta, rho] = split_exponents(t.monomial, q);
    if (rho == reduced) terms.push_back({std::move(beta), pth_root(t.coeff, e)});
  }
  return MultiPoly::from_terms(ctx, f.nvars(), std::move(terms));
}

MultiPoly recompose(const FrobDecomposition& d) {
  MultiPoly out(*d.ctx, d.nvars);
  for (const auto& [rho, fm] : d.components) {
    out += frobenius_image(fm, d.level).times_monomial(rho);
  }
  return out;
}

bool is_pe_power(const MultiPoly& f, std::uint64_t e) {
  check_level(e);
  const std::uint64_t q = frobenius_degree(f.context().characteristic(), e);
  return std::all_of(f.terms().begin(), f.terms().end(), [q](const MultiPoly::Term& t) {
    const auto exps = t.monomial.exponents();
    return std::all_of(exps.begin(), exps.end(), [q](std::uint32_t a) { return a % q == 0; });
  });
}

std::vector<Monomial> free_basis(std::size_t nvars, std::uint32_t p, std::uint64_t e) {
  check_level(e);
  const std::uint64_t q = frobenius_degree(p, e);
  std::uint64_t rank = 1;
  for (std::size_t i = 0; i < nvars; ++i) {
    rank *= q;
    if (rank > kMaxBasisSize) {
      throw Error(ErrorKind::SizeBound, "free basis larger than " + std::to_string(kMaxBasisSize));
    }
  }
  std::vector<Monomial> basis;
  basis.reserve(rank);
  for (std::uint64_t counter = 0; counter < rank; ++counter) {
    std::vector<std::uint32_t> exps(nvars);
    std::uint64_t c = counter;
    for (std::size_t i = 0; i < nvars; ++i) {
      exps[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    basis.emplace_back(std::move(exps));
  }
  std::sort(basis.begin(), basis.end(), BasisOrder{});
  return basis;
}

}  // namespace charp
