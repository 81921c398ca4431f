#include "charp/random.hpp"

#include <algorithm>

namespace charp {

FieldElement random_element(const FieldContext& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> digit(0, ctx.characteristic() - 1);
  std::vector<std::uint32_t> residues(ctx.degree());
  for (auto& r : residues) r = digit(rng);
  return ctx.from_residues(residues);
}

FieldElement random_nonzero_element(const FieldContext& ctx, std::mt19937_64& rng) {
  for (;;) {
    FieldElement a = random_element(ctx, rng);
    if (!a.is_zero()) return a;
  }
}

MultiPoly random_poly(const FieldContext& ctx, std::size_t nvars, std::size_t max_terms,
                      std::uint32_t max_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> count(1, std::max<std::size_t>(max_terms, 1));
  std::uniform_int_distribution<std::uint32_t> total(0, max_degree);
  const std::size_t nterms = max_terms == 0 ? 0 : count(rng);
  std::vector<MultiPoly::Term> terms;
  for (std::size_t k = 0; k < nterms; ++k) {
    // Spread a random total degree over the variables.
    std::uint32_t budget = total(rng);
    std::vector<std::uint32_t> exps(nvars, 0);
    for (std::size_t i = 0; i < nvars && budget > 0; ++i) {
      std::uniform_int_distribution<std::uint32_t> share(0, budget);
      exps[i] = i + 1 == nvars ? budget : share(rng);
      budget -= exps[i];
    }
    std::shuffle(exps.begin(), exps.end(), rng);
    terms.push_back({Monomial(std::move(exps)), random_nonzero_element(ctx, rng)});
  }
  return MultiPoly::from_terms(ctx, nvars, std::move(terms));
}

MultiPoly random_nonzero_poly(const FieldContext& ctx, std::size_t nvars,
                              std::size_t max_terms, std::uint32_t max_degree,
                              std::mt19937_64& rng) {
  for (;;) {
    MultiPoly f = random_poly(ctx, nvars, std::max<std::size_t>(max_terms, 1), max_degree, rng);
    if (!f.is_zero()) return f;
  }
}

}  // namespace charp
