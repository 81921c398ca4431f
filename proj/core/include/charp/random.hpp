#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "charp/polynomial.hpp"

namespace charp {

FieldElement random_element(const FieldContext& ctx, std::mt19937_64& rng);
FieldElement random_nonzero_element(const FieldContext& ctx, std::mt19937_64& rng);

// Up to max_terms terms, each with total degree <= max_degree and a nonzero
// random coefficient. May return zero only if max_terms == 0.
MultiPoly random_poly(const FieldContext& ctx, std::size_t nvars, std::size_t max_terms,
                      std::uint32_t max_degree, std::mt19937_64& rng);

MultiPoly random_nonzero_poly(const FieldContext& ctx, std::size_t nvars,
                              std::size_t max_terms, std::uint32_t max_degree,
                              std::mt19937_64& rng);

}  // namespace charp
