#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "charp/polynomial.hpp"

namespace charp {

// Upper bound on p^(e*n) for anything that enumerates the free basis.
inline constexpr std::uint64_t kMaxBasisSize = std::uint64_t{1} << 16;

// p^e, or ExponentOverflow if it does not fit in 32 bits.
std::uint64_t frobenius_degree(std::uint32_t p, std::uint64_t e);

// f = sum over reduced monomials m of (f_m)^(p^e) * m. Reduced monomials have
// every exponent in [0, p^e) and form a free basis of F^e_* R.
struct FrobDecomposition {
  const FieldContext* ctx;
  std::size_t nvars;
  std::uint64_t level;
  std::map<Monomial, MultiPoly, GrevlexGreater> components;  // nonzero only
};

// f^(p^e): exponents scaled by p^e, coefficients raised to p^e.
MultiPoly frobenius_image(const MultiPoly& f, std::uint64_t e);

FrobDecomposition decompose(const MultiPoly& f, std::uint64_t e);

// The single component of f at `reduced`, computed without materialising the
// others.
MultiPoly component(const MultiPoly& f, std::uint64_t e, const Monomial& reduced);

MultiPoly recompose(const FrobDecomposition& d);

// True iff f lies in R^(p^e).
bool is_pe_power(const MultiPoly& f, std::uint64_t e);

// All reduced monomials of level e in n variables, ordered by degree and then
// by decreasing grevlex within a degree: 1, x, y, xy for n = 2, p = 2, e = 1.
std::vector<Monomial> free_basis(std::size_t nvars, std::uint32_t p, std::uint64_t e);

// Orders monomials the way free_basis lists them.
struct BasisOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return grevlex(a, b) > 0;
  }
};

}  // namespace charp
