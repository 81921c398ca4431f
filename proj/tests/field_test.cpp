#include <gtest/gtest.h>

#include <vector>

#include "charp/error.hpp"
#include "charp/field.hpp"

namespace charp {
namespace {

// Dense polynomials over F_p, coefficient i is the u^i coefficient.
using Dense = std::vector<std::uint32_t>;

Dense trim(Dense a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Dense mulmod_dense(const Dense& a, const Dense& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}

// Oracle: a monic polynomial of degree m is irreducible iff it is not the
// product of two monic polynomials of positive degree. Enumerate all products.
bool irreducible_by_enumeration(const Dense& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count_d = 1;
    for (std::size_t i = 0; i < d; ++i) count_d *= p;
    std::uint64_t count_rest = 1;
    for (std::size_t i = 0; i < m - d; ++i) count_rest *= p;
    for (std::uint64_t a = 0; a < count_d; ++a) {
      Dense g(d + 1, 0);
      std::uint64_t t = a;
      for (std::size_t i = 0; i < d; ++i, t /= p) g[i] = t % p;
      g[d] = 1;
      for (std::uint64_t b = 0; b < count_rest; ++b) {
        Dense h(m - d + 1, 0);
        std::uint64_t s = b;
        for (std::size_t i = 0; i < m - d; ++i, s /= p) h[i] = s % p;
        h[m - d] = 1;
        if (mulmod_dense(g, h, p) == f) return false;
      }
    }
  }
  return true;
}

// Least monic irreducible of degree m, counting in base p with the u^(m-1)
// coefficient as the most significant digit.
Dense least_irreducible(std::uint32_t p, std::size_t m) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= p;
  for (std::uint64_t k = 0; k < total; ++k) {
    Dense f(m + 1, 0);
    std::uint64_t t = k;
    for (std::size_t i = 0; i < m; ++i, t /= p) f[i] = t % p;
    f[m] = 1;
    if (irreducible_by_enumeration(f, p)) return f;
  }
  return {};
}

TEST(Field, PrimeFieldContext) {
  const FieldContext& ctx = make_context(2);
  EXPECT_TRUE(ctx.is_prime_field());
  EXPECT_EQ(ctx.order(), 2u);
  EXPECT_EQ(ctx.modulus_string(), "u");
}

TEST(Field, F4Modulus) {
  const FieldContext& ctx = make_context(2, 2);
  EXPECT_EQ(ctx.modulus_string(), "u^2+u+1");
  EXPECT_EQ(ctx.order(), 4u);
}

TEST(Field, RejectsCompositeCharacteristic) {
  try {
    make_context(4);
    FAIL() << "expected NotPrime";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
  }
  EXPECT_THROW(make_context(1), Error);
  EXPECT_THROW(make_context(0), Error);
}

TEST(Field, RejectsLargeDegree) {
  try {
    make_context(2, kMaxExtensionDegree + 1);
    FAIL() << "expected DegreeTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeTooLarge);
  }
}

TEST(Field, ContextsAreInterned) {
  EXPECT_EQ(&make_context(3, 2), &make_context(3, 2));
  EXPECT_NE(&make_context(3, 2), &make_context(3, 3));
}

TEST(Field, ModulusMatchesEnumerationOracle) {
  const std::pair<std::uint32_t, std::size_t> cases[] = {
      {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}};
  for (const auto& [p, m] : cases) {
    const FieldContext& ctx = make_context(p, m);
    const auto mod = ctx.modulus();
    const Dense got(mod.begin(), mod.end());
    EXPECT_EQ(got, least_irreducible(p, m)) << "p=" << p << " m=" << m;
  }
}

TEST(Field, FrobeniusInF4) {
  const FieldContext& ctx = make_context(2, 2);
  const FieldElement u = ctx.generator();
  EXPECT_EQ(frobenius_pow(u, 1).to_string(), "u+1");
  EXPECT_EQ(pth_root(u, 1).to_string(), "u+1");
  EXPECT_EQ(frobenius_pow(ctx.zero(), 3), ctx.zero());
  EXPECT_EQ(pth_root(ctx.one(), 5), ctx.one());
}

TEST(Field, PrimeFieldArithmetic) {
  const FieldContext& ctx = make_context(7);
  EXPECT_EQ(ctx.from_int(3) * ctx.from_int(5), ctx.one());
  EXPECT_EQ(ctx.from_int(-1), ctx.from_int(6));
  EXPECT_EQ(ctx.from_int(3).inverse(), ctx.from_int(5));
  EXPECT_EQ(ctx.from_int(2).pow(3), ctx.one());
  EXPECT_THROW(ctx.zero().inverse(), Error);
}

TEST(Field, MixedContextsRejected) {
  const FieldElement a = make_context(2).one();
  const FieldElement b = make_context(3).one();
  try {
    (void)(a + b);
    FAIL() << "expected ContextMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ContextMismatch);
  }
}

TEST(Field, ElementsEnumeration) {
  const FieldContext& ctx = make_context(3, 2);
  const auto elems = ctx.elements();
  ASSERT_EQ(elems.size(), 9u);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) EXPECT_FALSE(elems[i] == elems[j]);
  EXPECT_THROW(make_context(257, 2).elements(), Error);
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(FieldAxioms, Exhaustive) {
  const auto [p, m] = GetParam();
  const FieldContext& ctx = make_context(p, m);
  const auto elems = ctx.elements();
  for (const auto& a : elems) {
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), ctx.one());
      EXPECT_EQ(a.pow(ctx.order() - 1), ctx.one());
    }
    EXPECT_EQ(a + (-a), ctx.zero());
    for (const auto& b : elems) {
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(frobenius_pow(a + b, 1), frobenius_pow(a, 1) + frobenius_pow(b, 1));
      EXPECT_EQ(frobenius_pow(a * b, 1), frobenius_pow(a, 1) * frobenius_pow(b, 1));
    }
  }
}

TEST_P(FieldAxioms, FrobeniusRootsInvert) {
  const auto [p, m] = GetParam();
  const FieldContext& ctx = make_context(p, m);
  for (const auto& a : ctx.elements()) {
    for (std::uint64_t k = 0; k <= 4; ++k) {
      EXPECT_EQ(pth_root(frobenius_pow(a, k), k), a);
      EXPECT_EQ(frobenius_pow(pth_root(a, k), k), a);
    }
    std::uint64_t pk = 1;
    for (std::uint64_t k = 0; k <= 3; ++k, pk *= p) EXPECT_EQ(frobenius_pow(a, k), a.pow(pk));
    EXPECT_EQ(frobenius_pow(a, m), a);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{2u, 2u},
                                           std::pair{2u, 3u}, std::pair{2u, 6u},
                                           std::pair{3u, 1u}, std::pair{3u, 2u},
                                           std::pair{3u, 3u}, std::pair{5u, 2u},
                                           std::pair{7u, 2u}));

}  // namespace
}  // namespace charp
