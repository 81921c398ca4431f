#include <gtest/gtest.h>

#include <future>
#include <random>

#include "charp/error.hpp"
#include "charp/random.hpp"
#include "charp/valuation.hpp"

namespace charp {
namespace {

MultiPoly P(const std::string& s, const FieldContext& ctx, std::size_t n = 2) {
  return parse_poly(s, ctx, n);
}

RationalFn R(const std::string& s, const FieldContext& ctx) {
  return parse_rational(s, ctx, default_var_names(2));
}

// Independent oracle for the factorial-gap series over F_p.
std::vector<std::uint32_t> factorial_gap_coeffs(std::size_t n) {
  std::vector<std::uint32_t> a(n, 0);
  std::size_t f = 1;
  for (std::size_t j = 1; f < n; ++j) {
    f *= j;
    if (f < n) a[f] = 1;
  }
  return a;
}

// Dense evaluation of f(t, s(t)) mod t^n over F_p, then the t-adic order.
std::optional<std::size_t> dense_order(const MultiPoly& f, const std::vector<std::uint32_t>& s,
                                       std::uint32_t p) {
  const std::size_t n = s.size();
  auto mul = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> r(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      if (a[i])
        for (std::size_t j = 0; i + j < n; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
  };
  std::vector<std::uint64_t> total(n, 0);
  const std::vector<std::uint64_t> y(s.begin(), s.end());
  for (const auto& term : f.terms()) {
    std::vector<std::uint64_t> acc(n, 0);
    if (term.monomial[0] < n) acc[term.monomial[0]] = term.coeff.residues()[0];
    for (std::uint32_t k = 0; k < term.monomial[1]; ++k) acc = mul(acc, y);
    for (std::size_t i = 0; i < n; ++i) total[i] = (total[i] + acc[i]) % p;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (total[i]) return i;
  return std::nullopt;
}

TEST(Streams, LacunaryCoefficients) {
  const FieldContext& f2 = make_context(2);
  const SeriesStream s = streams::lacunary(f2);
  const int expected[] = {0, 1, 1, 0, 0, 0, 1};
  for (std::size_t n = 0; n < 7; ++n) EXPECT_EQ(s.coefficient(n), f2.from_int(expected[n]));
  EXPECT_TRUE(s.nonunit());
  const auto oracle = factorial_gap_coeffs(5041);
  for (std::size_t n = 0; n < oracle.size(); ++n)
    ASSERT_EQ(s.coefficient(n), f2.from_int(oracle[n])) << n;
}

TEST(Streams, OtherBuiltins) {
  const FieldContext& f3 = make_context(3);
  const SeriesStream shift = streams::lacunary_shift(f3, 1);
  EXPECT_EQ(shift.coefficient(2), f3.one());
  EXPECT_EQ(shift.coefficient(7), f3.one());
  EXPECT_EQ(shift.coefficient(6), f3.zero());
  const SeriesStream gap = streams::geometric_gap(f3, 2);
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) EXPECT_EQ(gap.coefficient(n), f3.one());
  EXPECT_EQ(gap.coefficient(3), f3.zero());
  EXPECT_EQ(gap.transcendence(), SeriesStream::Transcendence::Assumed);
  EXPECT_EQ(streams::geometric_gap(make_context(2), 4).transcendence(),
            SeriesStream::Transcendence::KnownAlgebraic);
  EXPECT_EQ(streams::catalog(f3).size(), 5u);
}

TEST(Streams, SeededStreamsAreDeterministicAndDistinct) {
  const FieldContext& f5 = make_context(5);
  const SeriesStream a = streams::from_seed(f5, 7);
  const SeriesStream b = streams::from_seed(f5, 7);
  EXPECT_TRUE(a.nonunit());
  for (std::size_t n = 0; n < 100; ++n) EXPECT_EQ(a.coefficient(n), b.coefficient(n));
  int separated = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SeriesStream s = streams::from_seed(f5, seed);
    const SeriesStream t = streams::from_seed(f5, seed + 1000);
    for (std::size_t n = 0; n < 64; ++n) {
      if (!(s.coefficient(n) == t.coefficient(n))) {
        ++separated;
        break;
      }
    }
  }
  EXPECT_EQ(separated, 200);
}

TEST(Streams, ParseSpecs) {
  const FieldContext& f3 = make_context(3);
  const SeriesStream s = streams::parse("lacunary + t^3 - 2*t^5", f3);
  EXPECT_EQ(s.label(), "lacunary+t^3-2*t^5");
  EXPECT_EQ(s.coefficient(3), f3.one());
  EXPECT_EQ(s.coefficient(5), f3.one());
  EXPECT_EQ(s.coefficient(6), f3.one());
  EXPECT_EQ(streams::parse("from-seed(11)", f3).coefficient(9),
            streams::from_seed(f3, 11).coefficient(9));
  EXPECT_EQ(streams::parse("lacunary-shift(2)+t", f3).coefficient(1), f3.one());
  EXPECT_THROW(streams::parse("nonsense", f3), SyntaxError);
  EXPECT_THROW(streams::parse("lacunary+", f3), SyntaxError);
  EXPECT_THROW(streams::parse("from-seed(", f3), SyntaxError);
}

TEST(Valuation, Examples) {
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::lacunary(f2)});
  EXPECT_EQ(v.valuate(P("x", f2)).value, ValuationValue::finite(1));
  EXPECT_EQ(v.valuate(P("1", f2)).value, ValuationValue::finite(0));
  EXPECT_EQ(v.valuate(P("y-x-x^2", f2)).value, ValuationValue::finite(6));
  EXPECT_EQ(v.valuate(P("y-x-x^2-x^6", f2)).value, ValuationValue::finite(24));
  EXPECT_EQ(v.valuate(P("y-x-x^2-x^6-x^24", f2)).value, ValuationValue::finite(120));
  const CertifiedValue zero = v.valuate(P("0", f2));
  EXPECT_TRUE(zero.value.is_infinite());
  EXPECT_EQ(zero.precision, 0u);
  EXPECT_EQ(v.valuate(R("x/x", f2)).value, ValuationValue::finite(0));
  EXPECT_EQ(v.valuate(R("1/x", f2)).value, ValuationValue::finite(-1));
}

TEST(Valuation, PrecisionEscalation) {
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::lacunary(f2)});
  const CertifiedValue cv = v.valuate(P("y-x-x^2-x^6-x^24", f2));
  EXPECT_EQ(cv.precision, 128u);
  const EmbeddingValuation capped(f2, {streams::lacunary(f2)}, {16, 64});
  try {
    capped.valuate(P("y-x-x^2-x^6-x^24", f2));
    FAIL();
  } catch (const PrecisionExhausted& e) {
    EXPECT_EQ(e.last_precision(), 64u);
  }
}

TEST(Valuation, AlgebraicStreamExhaustsPrecision) {
  // s = sum t^(2^j) satisfies s^2 = s - t over F_2.
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::geometric_gap(f2, 2)}, {16, 512});
  EXPECT_THROW(v.valuate(P("y^2+y+x", f2)), PrecisionExhausted);
}

TEST(Valuation, MatchesDenseOracle) {
  std::mt19937_64 rng(8);
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::lacunary(f2)});
  const auto s = factorial_gap_coeffs(800);
  for (int trial = 0; trial < 200; ++trial) {
    const MultiPoly f = random_nonzero_poly(f2, 2, 6, 6, rng);
    const auto oracle = dense_order(f, s, 2);
    ASSERT_TRUE(oracle.has_value());
    EXPECT_EQ(v.valuate(f).value, ValuationValue::finite(static_cast<std::int64_t>(*oracle)))
        << f.to_string();
  }
}

TEST(Valuation, Axioms) {
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {2u, 3u}) {
    const FieldContext& ctx = make_context(p);
    const EmbeddingValuation v(ctx, {streams::lacunary(ctx)});
    for (int trial = 0; trial < 100; ++trial) {
      const MultiPoly f = random_nonzero_poly(ctx, 2, 5, 5, rng);
      const MultiPoly g = random_nonzero_poly(ctx, 2, 5, 5, rng);
      const auto vf = v.valuate(f).value;
      const auto vg = v.valuate(g).value;
      EXPECT_EQ(v.valuate(f * g).value, ValuationValue::finite(vf.value() + vg.value()));
      const auto vs = v.valuate(f + g).value;
      EXPECT_GE(vs, std::min(vf, vg));
      if (vf != vg) {
        EXPECT_EQ(vs, std::min(vf, vg));
      }
      bool has_constant = false;
      for (const auto& t : f.terms()) has_constant = has_constant || t.monomial.is_one();
      if (!has_constant) {
        EXPECT_GE(vf, ValuationValue::finite(1));
      }
    }
  }
}

TEST(Valuation, Determinism) {
  const FieldContext& f3 = make_context(3);
  const EmbeddingValuation v(f3, {streams::from_seed(f3, 5)});
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const MultiPoly f = random_nonzero_poly(f3, 2, 4, 4, rng);
    const CertifiedValue a = v.valuate(f);
    const CertifiedValue b = v.valuate(f);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.precision, b.precision);
  }
}

TEST(Valuation, ConcurrentReaders) {
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::lacunary(f2)});
  const MultiPoly f = P("y-x-x^2-x^6-x^24", f2);
  std::vector<std::future<CertifiedValue>> jobs;
  for (int i = 0; i < 8; ++i) jobs.push_back(std::async(std::launch::async, [&] { return v.valuate(f); }));
  for (auto& j : jobs) EXPECT_EQ(j.get().value, ValuationValue::finite(120));
}

TEST(Valuation, RingAndResidue) {
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::lacunary(f2)});
  EXPECT_FALSE(v.in_ring(R("1/x", f2)));
  EXPECT_TRUE(v.in_ring(R("y/x", f2)));
  EXPECT_EQ(v.residue(R("(y-x-x^2)/x^6", f2)), f2.one());
  EXPECT_EQ(v.residue(R("x", f2)), f2.zero());
  EXPECT_THROW(v.residue(R("1/x", f2)), Error);

  const FieldContext& f5 = make_context(5);
  const EmbeddingValuation w(f5, {streams::lacunary(f5)});
  EXPECT_EQ(w.residue(RationalFn(P("3", f5))), f5.from_int(3));
  EXPECT_EQ(w.residue(R("2*y/(3*x)", f5)), f5.from_int(4));
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const MultiPoly a = random_nonzero_poly(f5, 2, 4, 4, rng);
    const MultiPoly b = random_nonzero_poly(f5, 2, 4, 4, rng);
    const MultiPoly c = random_nonzero_poly(f5, 2, 4, 4, rng);
    const MultiPoly d = random_nonzero_poly(f5, 2, 4, 4, rng);
    const auto shift = [&](const MultiPoly& num, const MultiPoly& den) {
      const auto k = w.valuate(num).value.value() - w.valuate(den).value.value();
      const MultiPoly xk = P("x", f5).pow(static_cast<std::uint64_t>(std::abs(k)));
      return k >= 0 ? RationalFn(num, den * xk) : RationalFn(num * xk, den);
    };
    const RationalFn r = shift(a, b);
    const RationalFn s = shift(c, d);
    EXPECT_EQ(w.residue(r * s), w.residue(r) * w.residue(s));
  }
}

TEST(Valuation, NVariables) {
  const FieldContext& f2 = make_context(2);
  const EmbeddingValuation v(f2, {streams::lacunary(f2), streams::from_seed(f2, 3)});
  EXPECT_EQ(v.nvars(), 3u);
  EXPECT_EQ(v.valuate(P("x", f2, 3)).value, ValuationValue::finite(1));
  const auto z = streams::from_seed(f2, 3);
  std::size_t first = 1;
  while (z.coefficient(first).is_zero()) ++first;
  EXPECT_EQ(v.valuate(P("z", f2, 3)).value, ValuationValue::finite(static_cast<std::int64_t>(first)));
}

TEST(Valuation, RejectsUnitStreams) {
  const FieldContext& f2 = make_context(2);
  EXPECT_THROW(EmbeddingValuation(f2, {streams::parse("lacunary+t^0", f2)}), Error);
}

TEST(Distinguishing, WorkedExample) {
  const FieldContext& f2 = make_context(2);
  const SeriesStream p = streams::lacunary(f2);
  const SeriesStream q = streams::parse("lacunary+t^3", f2);
  const DistinguishingFraction df = distinguishing_fraction(p, q);
  EXPECT_EQ(df.index, 3u);
  EXPECT_EQ(df.display(), "x^3/(y - x - x^2)");
  EXPECT_EQ(df.fraction, R("x^3/(y-x-x^2)", f2));
  const EmbeddingValuation vp(f2, {p});
  const EmbeddingValuation vq(f2, {q});
  EXPECT_EQ(vp.valuate(P("y-x-x^2", f2)).value, ValuationValue::finite(6));
  EXPECT_EQ(vq.valuate(P("y-x-x^2", f2)).value, ValuationValue::finite(3));
  EXPECT_EQ(vq.valuate(df.fraction).value, ValuationValue::finite(0));
  EXPECT_EQ(vp.valuate(df.fraction).value, ValuationValue::finite(-3));
  EXPECT_TRUE(vq.in_ring(df.fraction));
  EXPECT_FALSE(vp.in_ring(df.fraction));
}

TEST(Distinguishing, StreamsAgree) {
  const FieldContext& f2 = make_context(2);
  try {
    distinguishing_fraction(streams::lacunary(f2), streams::lacunary(f2), 256);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::StreamsAgree);
  }
}

TEST(Distinguishing, CatalogPairs) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldContext& ctx = make_context(p);
    const auto catalog = streams::catalog(ctx);
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      for (std::size_t j = 0; j < catalog.size(); ++j) {
        if (i == j) continue;
        const DistinguishingFraction df = distinguishing_fraction(catalog[i], catalog[j]);
        const EmbeddingValuation vi(ctx, {catalog[i]});
        const EmbeddingValuation vj(ctx, {catalog[j]});
        EXPECT_FALSE(vi.in_ring(df.fraction)) << catalog[i].label() << " vs " << catalog[j].label();
        EXPECT_TRUE(vj.in_ring(df.fraction)) << catalog[i].label() << " vs " << catalog[j].label();
      }
    }
  }
}

}  // namespace
}  // namespace charp
