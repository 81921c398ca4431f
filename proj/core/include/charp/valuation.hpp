#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "charp/polynomial.hpp"
#include "charp/series.hpp"

namespace charp {

// A power series in k[[t]] given by a pure coefficient oracle n -> a_n.
class SeriesStream {
 public:
  using Oracle = std::function<FieldElement(std::size_t)>;

  // Whether the series is taken to be transcendental over k(t). Nothing in
  // the library proves transcendence; KnownAlgebraic records an explicit
  // relation (for example sum t^(p^j), which satisfies s^p = s - t).
  enum class Transcendence { Assumed, KnownAlgebraic };

  SeriesStream(const FieldContext& ctx, std::string label, Oracle oracle,
               Transcendence transcendence);

  const FieldContext& context() const noexcept { return *ctx_; }
  const std::string& label() const noexcept { return label_; }
  Transcendence transcendence() const noexcept { return transcendence_; }

  FieldElement coefficient(std::size_t n) const { return oracle_(n); }
  bool nonunit() const { return coefficient(0).is_zero(); }
  TruncatedSeries truncate(std::size_t precision) const;

  // This series plus c * t^k.
  SeriesStream perturbed(const FieldElement& c, std::size_t k) const;

 private:
  const FieldContext* ctx_;
  std::string label_;
  Oracle oracle_;
  Transcendence transcendence_;
};

namespace streams {

// The series t.
SeriesStream variable(const FieldContext& ctx);
// a_n = 1 iff n = j! for some j >= 1.
SeriesStream lacunary(const FieldContext& ctx);
// a_n = 1 iff n = j! + shift for some j >= 1.
SeriesStream lacunary_shift(const FieldContext& ctx, std::size_t shift);
// a_n = 1 iff n = base^j for some j >= 0. Algebraic when base is a power of p.
SeriesStream geometric_gap(const FieldContext& ctx, std::uint64_t base);
// a_0 = 0, other coefficients pseudorandom and determined by (seed, n).
SeriesStream from_seed(const FieldContext& ctx, std::uint64_t seed);

// lacunary, lacunary-shift(1), geometric-gap(2), from-seed(7), from-seed(11).
std::vector<SeriesStream> catalog(const FieldContext& ctx);

// Named stream followed by perturbations, e.g. "lacunary+t^3",
// "from-seed(7)-2*t^5". Throws SyntaxError.
SeriesStream parse(std::string_view spec, const FieldContext& ctx);

}  // namespace streams

// Element of Z together with +infinity (the value of 0).
class ValuationValue {
 public:
  static ValuationValue infinity() noexcept { return ValuationValue(true, 0); }
  static ValuationValue finite(std::int64_t v) noexcept { return ValuationValue(false, v); }

  bool is_infinite() const noexcept { return infinite_; }
  // Only meaningful when finite.
  std::int64_t value() const noexcept { return value_; }

  friend bool operator==(const ValuationValue&, const ValuationValue&) = default;
  friend std::strong_ordering operator<=>(const ValuationValue& a, const ValuationValue& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

 private:
  ValuationValue(bool infinite, std::int64_t v) : infinite_(infinite), value_(v) {}
  bool infinite_;
  std::int64_t value_;
};

// A value together with the truncation level at which it was read off; the
// order lies strictly below that precision. Zero reports precision 0.
struct CertifiedValue {
  ValuationValue value;
  std::size_t precision;
};

struct ValuationOptions {
  std::size_t initial_precision = 16;
  std::size_t precision_cap = 4096;
};

// The discrete valuation on k(x_1..x_n) pulled back from the t-adic valuation
// along x_1 -> t, x_i -> s_i(t). Its ring is k[[t]] intersected with the
// function field.
class EmbeddingValuation {
 public:
  // images[i] is the image of x_(i+2) and must be a nonunit.
  EmbeddingValuation(const FieldContext& ctx, std::vector<SeriesStream> images,
                     ValuationOptions options = {});

  const FieldContext& context() const noexcept { return *ctx_; }
  std::size_t nvars() const noexcept { return streams_.size(); }
  const SeriesStream& stream(std::size_t var) const { return streams_.at(var); }
  const ValuationOptions& options() const noexcept { return options_; }

  TruncatedSeries image(std::size_t var, std::size_t precision) const;

  // Doubles the precision from initial_precision until the order of the image
  // is certified; PrecisionExhausted at the cap.
  CertifiedValue valuate(const MultiPoly& f) const;
  CertifiedValue valuate(const RationalFn& r) const;

  bool in_ring(const RationalFn& r) const;

  // Image in the residue field k. NotInRing for negative value; elements of
  // positive value have residue 0.
  FieldElement residue(const RationalFn& r) const;

 private:
  struct PrefixCache;
  struct Certified {
    TruncatedSeries series;
    std::size_t order;
  };
  Certified certified_image(const MultiPoly& f) const;
  void check_ring(const MultiPoly& f) const;

  const FieldContext* ctx_;
  std::vector<SeriesStream> streams_;
  std::vector<std::shared_ptr<PrefixCache>> caches_;
  ValuationOptions options_;
};

struct DistinguishingFraction {
  std::size_t index;                 // first i with a_i != b_i
  std::vector<FieldElement> prefix;  // a_0..a_i from the first stream
  RationalFn fraction;               // x^i / (y - sum_{n<=i} a_n x^n)

  // "x^3/(y - x - x^2)".
  std::string display() const;
};

// Separates the valuation rings of two embeddings into k(x, y): the fraction
// lies in the ring of `q` but not in the ring of `p`. StreamsAgree when the
// streams match below `cap`.
DistinguishingFraction distinguishing_fraction(const SeriesStream& p, const SeriesStream& q,
                                               std::size_t cap = 4096);

}  // namespace charp
