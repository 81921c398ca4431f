#include "charp/valuation.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <shared_mutex>

#include "charp/error.hpp"

namespace charp {

// ---------------------------------------------------------------------------
// SeriesStream

SeriesStream::SeriesStream(const FieldContext& ctx, std::string label, Oracle oracle,
                           Transcendence transcendence)
    : ctx_(&ctx), label_(std::move(label)), oracle_(std::move(oracle)),
      transcendence_(transcendence) {}

TruncatedSeries SeriesStream::truncate(std::size_t precision) const {
  std::vector<FieldElement> coeffs;
  coeffs.reserve(precision);
  for (std::size_t n = 0; n < precision; ++n) coeffs.push_back(oracle_(n));
  return TruncatedSeries(*ctx_, std::move(coeffs));
}

SeriesStream SeriesStream::perturbed(const FieldElement& c, std::size_t k) const {
  std::string suffix = "+";
  if (!c.is_one() || k == 0) suffix += c.to_string() + (k == 0 ? "" : "*");
  if (k == 1) suffix += "t";
  if (k > 1) suffix += "t^" + std::to_string(k);
  Oracle base = oracle_;
  return SeriesStream(*ctx_, label_ + suffix,
                      [base, c, k](std::size_t n) { return n == k ? base(n) + c : base(n); },
                      transcendence_);
}

namespace streams {

namespace {

bool is_shifted_factorial(std::size_t n, std::size_t shift) {
  if (n < shift) return false;
  const std::size_t target = n - shift;
  std::size_t f = 1;
  for (std::size_t j = 1;; ++j) {
    if (j > 1) {
      if (f > target / j) return false;
      f *= j;
    }
    if (f == target) return true;
    if (f > target) return false;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_power_of(std::uint64_t value, std::uint64_t base) {
  if (value == 0) return false;
  while (value % base == 0) value /= base;
  return value == 1;
}

}  // namespace

SeriesStream variable(const FieldContext& ctx) {
  return SeriesStream(ctx, "t",
                      [&ctx](std::size_t n) { return n == 1 ? ctx.one() : ctx.zero(); },
                      SeriesStream::Transcendence::KnownAlgebraic);
}

SeriesStream lacunary(const FieldContext& ctx) {
  return SeriesStream(ctx, "lacunary",
                      [&ctx](std::size_t n) {
                        return n >= 1 && is_shifted_factorial(n, 0) ? ctx.one() : ctx.zero();
                      },
                      SeriesStream::Transcendence::Assumed);
}

SeriesStream lacunary_shift(const FieldContext& ctx, std::size_t shift) {
  return SeriesStream(ctx, "lacunary-shift(" + std::to_string(shift) + ")",
                      [&ctx, shift](std::size_t n) {
                        return n >= 1 + shift && is_shifted_factorial(n, shift) ? ctx.one()
                                                                                : ctx.zero();
                      },
                      SeriesStream::Transcendence::Assumed);
}

SeriesStream geometric_gap(const FieldContext& ctx, std::uint64_t base) {
  if (base < 2) throw Error(ErrorKind::InvalidArgument, "geometric-gap base must be at least 2");
  const auto status = is_power_of(base, ctx.characteristic())
                          ? SeriesStream::Transcendence::KnownAlgebraic
                          : SeriesStream::Transcendence::Assumed;
  return SeriesStream(ctx, "geometric-gap(" + std::to_string(base) + ")",
                      [&ctx, base](std::size_t n) {
                        return is_power_of(n, base) ? ctx.one() : ctx.zero();
                      },
                      status);
}

SeriesStream from_seed(const FieldContext& ctx, std::uint64_t seed) {
  return SeriesStream(ctx, "from-seed(" + std::to_string(seed) + ")",
                      [&ctx, seed](std::size_t n) {
                        if (n == 0) return ctx.zero();
                        std::vector<std::uint32_t> residues(ctx.degree());
                        std::uint64_t state = splitmix64(seed) ^ splitmix64(n);
                        for (auto& r : residues) {
                          state = splitmix64(state);
                          r = static_cast<std::uint32_t>(state % ctx.characteristic());
                        }
                        return ctx.from_residues(residues);
                      },
                      SeriesStream::Transcendence::Assumed);
}

std::vector<SeriesStream> catalog(const FieldContext& ctx) {
  return {lacunary(ctx), lacunary_shift(ctx, 1), geometric_gap(ctx, 2), from_seed(ctx, 7),
          from_seed(ctx, 11)};
}

namespace {

class StreamParser {
 public:
  StreamParser(std::string_view text, const FieldContext& ctx) : text_(text), ctx_(ctx) {}

  SeriesStream parse() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) {
      // A '-' directly after the name starts a perturbation, not the name.
      if (text_[pos_] == '-' && (pos_ + 1 >= text_.size() ||
                                 !std::isalpha(static_cast<unsigned char>(text_[pos_ + 1])) ||
                                 text_[pos_ + 1] == 't')) {
        break;
      }
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    std::optional<std::uint64_t> arg;
    if (accept('(')) {
      arg = number();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
    }
    SeriesStream stream = named(name, arg, start);
    std::string label = stream.label();
    for (;;) {
      skip_space();
      if (pos_ == text_.size()) break;
      const std::size_t term_start = pos_;
      bool negative = false;
      if (accept('-')) {
        negative = true;
      } else if (!accept('+')) {
        throw SyntaxError(pos_, "expected '+' or '-'");
      }
      skip_space();
      std::uint64_t coeff = 1;
      bool has_coeff = false;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        coeff = number();
        has_coeff = true;
      }
      std::size_t exponent = 0;
      if (has_coeff && !accept('*')) {
        exponent = 0;
      } else if (accept('t')) {
        exponent = 1;
        if (accept('^')) exponent = number();
      } else {
        throw SyntaxError(pos_, "expected 't'");
      }
      FieldElement c = ctx_.from_int(static_cast<std::int64_t>(coeff % ctx_.characteristic()));
      if (negative) c = -c;
      label += std::string(text_.substr(term_start, pos_ - term_start));
      stream = stream.perturbed(c, exponent);
    }
    label.erase(std::remove_if(label.begin(), label.end(),
                               [](unsigned char ch) { return std::isspace(ch); }),
                label.end());
    SeriesStream base = stream;
    return SeriesStream(ctx_, label, [base](std::size_t n) { return base.coefficient(n); },
                        base.transcendence());
  }

 private:
  SeriesStream named(const std::string& name, std::optional<std::uint64_t> arg,
                     std::size_t at) {
    auto require = [&](bool wanted) {
      if (wanted != arg.has_value()) {
        throw SyntaxError(at, wanted ? "stream '" + name + "' needs an argument"
                                     : "stream '" + name + "' takes no argument");
      }
    };
    if (name == "lacunary") {
      require(false);
      return lacunary(ctx_);
    }
    if (name == "lacunary-shift") {
      require(true);
      return lacunary_shift(ctx_, *arg);
    }
    if (name == "geometric-gap") {
      require(true);
      if (*arg < 2) throw SyntaxError(at, "geometric-gap base must be at least 2");
      return geometric_gap(ctx_, *arg);
    }
    if (name == "from-seed") {
      require(true);
      return from_seed(ctx_, *arg);
    }
    if (name == "t") {
      require(false);
      return variable(ctx_);
    }
    throw SyntaxError(at, "unknown stream '" + name + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint64_t number() {
    skip_space();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (UINT64_MAX - 9) / 10) throw SyntaxError(start, "number too large");
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError(pos_, "expected a number");
    return value;
  }

  std::string_view text_;
  const FieldContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

SeriesStream parse(std::string_view spec, const FieldContext& ctx) {
  return StreamParser(spec, ctx).parse();
}

}  // namespace streams

// ---------------------------------------------------------------------------
// ValuationValue

std::string ValuationValue::to_string() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

// ---------------------------------------------------------------------------
// EmbeddingValuation

// Grow-only prefix of a stream's coefficients, shared across copies of the
// valuation and safe for concurrent readers.
struct EmbeddingValuation::PrefixCache {
  std::shared_mutex mutex;
  std::vector<FieldElement> coeffs;
};

EmbeddingValuation::EmbeddingValuation(const FieldContext& ctx, std::vector<SeriesStream> images,
                                       ValuationOptions options)
    : ctx_(&ctx), options_(options) {
  if (options_.initial_precision == 0 || options_.precision_cap < options_.initial_precision) {
    throw Error(ErrorKind::InvalidArgument,
                "need 1 <= initial precision <= precision cap");
  }
  streams_.push_back(streams::variable(ctx));
  for (auto& s : images) {
    if (&s.context() != ctx_) {
      throw Error(ErrorKind::ContextMismatch, "stream '" + s.label() + "' over a different field");
    }
    if (!s.nonunit()) {
      throw Error(ErrorKind::InvalidArgument, "stream '" + s.label() + "' is a unit (a_0 != 0)");
    }
    bool nonzero = false;
    for (std::size_t n = 0; n < options_.precision_cap && !nonzero; ++n) {
      nonzero = !s.coefficient(n).is_zero();
    }
    if (!nonzero) {
      throw Error(ErrorKind::InvalidArgument,
                  "stream '" + s.label() + "' vanishes below the precision cap");
    }
    streams_.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    caches_.push_back(std::make_shared<PrefixCache>());
  }
}

TruncatedSeries EmbeddingValuation::image(std::size_t var, std::size_t precision) const {
  PrefixCache& cache = *caches_.at(var);
  {
    std::shared_lock lock(cache.mutex);
    if (cache.coeffs.size() >= precision) {
      return TruncatedSeries(*ctx_, {cache.coeffs.begin(),
                                     cache.coeffs.begin() + static_cast<std::ptrdiff_t>(precision)});
    }
  }
  std::unique_lock lock(cache.mutex);
  for (std::size_t n = cache.coeffs.size(); n < precision; ++n) {
    cache.coeffs.push_back(streams_[var].coefficient(n));
  }
  return TruncatedSeries(*ctx_, {cache.coeffs.begin(),
                                 cache.coeffs.begin() + static_cast<std::ptrdiff_t>(precision)});
}

void EmbeddingValuation::check_ring(const MultiPoly& f) const {
  if (&f.context() != ctx_ || f.nvars() != nvars()) {
    throw Error(ErrorKind::ContextMismatch, "polynomial not in the valuation's function field");
  }
}

EmbeddingValuation::Certified EmbeddingValuation::certified_image(const MultiPoly& f) const {
  std::size_t precision = options_.initial_precision;
  for (;;) {
    std::vector<TruncatedSeries> images;
    images.reserve(nvars());
    for (std::size_t v = 0; v < nvars(); ++v) images.push_back(image(v, precision));
    TruncatedSeries s = substitute_series(f, images, precision);
    if (const auto ord = s.order()) return {std::move(s), *ord};
    if (precision >= options_.precision_cap) throw PrecisionExhausted(precision);
    precision = std::min(2 * precision, options_.precision_cap);
  }
}

CertifiedValue EmbeddingValuation::valuate(const MultiPoly& f) const {
  check_ring(f);
  if (f.is_zero()) return {ValuationValue::infinity(), 0};
  const Certified c = certified_image(f);
  return {ValuationValue::finite(static_cast<std::int64_t>(c.order)), c.series.precision()};
}

CertifiedValue EmbeddingValuation::valuate(const RationalFn& r) const {
  if (r.is_zero()) {
    check_ring(r.num());
    return {ValuationValue::infinity(), 0};
  }
  const CertifiedValue num = valuate(r.num());
  const CertifiedValue den = valuate(r.den());
  return {ValuationValue::finite(num.value.value() - den.value.value()),
          std::max(num.precision, den.precision)};
}

bool EmbeddingValuation::in_ring(const RationalFn& r) const {
  return valuate(r).value >= ValuationValue::finite(0);
}

FieldElement EmbeddingValuation::residue(const RationalFn& r) const {
  check_ring(r.num());
  if (r.is_zero()) return ctx_->zero();
  const Certified num = certified_image(r.num());
  const Certified den = certified_image(r.den());
  if (num.order < den.order) {
    throw Error(ErrorKind::NotInRing, "element has negative value; no residue");
  }
  if (num.order > den.order) return ctx_->zero();
  return num.series[num.order] / den.series[den.order];
}

// ---------------------------------------------------------------------------
// Distinguishing fraction

std::string DistinguishingFraction::display() const {
  std::string num = index == 0 ? "1" : index == 1 ? "x" : "x^" + std::to_string(index);
  std::string den = "y";
  for (std::size_t n = 0; n < prefix.size(); ++n) {
    const FieldElement& a = prefix[n];
    if (a.is_zero()) continue;
    std::string c = a.to_string();
    if (c.find('+') != std::string::npos) c = "(" + c + ")";
    std::string term;
    if (n == 0) {
      term = c;
    } else {
      term = a.is_one() ? "" : c + "*";
      term += n == 1 ? std::string("x") : "x^" + std::to_string(n);
    }
    den += " - " + term;
  }
  if (den == "y") return num + "/y";
  return num + "/(" + den + ")";
}

DistinguishingFraction distinguishing_fraction(const SeriesStream& p, const SeriesStream& q,
                                               std::size_t cap) {
  if (&p.context() != &q.context()) {
    throw Error(ErrorKind::ContextMismatch, "streams over different fields");
  }
  const FieldContext& ctx = p.context();
  std::vector<FieldElement> prefix;
  for (std::size_t i = 0; i < cap; ++i) {
    const FieldElement a = p.coefficient(i);
    prefix.push_back(a);
    if (a == q.coefficient(i)) continue;

    const MultiPoly x = MultiPoly::variable(ctx, 2, 0);
    const MultiPoly y = MultiPoly::variable(ctx, 2, 1);
    MultiPoly partial_sum(ctx, 2);
    for (std::size_t n = 0; n <= i; ++n) {
      partial_sum += MultiPoly::monomial(ctx, Monomial{static_cast<std::uint32_t>(n), 0}, prefix[n]);
    }
    RationalFn fraction(x.pow(i), y - partial_sum);
    return {i, std::move(prefix), std::move(fraction)};
  }
  throw Error(ErrorKind::StreamsAgree,
              "streams '" + p.label() + "' and '" + q.label() + "' agree below index " +
                  std::to_string(cap));
}

}  // namespace charp
