#include "charp/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <utility>

#include "charp/error.hpp"

namespace charp {

namespace {

using Poly = std::vector<std::uint64_t>;  // dense over F_p, low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = inv_mod(g.back(), p);
  while (f.size() > dg) {
    const std::uint64_t c = f.back() * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + (p - c) * g[i]) % p;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), mod, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), mod, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) result = poly_mulmod(result, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// f is irreducible of degree m iff gcd(f, u^(p^k) - u) = 1 for 1 <= k <= m/2.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  Poly h{0, 1};
  for (std::size_t k = 1; k <= m / 2; ++k) {
    h = poly_powmod(h, p, f, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, unsigned m) {
  // Candidates u^m + c(u) ordered by c read as a base-p counter with the
  // u^(m-1) digit most significant, i.e. lexicographic from the top down.
  for (std::uint64_t counter = 0;; ++counter) {
    Poly f(m + 1, 0);
    f[m] = 1;
    std::uint64_t c = counter;
    for (unsigned i = 0; i < m; ++i) {
      f[i] = c % p;
      c /= p;
    }
    if (m > 1 && f[0] == 0) continue;
    if (is_irreducible(f, p)) return {f.begin(), f.end()};
  }
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldContext::FieldContext(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)), order_(1) {
  for (unsigned i = 0; i < m; ++i) {
    if (order_ > UINT64_MAX / p) {
      order_ = 0;
      break;
    }
    order_ *= p;
  }
}

const FieldContext& make_context(std::uint32_t p, unsigned m) {
  if (!is_prime(p)) {
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  }
  if (p > kMaxCharacteristic) {
    throw Error(ErrorKind::InvalidArgument,
                "characteristic " + std::to_string(p) + " exceeds 2^20");
  }
  if (m < 1 || m > kMaxExtensionDegree) {
    throw Error(ErrorKind::DegreeTooLarge,
                "extension degree must lie in [1, 12], got " + std::to_string(m));
  }
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<FieldContext>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{p, m}];
  if (!slot) {
    slot.reset(new FieldContext(p, m, least_irreducible(p, m)));
  }
  return *slot;
}

FieldElement FieldContext::zero() const { return FieldElement(*this); }

FieldElement FieldContext::one() const { return from_int(1); }

FieldElement FieldContext::from_int(std::int64_t value) const {
  FieldElement a(*this);
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  a.r_[0] = static_cast<std::uint32_t>(r);
  return a;
}

FieldElement FieldContext::generator() const {
  if (m_ == 1) return zero();
  FieldElement a(*this);
  a.r_[1] = 1;
  return a;
}

FieldElement FieldContext::from_residues(std::span<const std::uint32_t> residues) const {
  if (residues.size() > m_) {
    throw Error(ErrorKind::InvalidArgument, "too many residues for field degree");
  }
  FieldElement a(*this);
  for (std::size_t i = 0; i < residues.size(); ++i) a.r_[i] = residues[i] % p_;
  return a;
}

std::vector<FieldElement> FieldContext::elements() const {
  if (order_ == 0 || order_ > (1u << 16)) {
    throw Error(ErrorKind::SizeBound, "field too large to enumerate");
  }
  std::vector<FieldElement> out;
  out.reserve(order_);
  for (std::uint64_t counter = 0; counter < order_; ++counter) {
    FieldElement a(*this);
    std::uint64_t c = counter;
    for (unsigned i = 0; i < m_; ++i) {
      a.r_[i] = static_cast<std::uint32_t>(c % p_);
      c /= p_;
    }
    out.push_back(a);
  }
  return out;
}

std::string FieldContext::modulus_string() const {
  std::string out;
  for (unsigned i = m_ + 1; i-- > 0;) {
    const std::uint32_t c = modulus_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i > 0 && c != 1) out += "*";
    if (i == 1) out += "u";
    if (i > 1) out += "u^" + std::to_string(i);
  }
  return out;
}

void FieldElement::check_same(const FieldElement& other) const {
  if (ctx_ != other.ctx_) {
    throw Error(ErrorKind::ContextMismatch, "field elements from different fields");
  }
}

bool FieldElement::is_zero() const noexcept {
  for (unsigned i = 0; i < ctx_->degree(); ++i) {
    if (r_[i] != 0) return false;
  }
  return true;
}

bool FieldElement::is_one() const noexcept {
  if (r_[0] != 1) return false;
  for (unsigned i = 1; i < ctx_->degree(); ++i) {
    if (r_[i] != 0) return false;
  }
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement out(*ctx_);
  const std::uint32_t p = ctx_->characteristic();
  for (unsigned i = 0; i < ctx_->degree(); ++i) out.r_[i] = r_[i] == 0 ? 0 : p - r_[i];
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  check_same(rhs);
  const std::uint32_t p = ctx_->characteristic();
  for (unsigned i = 0; i < ctx_->degree(); ++i) {
    const std::uint32_t s = r_[i] + rhs.r_[i];
    r_[i] = s >= p ? s - p : s;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  check_same(rhs);
  const std::uint32_t p = ctx_->characteristic();
  for (unsigned i = 0; i < ctx_->degree(); ++i) {
    r_[i] = r_[i] >= rhs.r_[i] ? r_[i] - rhs.r_[i] : r_[i] + p - rhs.r_[i];
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  check_same(rhs);
  const std::uint64_t p = ctx_->characteristic();
  const unsigned m = ctx_->degree();
  if (m == 1) {
    r_[0] = static_cast<std::uint32_t>(std::uint64_t{r_[0]} * rhs.r_[0] % p);
    return *this;
  }
  std::array<std::uint64_t, 2 * kMaxExtensionDegree - 1> prod{};
  for (unsigned i = 0; i < m; ++i) {
    if (r_[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      prod[i + j] += std::uint64_t{r_[i]} * rhs.r_[j] % p;
    }
  }
  for (auto& c : prod) c %= p;
  const auto mu = ctx_->modulus();
  for (unsigned k = 2 * m - 2; k >= m; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned i = 0; i < m; ++i) {
      prod[k - m + i] = (prod[k - m + i] + (p - mu[i]) * c) % p;
    }
  }
  for (unsigned i = 0; i < m; ++i) r_[i] = static_cast<std::uint32_t>(prod[i]);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  check_same(rhs);
  return *this *= rhs.inverse();
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
  FieldElement result = ctx_->one();
  FieldElement base = *this;
  for (; exponent > 0; exponent >>= 1) {
    if (exponent & 1) result *= base;
    if (exponent > 1) base *= base;
  }
  return result;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
  const std::uint64_t p = ctx_->characteristic();
  if (ctx_->degree() == 1) {
    FieldElement out(*ctx_);
    out.r_[0] = static_cast<std::uint32_t>(inv_mod(r_[0], p));
    return out;
  }
  // a^-1 = (a^p * a^(p^2) * ... * a^(p^(m-1))) / N(a), with N(a) in F_p.
  FieldElement conj_product = ctx_->one();
  FieldElement conj = *this;
  for (unsigned k = 1; k < ctx_->degree(); ++k) {
    conj = conj.pow(p);
    conj_product *= conj;
  }
  const FieldElement norm = *this * conj_product;
  FieldElement scale(*ctx_);
  scale.r_[0] = static_cast<std::uint32_t>(inv_mod(norm.r_[0], p));
  return conj_product * scale;
}

std::string FieldElement::to_string() const {
  const unsigned m = ctx_->degree();
  if (m == 1) return std::to_string(r_[0]);
  std::string out;
  for (unsigned i = m; i-- > 0;) {
    const std::uint32_t c = r_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += i == 1 ? std::string("u") : "u^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) {
  return os << a.to_string();
}

FieldElement frobenius_pow(const FieldElement& a, std::uint64_t k) {
  const FieldContext& ctx = a.context();
  k %= ctx.degree();
  FieldElement out = a;
  for (std::uint64_t i = 0; i < k; ++i) out = out.pow(ctx.characteristic());
  return out;
}

FieldElement pth_root(const FieldElement& a, std::uint64_t k) {
  // Frobenius has order m, so its k-th inverse is its (m - k mod m)-th power.
  const unsigned m = a.context().degree();
  return frobenius_pow(a, (m - k % m) % m);
}

}  // namespace charp
