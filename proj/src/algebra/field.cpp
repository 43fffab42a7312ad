#include "ncguard/algebra/field.hpp"

#include <array>
#include <bit>
#include <mutex>

#include "ncguard/errors.hpp"

namespace ncguard {
namespace {

// Low-weight irreducible polynomials, index = width. Widths other than 8 use
// the primitive polynomials common to erasure-coding libraries; width 8 uses
// the AES (Rijndael) polynomial, which is irreducible but not primitive.
constexpr std::array<std::uint32_t, 17> kPolynomials = {
    0,       0,       0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11B,
    0x211,   0x409,   0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b, unsigned width, std::uint32_t poly) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1U << width)) a ^= poly;
  }
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are a deterministic witness set for n < 3.3e24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint32_t Field::default_polynomial(unsigned width) {
  if (width < 2 || width > 16) throw UsageError("binary field width must be in [2, 16]");
  return kPolynomials[width];
}

std::shared_ptr<const Field> Field::binary(unsigned width) {
  const std::uint32_t poly = default_polynomial(width);

  static std::array<std::shared_ptr<const Field>, 17> cache;
  static std::array<std::once_flag, 17> once;
  std::call_once(once[width], [&] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::binary_extension;
    f->order_ = std::uint64_t{1} << width;
    f->poly_ = poly;
    f->symbol_bits_ = width;

    const std::uint32_t q = 1U << width;
    const std::uint32_t group_order = q - 1;
    // Smallest element whose powers reach every nonzero element.
    std::vector<std::uint32_t> exp(2 * static_cast<std::size_t>(group_order));
    std::vector<std::uint32_t> log(q, 0);
    for (std::uint32_t candidate = 2; candidate < q; ++candidate) {
      std::vector<bool> seen(q, false);
      std::uint32_t x = 1;
      bool full = true;
      for (std::uint32_t i = 0; i < group_order; ++i) {
        if (seen[x]) {
          full = false;
          break;
        }
        seen[x] = true;
        exp[i] = x;
        log[x] = i;
        x = poly_mul(x, candidate, width, poly);
      }
      if (full && x == 1) {
        f->generator_ = candidate;
        break;
      }
    }
    if (f->generator_ == 0) throw UsageError("reduction polynomial is not irreducible");
    for (std::uint32_t i = 0; i < group_order; ++i) exp[i + group_order] = exp[i];
    f->exp_ = std::move(exp);
    f->log_ = std::move(log);
    cache[width] = std::move(f);
  });
  return cache[width];
}

std::shared_ptr<const Field> Field::prime(std::uint64_t order) {
  if (order >= (std::uint64_t{1} << 63)) throw UsageError("prime field order must be below 2^63");
  if (!is_prime_u64(order)) throw UsageError("prime field order " + std::to_string(order) + " is not prime");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::prime;
  f->order_ = order;
  f->symbol_bits_ = static_cast<unsigned>(std::bit_width(order - 1));
  return f;
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw DomainError("inverse of zero");
  if (kind_ == FieldKind::binary_extension) {
    const std::uint32_t group_order = static_cast<std::uint32_t>(order_ - 1);
    return exp_[(group_order - log_[a]) % group_order];
  }
  return powmod(a, order_ - 2, order_);
}

Symbol Field::pow(Symbol a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (kind_ == FieldKind::binary_extension) {
    const std::uint64_t group_order = order_ - 1;
    return exp_[static_cast<std::size_t>((static_cast<unsigned __int128>(log_[a]) * (e % group_order)) % group_order)];
  }
  return powmod(a, e, order_);
}

Symbol Field::random(Rng& rng) const {
  return std::uniform_int_distribution<Symbol>(0, order_ - 1)(rng);
}

Symbol Field::random_nonzero(Rng& rng) const {
  return std::uniform_int_distribution<Symbol>(1, order_ - 1)(rng);
}

std::string Field::name() const {
  if (kind_ == FieldKind::binary_extension) return "GF(2^" + std::to_string(symbol_bits_) + ")";
  return "GF(" + std::to_string(order_) + ")";
}

bool same_field(const FieldSpec& a, const FieldSpec& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

FieldElement::FieldElement(FieldSpec field, Symbol value) : field_(std::move(field)), value_(value) {
  if (!field_) throw UsageError("field element needs a field");
  if (!field_->contains(value_)) throw UsageError("symbol out of range for " + field_->name());
}

namespace {
const Field& common(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.spec(), b.spec())) {
    throw UsageError("mismatched fields: " + a.spec()->name() + " vs " + b.spec()->name());
  }
  return *a.spec();
}
}  // namespace

FieldElement field_add(const FieldElement& a, const FieldElement& b) {
  return {a.spec(), common(a, b).add(a.value(), b.value())};
}

FieldElement field_sub(const FieldElement& a, const FieldElement& b) {
  return {a.spec(), common(a, b).sub(a.value(), b.value())};
}

FieldElement field_mul(const FieldElement& a, const FieldElement& b) {
  return {a.spec(), common(a, b).mul(a.value(), b.value())};
}

FieldElement field_inv(const FieldElement& a) { return {a.spec(), a.spec()->inv(a.value())}; }

FieldElement field_pow(const FieldElement& a, std::uint64_t e) { return {a.spec(), a.spec()->pow(a.value(), e)}; }

}  // namespace ncguard
