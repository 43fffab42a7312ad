#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ncguard {

/// Raw field symbol. Always a reduced representative in [0, q).
using Symbol = std::uint64_t;

/// Seeded random source used throughout the library.
using Rng = std::mt19937_64;

enum class FieldKind { binary_extension, prime };

/// Immutable description of a finite field GF(q) together with the tables
/// needed to do arithmetic in it.
///
/// Binary-extension fields GF(2^w), 2 <= w <= 16, use a fixed irreducible
/// polynomial per width (the AES polynomial x^8+x^4+x^3+x+1 for w = 8) and
/// log/antilog tables. Prime fields GF(q) support any prime q < 2^63.
///
/// Instances are shared through `FieldSpec` and never mutated after
/// construction, so the same field may be used from several threads.
class Field {
 public:
  static std::shared_ptr<const Field> binary(unsigned width);
  static std::shared_ptr<const Field> prime(std::uint64_t order);

  /// The irreducible polynomial used for GF(2^w), including the x^w term.
  static std::uint32_t default_polynomial(unsigned width);

  FieldKind kind() const { return kind_; }
  std::uint64_t order() const { return order_; }
  /// Reduction polynomial for binary fields, 0 for prime fields.
  std::uint32_t polynomial() const { return poly_; }
  /// ceil(log2 q): wire size of one symbol.
  unsigned symbol_bits() const { return symbol_bits_; }
  /// Multiplicative generator found when the tables were built (binary only).
  Symbol generator() const { return generator_; }

  bool contains(Symbol a) const { return a < order_; }

  Symbol add(Symbol a, Symbol b) const {
    if (kind_ == FieldKind::binary_extension) return a ^ b;
    const Symbol s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  Symbol neg(Symbol a) const {
    if (kind_ == FieldKind::binary_extension || a == 0) return a;
    return order_ - a;
  }
  Symbol sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

  Symbol mul(Symbol a, Symbol b) const {
    if (kind_ == FieldKind::binary_extension) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return static_cast<Symbol>((static_cast<unsigned __int128>(a) * b) % order_);
  }

  /// Throws DomainError for a == 0.
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  /// Square-and-multiply exponentiation with the convention 0^0 = 1.
  Symbol pow(Symbol a, std::uint64_t e) const;

  /// Uniform draw from the whole field, zero included.
  Symbol random(Rng& rng) const;
  /// Uniform draw from the nonzero elements.
  Symbol random_nonzero(Rng& rng) const;

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.order_ == b.order_ && a.poly_ == b.poly_;
  }

 private:
  Field() = default;

  FieldKind kind_ = FieldKind::prime;
  std::uint64_t order_ = 0;
  std::uint32_t poly_ = 0;
  unsigned symbol_bits_ = 0;
  Symbol generator_ = 0;
  // Binary fields only. exp_ is doubled so mul never reduces the exponent sum.
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldSpec = std::shared_ptr<const Field>;

bool same_field(const FieldSpec& a, const FieldSpec& b);

/// A symbol tagged with the field it lives in. Mixing elements of different
/// fields raises UsageError.
class FieldElement {
 public:
  FieldElement(FieldSpec field, Symbol value);

  Symbol value() const { return value_; }
  const FieldSpec& spec() const { return field_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.value_ == b.value_ && same_field(a.field_, b.field_);
  }

 private:
  FieldSpec field_;
  Symbol value_;
};

FieldElement field_add(const FieldElement& a, const FieldElement& b);
FieldElement field_sub(const FieldElement& a, const FieldElement& b);
FieldElement field_mul(const FieldElement& a, const FieldElement& b);
FieldElement field_inv(const FieldElement& a);
FieldElement field_pow(const FieldElement& a, std::uint64_t e);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return field_add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return field_sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return field_mul(a, b); }

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

}  // namespace ncguard
