#pragma once

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncguard/algebra/field.hpp"

namespace ncguard {

using BigUint = boost::multiprecision::cpp_int;

/// base^exp mod modulus by left-to-right square-and-multiply.
/// Throws UsageError when modulus < 2.
std::uint64_t mod_exp(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);
BigUint mod_exp(const BigUint& base, const BigUint& exp, const BigUint& modulus);

/// Exact for inputs below 2^64, probabilistic (40 Miller-Rabin rounds) above.
bool is_probable_prime(const BigUint& n, Rng& rng);

/// Prime-order subgroup of Z_Q^*: modulus Q, subgroup order P | Q-1, and a
/// generator g of order P. Construct through `make` or one of the searches.
class GroupSpec {
 public:
  /// Validates primality of P and Q, P | Q-1, g != 1 and g^P = 1 (mod Q).
  static GroupSpec make(const BigUint& P, const BigUint& Q, const BigUint& g);

  const BigUint& subgroup_order() const { return P_; }
  const BigUint& modulus() const { return Q_; }
  const BigUint& generator() const { return g_; }

  /// Bit length of Q, i.e. ceil(log2 Q) for non-powers of two.
  unsigned modulus_bits() const;
  unsigned subgroup_bits() const;

  /// True once Q no longer fits a machine word and the multiprecision
  /// arithmetic path is required.
  bool slow_path() const { return !word_.has_value(); }

  struct Word {
    std::uint64_t P, Q, g;
  };
  /// Machine-word copy of the parameters when Q < 2^64.
  const std::optional<Word>& word() const { return word_; }

 private:
  GroupSpec() = default;
  BigUint P_, Q_, g_;
  std::optional<Word> word_;
};

/// Searches for primes P (bits_P bits) and Q (bits_Q bits) with P | Q-1 and
/// a generator of the order-P subgroup. Deterministic for a given rng state.
/// Requires bits_P >= 8 and bits_Q > bits_P.
GroupSpec make_group(unsigned bits_P, unsigned bits_Q, Rng& rng);

/// Safe-prime construction Q = 2P + 1 with P of bits_P bits.
GroupSpec make_safe_prime_group(unsigned bits_P, Rng& rng);

/// Desk-scale default: safe-prime group with a 32-bit subgroup order.
GroupSpec default_group(std::uint64_t seed = 1);

}  // namespace ncguard
