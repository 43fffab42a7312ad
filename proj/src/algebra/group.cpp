#include "ncguard/algebra/group.hpp"

#include <array>
#include <bit>
#include <limits>

#include <boost/multiprecision/miller_rabin.hpp>

#include "ncguard/errors.hpp"

namespace ncguard {
namespace {

constexpr std::array<unsigned, 24> kSmallPrimes = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                   43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

BigUint random_bits(unsigned bits, Rng& rng) {
  BigUint r = 0;
  for (unsigned produced = 0; produced < bits; produced += 64) {
    r <<= 64;
    r += rng();
  }
  const BigUint one = 1;
  r &= (one << bits) - 1;
  return r;
}

// Uniform in [lo, hi] by rejection on the bit length of the span.
BigUint random_between(const BigUint& lo, const BigUint& hi, Rng& rng) {
  const BigUint span = hi - lo;
  if (span == 0) return lo;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(span)) + 1;
  for (;;) {
    BigUint r = random_bits(bits, rng);
    if (r <= span) return lo + r;
  }
}

BigUint random_prime(unsigned bits, Rng& rng) {
  const BigUint one = 1;
  for (;;) {
    BigUint candidate = random_bits(bits, rng) | (one << (bits - 1)) | one;
    if (is_probable_prime(candidate, rng)) return candidate;
  }
}

BigUint find_generator(const BigUint& P, const BigUint& Q, Rng& rng) {
  const BigUint cofactor = (Q - 1) / P;
  for (;;) {
    const BigUint h = random_between(2, Q - 2, rng);
    BigUint g = mod_exp(h, cofactor, Q);
    if (g != 1) return g;
  }
}

}  // namespace

std::uint64_t mod_exp(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus) {
  if (modulus < 2) throw UsageError("mod_exp: modulus must be at least 2");
  auto mulmod = [modulus](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % modulus);
  };
  std::uint64_t result = 1;
  base %= modulus;
  for (int bit = std::bit_width(exp) - 1; bit >= 0; --bit) {
    result = mulmod(result, result);
    if ((exp >> bit) & 1U) result = mulmod(result, base);
  }
  return result;
}

BigUint mod_exp(const BigUint& base, const BigUint& exp, const BigUint& modulus) {
  if (modulus < 2) throw UsageError("mod_exp: modulus must be at least 2");
  if (exp < 0 || base < 0) throw UsageError("mod_exp: negative operand");
  BigUint result = 1;
  if (exp == 0) return result;
  const BigUint b = base % modulus;
  const auto top = boost::multiprecision::msb(exp);
  for (auto bit = static_cast<long>(top); bit >= 0; --bit) {
    result = (result * result) % modulus;
    if (boost::multiprecision::bit_test(exp, static_cast<unsigned>(bit))) result = (result * b) % modulus;
  }
  return result;
}

bool is_probable_prime(const BigUint& n, Rng& rng) {
  if (n < 2) return false;
  if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(static_cast<std::uint64_t>(n));
  if ((n & 1) == 0) return false;
  for (unsigned p : kSmallPrimes) {
    if (n % p == 0) return false;
  }
  return boost::multiprecision::miller_rabin_test(n, 40, rng);
}

GroupSpec GroupSpec::make(const BigUint& P, const BigUint& Q, const BigUint& g) {
  Rng rng(0x5eed);
  if (Q < 3 || !is_probable_prime(Q, rng)) throw UsageError("group modulus Q must be an odd prime");
  if (!is_probable_prime(P, rng)) throw UsageError("subgroup order P must be prime");
  if ((Q - 1) % P != 0) throw UsageError("P must divide Q - 1");
  if (g <= 1 || g >= Q) throw UsageError("generator must lie in [2, Q)");
  if (mod_exp(g, P, Q) != 1) throw UsageError("generator does not have order P");

  GroupSpec spec;
  spec.P_ = P;
  spec.Q_ = Q;
  spec.g_ = g;
  if (Q <= std::numeric_limits<std::uint64_t>::max()) {
    spec.word_ = Word{static_cast<std::uint64_t>(P), static_cast<std::uint64_t>(Q), static_cast<std::uint64_t>(g)};
  }
  return spec;
}

unsigned GroupSpec::modulus_bits() const { return static_cast<unsigned>(boost::multiprecision::msb(Q_)) + 1; }

unsigned GroupSpec::subgroup_bits() const { return static_cast<unsigned>(boost::multiprecision::msb(P_)) + 1; }

GroupSpec make_group(unsigned bits_P, unsigned bits_Q, Rng& rng) {
  if (bits_P < 8) throw UsageError("make_group: bits_P must be at least 8");
  if (bits_Q <= bits_P) throw UsageError("make_group: bits_Q must exceed bits_P");

  const BigUint one = 1;
  const BigUint q_lo = one << (bits_Q - 1);
  const BigUint q_hi = (one << bits_Q) - 1;
  for (;;) {
    const BigUint P = random_prime(bits_P, rng);
    // Q = r*P + 1 with r even so that Q is odd.
    BigUint r_lo = (q_lo - 1 + P - 1) / P;
    BigUint r_hi = (q_hi - 1) / P;
    if (r_lo % 2 != 0) ++r_lo;
    if (r_hi % 2 != 0) --r_hi;
    if (r_lo > r_hi) continue;
    const BigUint half_lo = r_lo / 2;
    const BigUint half_hi = r_hi / 2;
    const unsigned attempts = 8 * bits_Q * bits_Q;
    for (unsigned i = 0; i < attempts; ++i) {
      const BigUint Q = 2 * random_between(half_lo, half_hi, rng) * P + 1;
      if (is_probable_prime(Q, rng)) return GroupSpec::make(P, Q, find_generator(P, Q, rng));
    }
  }
}

GroupSpec make_safe_prime_group(unsigned bits_P, Rng& rng) {
  if (bits_P < 3) throw UsageError("make_safe_prime_group: bits_P must be at least 3");
  for (;;) {
    const BigUint P = random_prime(bits_P, rng);
    const BigUint Q = 2 * P + 1;
    if (is_probable_prime(Q, rng)) return GroupSpec::make(P, Q, find_generator(P, Q, rng));
  }
}

GroupSpec default_group(std::uint64_t seed) {
  Rng rng(seed);
  return make_safe_prime_group(32, rng);
}

}  // namespace ncguard
