#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ncguard/algebra/group.hpp"
#include "ncguard/rlnc.hpp"

namespace ncguard {

/// Public key of the homomorphic subspace signature.
///
/// h_i = g^(u_i) mod Q where u is a secret vector over F_P orthogonal to every
/// source-augmented vector (e_i | payload_i). A vector w passes the check
/// prod_i h_i^(w_i) = g^(u.w) = 1 exactly when u.w = 0, which holds for the
/// whole source span and for any other vector with probability 1/P.
class SignatureKey {
 public:
  SignatureKey(GroupSpec group, std::vector<BigUint> elements);

  const GroupSpec& group() const { return group_; }
  std::size_t length() const { return elements_.size(); }
  const std::vector<BigUint>& elements() const { return elements_; }
  /// Word-sized copy of the elements when the group allows it.
  const std::optional<std::vector<std::uint64_t>>& word_elements() const { return word_; }

  /// (G + k_data) * ceil(log2 Q).
  std::size_t size_bits() const { return length() * group_.modulus_bits(); }

 private:
  GroupSpec group_;
  std::vector<BigUint> elements_;
  std::optional<std::vector<std::uint64_t>> word_;
};

enum class SigVerdict { accept, reject };

/// Samples u from the orthogonal complement of the generation's source span
/// and publishes g^u. The generation must be coded over the prime field F_P
/// of the group's subgroup order. Hash symbols are not covered.
SignatureKey sig_keygen(const Generation& generation, const GroupSpec& group, Rng& rng);

/// Accepts iff prod_i h_i^(w_i) = 1 (mod Q) for w = coeffs | payload.
/// The all-zero vector is trivially accepted.
SigVerdict sig_verify(const CodedPacket& packet, const SignatureKey& key);

/// Public-key bits over file bits for a file of `blocks` vectors with
/// `block_symbols` symbols of F_P each:
/// (blocks + block_symbols) * log Q / (blocks * block_symbols * log P).
double key_to_file_ratio(std::size_t blocks, std::size_t block_symbols, unsigned subgroup_bits,
                         unsigned modulus_bits);

}  // namespace ncguard
