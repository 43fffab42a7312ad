#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ncguard/hash.hpp"
#include "ncguard/rlnc.hpp"

namespace ncguard {

enum class AttackMode {
  random_symbol,       // one payload symbol replaced by a different value
  random_payload,      // whole payload redrawn, hash left alone
  hash_aware_forgery,  // one payload symbol replaced, hash recomputed over the new payload
  blind_s_packet,      // whole payload redrawn with a self-consistent hash
};

std::string_view to_string(AttackMode mode);
AttackMode parse_attack_mode(std::string_view name);

/// Independent per-packet corruption upstream of the observed node.
struct AttackModel {
  double p = 0.0;
  AttackMode mode = AttackMode::random_symbol;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Rewrites one packet in place according to `mode`; the result always
/// differs from the input. Hash-rewriting modes need `hash`.
void corrupt_packet(Packet& packet, AttackMode mode, const Field& field, const HashParams* hash, Rng& rng);

/// Each packet is independently corrupted with probability model.p and
/// tagged `Origin::corrupted`. Reproducible from model.rng_seed.
std::vector<Packet> corrupt_stream(std::vector<Packet> packets, const AttackModel& model, const Field& field,
                                   const HashParams* hash = nullptr);
/// Variant drawing from a caller-owned stream, for simulators that corrupt
/// many batches from one seed.
std::vector<Packet> corrupt_stream(std::vector<Packet> packets, const AttackModel& model, const Field& field,
                                   const HashParams* hash, Rng& rng);

/// Replaces s packets of a generation with forgeries built only from the
/// packet being replaced: the encoding vector is kept, the payload is
/// redrawn and the hash recomputed over it. The other packets are never
/// read. Throws UsageError when s exceeds the number of packets.
std::vector<Packet> blind_forge_generation(std::vector<Packet> packets, std::size_t s, const AttackModel& model,
                                           const HashParams& hash);
std::vector<Packet> blind_forge_generation(std::vector<Packet> packets, std::size_t s, const HashParams& hash,
                                           Rng& rng);

}  // namespace ncguard
