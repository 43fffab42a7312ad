#pragma once

#include <cstddef>
#include <vector>

#include "ncguard/algebra/matrix.hpp"
#include "ncguard/hash.hpp"
#include "ncguard/rlnc.hpp"

namespace ncguard {

enum class Verdict { valid, corrupted, inconclusive };

const char* to_string(Verdict v);

/// Valid iff every decoded row's hash symbols equal gen_hash_append of its
/// decoded payload.
Verdict gen_hash_verify(const DecodedGeneration& decoded, const HashParams& params);

/// Outcome of checking a sub-generation. When the received encoding vectors
/// span every source they touch, the touched sources are solved for and
/// returned alongside the verdict.
struct SubspanCheck {
  Verdict verdict = Verdict::valid;
  std::vector<std::size_t> sources;  // indices of the solved source packets
  Matrix payloads;                   // one row per entry of `sources`
  Matrix hashes;
  std::size_t rank = 0;
};

/// Checks the packets of a sub-generation against the hash.
///
/// Let S be the set of source indices with a nonzero coefficient in some
/// received packet. A packet whose encoding vector is zero (or is a
/// combination of other received vectors) but whose content is not is proof
/// of corruption. If the received vectors have rank |S| the S sources are
/// solved for exactly and their hashes checked. Otherwise the sub-span is too
/// thin to decide and the verdict is inconclusive.
SubspanCheck gen_hash_verify_subspan(const SubGeneration& sub, const HashParams& params);

/// Ground truth: true iff (coeffs | payload | hash) lies in the row span of
/// the generation's source-augmented matrix, decided by rank comparison.
bool oracle_verify(const CodedPacket& packet, const Generation& generation);

}  // namespace ncguard
