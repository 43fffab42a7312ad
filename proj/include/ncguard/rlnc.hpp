#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ncguard/algebra/field.hpp"
#include "ncguard/algebra/matrix.hpp"
#include "ncguard/hash.hpp"

namespace ncguard {

/// Shape of a generation and the wire-size identity
///   n = (G + k_data + hash_symbols) * symbol_bits.
struct GenerationParams {
  std::size_t G = 1;
  std::size_t k_data = 0;
  std::size_t hash_symbols = 0;
  unsigned symbol_bits = 8;

  std::size_t packet_symbols() const { return G + k_data + hash_symbols; }
  std::size_t packet_bits() const { return packet_symbols() * symbol_bits; }

  /// Builds params and checks them against a stated wire size n.
  static GenerationParams with_wire_size(std::size_t n_bits, std::size_t G, std::size_t k_data,
                                         std::size_t hash_symbols, unsigned symbol_bits);
  /// Picks k_data so that the identity holds exactly for n_bits. With a hash
  /// scheme the hash symbol count follows from k_data. Throws UsageError when
  /// no k_data fits exactly.
  static GenerationParams fit(std::size_t n_bits, std::size_t G, unsigned symbol_bits,
                              const HashParams* hash = nullptr);
};

enum class Origin { valid, corrupted };

/// Everything a coding node or a detector may look at.
struct CodedPacket {
  std::size_t generation_id = 0;
  std::vector<Symbol> coeffs;   // encoding vector, length G
  std::vector<Symbol> payload;  // k_data symbols
  std::vector<Symbol> hash;     // 0..n hash symbols

  std::size_t length() const { return coeffs.size() + payload.size() + hash.size(); }
  bool is_zero() const;
  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

/// A coded packet plus the simulator's ground-truth tag. Detectors take
/// `const CodedPacket&` and therefore cannot see `origin`.
struct Packet : CodedPacket {
  Origin origin = Origin::valid;
  friend bool operator==(const Packet&, const Packet&) = default;
};

/// G source payloads mixed only among themselves.
class Generation {
 public:
  Generation(std::size_t id, FieldSpec field, GenerationParams params, Matrix payloads, Matrix hashes);

  std::size_t id() const { return id_; }
  const FieldSpec& field() const { return field_; }
  const GenerationParams& params() const { return params_; }
  std::size_t size() const { return params_.G; }
  const Matrix& payloads() const { return payloads_; }
  const Matrix& hashes() const { return hashes_; }

  /// Source packet i: unit encoding vector e_i, payload row i, hash row i.
  Packet source_packet(std::size_t i) const;
  /// Rows [e_i | payload_i | hash_i] for every source packet.
  Matrix augmented() const;

 private:
  std::size_t id_;
  FieldSpec field_;
  GenerationParams params_;
  Matrix payloads_;
  Matrix hashes_;
};

struct GenerationBundle {
  Generation generation;
  std::vector<Packet> packets;
};

/// Wraps G x k_data payloads into a generation and its G source packets.
/// When `hash` is given, every packet carries gen_hash_append(payload).
GenerationBundle make_generation(std::size_t id, const Matrix& payloads, const GenerationParams& params,
                                 const HashParams* hash = nullptr);

/// Uniformly random G x k_data payload matrix.
Matrix random_payloads(const FieldSpec& field, std::size_t G, std::size_t k_data, Rng& rng);

/// Sum of c_j * packet_j with every c_j uniform over the field (zero
/// included), applied to coefficients, payload and hash alike. The result is
/// tagged corrupted when any input with a nonzero coefficient was.
Packet random_combine(const Field& field, std::span<const Packet> packets, Rng& rng);
/// Same combination with caller-chosen coefficients.
Packet linear_combine(const Field& field, std::span<const Packet> packets, std::span<const Symbol> weights);

struct DecodedGeneration {
  Matrix payloads;  // G x k_data
  Matrix hashes;    // G x hash_symbols
  /// Extra packets whose content contradicts the solved system.
  std::size_t inconsistent_rows = 0;
};

/// Erasure condition: the encoding vectors span fewer than G dimensions.
struct NotDecodable {
  std::size_t rank = 0;
};

using DecodeResult = std::variant<DecodedGeneration, NotDecodable>;

/// Gaussian elimination over the coding field.
DecodeResult decode(const FieldSpec& field, std::span<const Packet> packets, std::size_t G);
DecodeResult decode(const FieldSpec& field, std::span<const CodedPacket> packets, std::size_t G);

/// Encoded packets of one generation received by an intermediate node and
/// checked as a unit.
struct SubGeneration {
  std::size_t G = 0;
  std::size_t expected_count = 0;
  std::vector<CodedPacket> packets;

  bool complete() const { return packets.size() >= expected_count; }
};

SubGeneration subgeneration_view(std::span<const Packet> packets, std::size_t expected_count);

}  // namespace ncguard
