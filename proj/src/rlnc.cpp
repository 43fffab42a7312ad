#include "ncguard/rlnc.hpp"

#include <algorithm>
#include <string>

#include "ncguard/errors.hpp"

namespace ncguard {

GenerationParams GenerationParams::with_wire_size(std::size_t n_bits, std::size_t G, std::size_t k_data,
                                                  std::size_t hash_symbols, unsigned symbol_bits) {
  GenerationParams p{G, k_data, hash_symbols, symbol_bits};
  if (G == 0) throw UsageError("generation size G must be positive");
  if (symbol_bits == 0) throw UsageError("symbol_bits must be positive");
  if (p.packet_bits() != n_bits) {
    throw UsageError("wire size mismatch: (G + k_data + hash) * symbol_bits = " + std::to_string(p.packet_bits()) +
                     ", expected n = " + std::to_string(n_bits));
  }
  return p;
}

GenerationParams GenerationParams::fit(std::size_t n_bits, std::size_t G, unsigned symbol_bits,
                                       const HashParams* hash) {
  if (symbol_bits == 0 || n_bits % symbol_bits != 0) {
    throw UsageError("packet size " + std::to_string(n_bits) + " is not a whole number of " +
                     std::to_string(symbol_bits) + "-bit symbols");
  }
  const std::size_t symbols = n_bits / symbol_bits;
  if (symbols <= G) throw UsageError("packet too small to hold an encoding vector of length G");
  const std::size_t budget = symbols - G;
  if (hash == nullptr) return with_wire_size(n_bits, G, budget, 0, symbol_bits);

  // k_data + ceil(k_data / k) is strictly increasing, so at most one value fits.
  for (std::size_t k_data = budget; k_data > 0; --k_data) {
    const std::size_t used = k_data + hash->symbol_count(k_data);
    if (used == budget) return with_wire_size(n_bits, G, k_data, hash->symbol_count(k_data), symbol_bits);
    if (used < budget) break;
  }
  throw UsageError("no payload length fills exactly " + std::to_string(budget) + " symbols with k = " +
                   std::to_string(hash->k));
}

bool CodedPacket::is_zero() const {
  auto zero = [](Symbol s) { return s == 0; };
  return std::all_of(coeffs.begin(), coeffs.end(), zero) && std::all_of(payload.begin(), payload.end(), zero) &&
         std::all_of(hash.begin(), hash.end(), zero);
}

Generation::Generation(std::size_t id, FieldSpec field, GenerationParams params, Matrix payloads, Matrix hashes)
    : id_(id), field_(std::move(field)), params_(params), payloads_(std::move(payloads)), hashes_(std::move(hashes)) {
  if (payloads_.rows() != params_.G || payloads_.cols() != params_.k_data) {
    throw UsageError("generation payloads must be G x k_data");
  }
  if (hashes_.rows() != params_.G || hashes_.cols() != params_.hash_symbols) {
    throw UsageError("generation hashes must be G x hash_symbols");
  }
}

Packet Generation::source_packet(std::size_t i) const {
  Packet p;
  p.generation_id = id_;
  p.coeffs.assign(params_.G, 0);
  p.coeffs[i] = 1;
  const auto pay = payloads_.row(i);
  p.payload.assign(pay.begin(), pay.end());
  const auto h = hashes_.row(i);
  p.hash.assign(h.begin(), h.end());
  return p;
}

Matrix Generation::augmented() const {
  Matrix m(field_, params_.G, params_.packet_symbols());
  for (std::size_t i = 0; i < params_.G; ++i) {
    auto row = m.row(i);
    row[i] = 1;
    std::copy(payloads_.row(i).begin(), payloads_.row(i).end(), row.begin() + static_cast<std::ptrdiff_t>(params_.G));
    std::copy(hashes_.row(i).begin(), hashes_.row(i).end(),
              row.begin() + static_cast<std::ptrdiff_t>(params_.G + params_.k_data));
  }
  return m;
}

GenerationBundle make_generation(std::size_t id, const Matrix& payloads, const GenerationParams& params,
                                 const HashParams* hash) {
  if (payloads.rows() != params.G || payloads.cols() != params.k_data) {
    throw UsageError("payload matrix is " + std::to_string(payloads.rows()) + "x" + std::to_string(payloads.cols()) +
                     ", params expect " + std::to_string(params.G) + "x" + std::to_string(params.k_data));
  }
  const FieldSpec& field = payloads.field();
  std::size_t hash_symbols = 0;
  if (hash != nullptr) {
    if (!same_field(hash->field, field)) throw UsageError("hash field differs from coding field");
    hash_symbols = hash->symbol_count(params.k_data);
  }
  if (hash_symbols != params.hash_symbols) throw UsageError("params.hash_symbols disagrees with the hash scheme");

  Matrix hashes(field, params.G, hash_symbols);
  if (hash != nullptr) {
    for (std::size_t i = 0; i < params.G; ++i) {
      const auto h = gen_hash_append(payloads.row(i), *hash);
      std::copy(h.begin(), h.end(), hashes.row(i).begin());
    }
  }
  Generation generation(id, field, params, payloads, std::move(hashes));
  std::vector<Packet> packets;
  packets.reserve(params.G);
  for (std::size_t i = 0; i < params.G; ++i) packets.push_back(generation.source_packet(i));
  return {std::move(generation), std::move(packets)};
}

Matrix random_payloads(const FieldSpec& field, std::size_t G, std::size_t k_data, Rng& rng) {
  Matrix m(field, G, k_data);
  for (std::size_t r = 0; r < G; ++r) {
    for (Symbol& s : m.row(r)) s = field->random(rng);
  }
  return m;
}

Packet linear_combine(const Field& field, std::span<const Packet> packets, std::span<const Symbol> weights) {
  if (packets.empty()) throw UsageError("combine needs at least one packet");
  if (weights.size() != packets.size()) throw UsageError("one weight per packet required");
  const Packet& first = packets.front();
  Packet out;
  out.generation_id = first.generation_id;
  out.coeffs.assign(first.coeffs.size(), 0);
  out.payload.assign(first.payload.size(), 0);
  out.hash.assign(first.hash.size(), 0);
  for (std::size_t j = 0; j < packets.size(); ++j) {
    const Packet& p = packets[j];
    if (p.generation_id != first.generation_id) throw UsageError("cannot mix packets from different generations");
    if (p.coeffs.size() != first.coeffs.size() || p.payload.size() != first.payload.size() ||
        p.hash.size() != first.hash.size()) {
      throw UsageError("packets of one generation must share their layout");
    }
    const Symbol c = weights[j];
    if (c == 0) continue;
    axpy(field, c, p.coeffs, out.coeffs);
    axpy(field, c, p.payload, out.payload);
    axpy(field, c, p.hash, out.hash);
    if (p.origin == Origin::corrupted) out.origin = Origin::corrupted;
  }
  return out;
}

Packet random_combine(const Field& field, std::span<const Packet> packets, Rng& rng) {
  std::vector<Symbol> weights(packets.size());
  for (Symbol& w : weights) w = field.random(rng);
  return linear_combine(field, packets, weights);
}

namespace {

template <typename PacketT>
DecodeResult decode_impl(std::span<const PacketT> packets, std::size_t G, const FieldSpec& spec) {
  if (packets.empty()) return NotDecodable{0};
  const std::size_t k_data = packets.front().payload.size();
  const std::size_t h = packets.front().hash.size();
  Matrix m(spec, packets.size(), G + k_data + h);
  for (std::size_t r = 0; r < packets.size(); ++r) {
    const CodedPacket& p = packets[r];
    if (p.coeffs.size() != G || p.payload.size() != k_data || p.hash.size() != h) {
      throw UsageError("decode: packet layout mismatch");
    }
    auto row = m.row(r);
    auto it = std::copy(p.coeffs.begin(), p.coeffs.end(), row.begin());
    it = std::copy(p.payload.begin(), p.payload.end(), it);
    std::copy(p.hash.begin(), p.hash.end(), it);
  }
  Echelon e = row_reduce(std::move(m), G);
  if (e.rank() < G) return NotDecodable{e.rank()};

  DecodedGeneration out{Matrix(spec, G, k_data), Matrix(spec, G, h), 0};
  for (std::size_t i = 0; i < G; ++i) {
    const auto row = e.reduced.row(i);
    std::copy(row.begin() + static_cast<std::ptrdiff_t>(G), row.begin() + static_cast<std::ptrdiff_t>(G + k_data),
              out.payloads.row(i).begin());
    std::copy(row.begin() + static_cast<std::ptrdiff_t>(G + k_data), row.end(), out.hashes.row(i).begin());
  }
  for (std::size_t r = G; r < e.reduced.rows(); ++r) {
    const auto row = e.reduced.row(r);
    if (std::any_of(row.begin(), row.end(), [](Symbol s) { return s != 0; })) ++out.inconsistent_rows;
  }
  return out;
}

}  // namespace

DecodeResult decode(const FieldSpec& field, std::span<const Packet> packets, std::size_t G) {
  return decode_impl<Packet>(packets, G, field);
}

DecodeResult decode(const FieldSpec& field, std::span<const CodedPacket> packets, std::size_t G) {
  return decode_impl<CodedPacket>(packets, G, field);
}

SubGeneration subgeneration_view(std::span<const Packet> packets, std::size_t expected_count) {
  SubGeneration sub;
  sub.expected_count = expected_count;
  if (packets.empty()) return sub;
  sub.G = packets.front().coeffs.size();
  for (const Packet& p : packets) {
    if (p.generation_id != packets.front().generation_id) {
      throw UsageError("sub-generation packets must come from one generation");
    }
    sub.packets.push_back(static_cast<const CodedPacket&>(p));
  }
  return sub;
}

}  // namespace ncguard
