#include "ncguard/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ncguard/errors.hpp"

namespace ncguard {

std::string_view to_string(AttackMode mode) {
  switch (mode) {
    case AttackMode::random_symbol:
      return "random-symbol";
    case AttackMode::random_payload:
      return "random-payload";
    case AttackMode::hash_aware_forgery:
      return "hash-aware-forgery";
    case AttackMode::blind_s_packet:
      return "blind-s-packet";
  }
  return "?";
}

AttackMode parse_attack_mode(std::string_view name) {
  for (AttackMode m : {AttackMode::random_symbol, AttackMode::random_payload, AttackMode::hash_aware_forgery,
                       AttackMode::blind_s_packet}) {
    if (to_string(m) == name) return m;
  }
  throw UsageError("unknown attack mode '" + std::string(name) + "'");
}

void AttackModel::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("attack probability must lie in [0, 1]");
}

namespace {

Symbol different_value(const Field& field, Symbol old, Rng& rng) {
  // Uniform over the q - 1 values other than `old`.
  const Symbol offset = std::uniform_int_distribution<Symbol>(1, field.order() - 1)(rng);
  return (old + offset) % field.order();
}

void replace_one(std::vector<Symbol>& symbols, const Field& field, Rng& rng) {
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, symbols.size() - 1)(rng);
  symbols[i] = different_value(field, symbols[i], rng);
}

void redraw_all(std::vector<Symbol>& symbols, const Field& field, Rng& rng) {
  const std::vector<Symbol> before = symbols;
  for (Symbol& s : symbols) s = field.random(rng);
  if (symbols == before) replace_one(symbols, field, rng);
}

}  // namespace

void corrupt_packet(Packet& packet, AttackMode mode, const Field& field, const HashParams* hash, Rng& rng) {
  const bool rehash = mode == AttackMode::hash_aware_forgery || mode == AttackMode::blind_s_packet;
  if (rehash && hash == nullptr) throw UsageError(std::string(to_string(mode)) + " needs hash parameters");

  packet.origin = Origin::corrupted;
  if (packet.payload.empty()) {
    // Nothing but the encoding vector to tamper with.
    if (packet.coeffs.empty()) throw UsageError("cannot corrupt an empty packet");
    replace_one(packet.coeffs, field, rng);
    return;
  }
  if (mode == AttackMode::random_symbol || mode == AttackMode::hash_aware_forgery) {
    replace_one(packet.payload, field, rng);
  } else {
    redraw_all(packet.payload, field, rng);
  }
  if (rehash && !packet.hash.empty()) packet.hash = gen_hash_append(packet.payload, *hash);
}

std::vector<Packet> corrupt_stream(std::vector<Packet> packets, const AttackModel& model, const Field& field,
                                   const HashParams* hash, Rng& rng) {
  model.validate();
  std::bernoulli_distribution hit(model.p);
  for (Packet& p : packets) {
    if (hit(rng)) corrupt_packet(p, model.mode, field, hash, rng);
  }
  return packets;
}

std::vector<Packet> corrupt_stream(std::vector<Packet> packets, const AttackModel& model, const Field& field,
                                   const HashParams* hash) {
  Rng rng(model.rng_seed);
  return corrupt_stream(std::move(packets), model, field, hash, rng);
}

std::vector<Packet> blind_forge_generation(std::vector<Packet> packets, std::size_t s, const HashParams& hash,
                                           Rng& rng) {
  if (s > packets.size()) {
    throw UsageError("cannot forge " + std::to_string(s) + " of " + std::to_string(packets.size()) + " packets");
  }
  hash.validate();
  std::vector<std::size_t> order(packets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < s; ++i) {
    corrupt_packet(packets[order[i]], AttackMode::blind_s_packet, *hash.field, &hash, rng);
  }
  return packets;
}

std::vector<Packet> blind_forge_generation(std::vector<Packet> packets, std::size_t s, const AttackModel& model,
                                           const HashParams& hash) {
  Rng rng(model.rng_seed);
  return blind_forge_generation(std::move(packets), s, hash, rng);
}

}  // namespace ncguard
