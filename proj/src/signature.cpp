#include "ncguard/signature.hpp"

#include <algorithm>

#include "ncguard/errors.hpp"

namespace ncguard {

SignatureKey::SignatureKey(GroupSpec group, std::vector<BigUint> elements)
    : group_(std::move(group)), elements_(std::move(elements)) {
  if (group_.word()) {
    std::vector<std::uint64_t> w;
    w.reserve(elements_.size());
    for (const BigUint& e : elements_) w.push_back(static_cast<std::uint64_t>(e));
    word_ = std::move(w);
  }
}

SignatureKey sig_keygen(const Generation& generation, const GroupSpec& group, Rng& rng) {
  const Field& f = *generation.field();
  if (f.kind() != FieldKind::prime || BigUint(f.order()) != group.subgroup_order()) {
    throw UsageError("signature keys need the coding field to be F_P for the group's subgroup order P");
  }
  const GenerationParams& params = generation.params();
  const std::size_t length = params.G + params.k_data;

  Matrix source(generation.field(), params.G, length);
  for (std::size_t i = 0; i < params.G; ++i) {
    source.at(i, i) = 1;
    const auto pay = generation.payloads().row(i);
    std::copy(pay.begin(), pay.end(), source.row(i).begin() + static_cast<std::ptrdiff_t>(params.G));
  }
  if (rank(source) != params.G) throw UsageError("source vectors must be linearly independent");
  const auto basis = null_space(source);
  if (basis.empty()) throw UsageError("source span has no orthogonal complement (k_data = 0)");

  std::vector<Symbol> secret(length, 0);
  while (std::all_of(secret.begin(), secret.end(), [](Symbol s) { return s == 0; })) {
    std::fill(secret.begin(), secret.end(), 0);
    for (const auto& v : basis) axpy(f, f.random(rng), v, secret);
  }

  std::vector<BigUint> elements;
  elements.reserve(length);
  for (Symbol u : secret) {
    if (const auto& w = group.word()) {
      elements.emplace_back(mod_exp(w->g, u, w->Q));
    } else {
      elements.push_back(mod_exp(group.generator(), BigUint(u), group.modulus()));
    }
  }
  return SignatureKey(group, std::move(elements));
}

SigVerdict sig_verify(const CodedPacket& packet, const SignatureKey& key) {
  const std::size_t length = packet.coeffs.size() + packet.payload.size();
  if (length != key.length()) throw UsageError("packet length does not match the signature key");

  auto symbol = [&](std::size_t i) { return i < packet.coeffs.size() ? packet.coeffs[i] : packet.payload[i - packet.coeffs.size()]; };

  if (const auto& h = key.word_elements()) {
    const std::uint64_t Q = key.group().word()->Q;
    unsigned __int128 acc = 1;
    for (std::size_t i = 0; i < length; ++i) {
      const std::uint64_t w = symbol(i);
      if (w == 0) continue;
      acc = (acc * mod_exp((*h)[i], w, Q)) % Q;
    }
    return acc == 1 ? SigVerdict::accept : SigVerdict::reject;
  }

  const BigUint& Q = key.group().modulus();
  BigUint acc = 1;
  for (std::size_t i = 0; i < length; ++i) {
    const std::uint64_t w = symbol(i);
    if (w == 0) continue;
    acc = (acc * mod_exp(key.elements()[i], BigUint(w), Q)) % Q;
  }
  return acc == 1 ? SigVerdict::accept : SigVerdict::reject;
}

double key_to_file_ratio(std::size_t blocks, std::size_t block_symbols, unsigned subgroup_bits,
                         unsigned modulus_bits) {
  const double key = static_cast<double>(blocks + block_symbols) * modulus_bits;
  const double file = static_cast<double>(blocks) * static_cast<double>(block_symbols) * subgroup_bits;
  return key / file;
}

}  // namespace ncguard
