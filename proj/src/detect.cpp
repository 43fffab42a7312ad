#include "ncguard/detect.hpp"

#include <algorithm>

#include "ncguard/errors.hpp"

namespace ncguard {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::valid:
      return "valid";
    case Verdict::corrupted:
      return "corrupted";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

bool row_hash_matches(std::span<const Symbol> payload, std::span<const Symbol> hash, const HashParams& params) {
  const auto expected = gen_hash_append(payload, params);
  return std::equal(expected.begin(), expected.end(), hash.begin(), hash.end());
}

}  // namespace

Verdict gen_hash_verify(const DecodedGeneration& decoded, const HashParams& params) {
  params.validate();
  if (decoded.payloads.rows() != decoded.hashes.rows()) throw UsageError("gen_hash_verify: row count mismatch");
  if (decoded.hashes.cols() != params.symbol_count(decoded.payloads.cols())) {
    throw UsageError("gen_hash_verify: hash width does not match k");
  }
  if (decoded.inconsistent_rows != 0) return Verdict::corrupted;
  for (std::size_t r = 0; r < decoded.payloads.rows(); ++r) {
    if (!row_hash_matches(decoded.payloads.row(r), decoded.hashes.row(r), params)) return Verdict::corrupted;
  }
  return Verdict::valid;
}

SubspanCheck gen_hash_verify_subspan(const SubGeneration& sub, const HashParams& params) {
  params.validate();
  SubspanCheck out;
  const FieldSpec& field = params.field;
  out.payloads = Matrix(field, 0, 0);
  out.hashes = Matrix(field, 0, 0);
  if (sub.packets.empty()) return out;

  const std::size_t G = sub.G;
  const std::size_t k_data = sub.packets.front().payload.size();
  const std::size_t h = sub.packets.front().hash.size();
  if (h != params.symbol_count(k_data)) throw UsageError("sub-generation hash width does not match k");

  std::vector<bool> touched(G, false);
  Matrix m(field, sub.packets.size(), G + k_data + h);
  for (std::size_t r = 0; r < sub.packets.size(); ++r) {
    const CodedPacket& p = sub.packets[r];
    if (p.coeffs.size() != G || p.payload.size() != k_data || p.hash.size() != h) {
      throw UsageError("sub-generation packets must share their layout");
    }
    auto row = m.row(r);
    auto it = std::copy(p.coeffs.begin(), p.coeffs.end(), row.begin());
    it = std::copy(p.payload.begin(), p.payload.end(), it);
    std::copy(p.hash.begin(), p.hash.end(), it);
    for (std::size_t j = 0; j < G; ++j) touched[j] = touched[j] || p.coeffs[j] != 0;
  }
  const std::size_t support = static_cast<std::size_t>(std::count(touched.begin(), touched.end(), true));

  const Echelon e = row_reduce(std::move(m), G);
  out.rank = e.rank();
  for (std::size_t r = e.rank(); r < e.reduced.rows(); ++r) {
    const auto row = e.reduced.row(r);
    if (std::any_of(row.begin(), row.end(), [](Symbol s) { return s != 0; })) {
      out.verdict = Verdict::corrupted;
      return out;
    }
  }
  if (e.rank() < support) {
    out.verdict = Verdict::inconclusive;
    return out;
  }

  // Full rank on the support: every pivot row is exactly one source packet.
  out.payloads = Matrix(field, e.rank(), k_data);
  out.hashes = Matrix(field, e.rank(), h);
  out.verdict = Verdict::valid;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const auto row = e.reduced.row(r);
    const auto payload = row.subspan(G, k_data);
    const auto hash = row.subspan(G + k_data, h);
    out.sources.push_back(e.pivots[r]);
    std::copy(payload.begin(), payload.end(), out.payloads.row(r).begin());
    std::copy(hash.begin(), hash.end(), out.hashes.row(r).begin());
    if (!row_hash_matches(payload, hash, params)) out.verdict = Verdict::corrupted;
  }
  return out;
}

bool oracle_verify(const CodedPacket& packet, const Generation& generation) {
  Matrix source = generation.augmented();
  if (packet.length() != source.cols()) return false;
  const std::size_t base = rank(source);
  std::vector<Symbol> row;
  row.reserve(packet.length());
  row.insert(row.end(), packet.coeffs.begin(), packet.coeffs.end());
  row.insert(row.end(), packet.payload.begin(), packet.payload.end());
  row.insert(row.end(), packet.hash.begin(), packet.hash.end());
  source.append_row(row);
  return rank(source) == base;
}

}  // namespace ncguard
