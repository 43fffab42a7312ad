#include "ncguard/hash.hpp"

#include <cmath>

#include "ncguard/errors.hpp"

namespace ncguard {

double HashParams::miss_bound() const {
  const double ratio = static_cast<double>(k + 1) / static_cast<double>(field->order());
  return std::pow(ratio, static_cast<double>(s));
}

void HashParams::validate() const {
  if (!field) throw UsageError("hash params need a field");
  if (k == 0) throw UsageError("hash block length k must be positive");
  if (s == 0) throw UsageError("hash parameter s must be positive");
}

std::vector<Symbol> gen_hash_append(std::span<const Symbol> payload, const HashParams& params) {
  params.validate();
  const Field& f = *params.field;
  std::vector<Symbol> hash(params.symbol_count(payload.size()), 0);
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const Symbol x = payload[i];
    if (!f.contains(x)) throw UsageError("payload symbol outside the hash field");
    // Position within the block is 1-based; exponent is position + 1.
    const std::size_t exponent = i % params.k + 2;
    hash[i / params.k] = f.add(hash[i / params.k], f.pow(x, exponent));
  }
  return hash;
}

}  // namespace ncguard
