#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncguard/algebra/field.hpp"

namespace ncguard {

/// Parameters of the per-generation polynomial hash.
///
/// Each block of `k` payload symbols x_1..x_k is summarised by one hash
/// symbol h = sum_i x_i^(i+1), a degree-(k+1) polynomial. A short final
/// block is zero padded. `s` is the number of degrees of freedom of the
/// code the adversary did not observe; it only enters the miss bound.
struct HashParams {
  std::size_t k = 50;
  std::size_t s = 1;
  FieldSpec field;

  /// Hash symbols appended to a payload of `payload_symbols` symbols.
  std::size_t symbol_count(std::size_t payload_symbols) const { return (payload_symbols + k - 1) / k; }
  /// Hash symbols per payload symbol, 1/(k+1) of the combined length.
  double overhead_fraction() const { return 1.0 / static_cast<double>(k + 1); }
  /// ((k+1)/q)^s: upper bound on the probability a blind forgery passes.
  double miss_bound() const;

  void validate() const;
};

std::vector<Symbol> gen_hash_append(std::span<const Symbol> payload, const HashParams& params);

}  // namespace ncguard
