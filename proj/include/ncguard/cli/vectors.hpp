#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace ncguard::cli {

/// Conformance vectors for the polynomial hash: (payload, hash, expect)
/// entries with expect "accept" when hash = gen_hash_append(payload) and
/// "reject" otherwise. Fields are GF(2^w) with the library's polynomials.
nlohmann::json make_hash_vectors(unsigned field_width, std::size_t k, std::size_t count, std::uint64_t seed);

struct VectorCheck {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
};

/// Re-evaluates every entry. Throws UsageError on a malformed document.
VectorCheck check_hash_vectors(const nlohmann::json& doc);

}  // namespace ncguard::cli
