#include "ncguard/cli/vectors.hpp"

#include "ncguard/errors.hpp"
#include "ncguard/hash.hpp"

namespace ncguard::cli {

using nlohmann::json;

json make_hash_vectors(unsigned field_width, std::size_t k, std::size_t count, std::uint64_t seed) {
  const FieldSpec f = Field::binary(field_width);
  const HashParams params{k, 1, f};
  params.validate();
  Rng rng(seed);

  json vectors = json::array();
  auto emit = [&](const std::vector<Symbol>& payload, const std::vector<Symbol>& hash, bool accept) {
    vectors.push_back({{"payload", payload}, {"hash", hash}, {"expect", accept ? "accept" : "reject"}});
  };

  // Fixed edge cases first: zero payload, unit payload, a short final block.
  emit(std::vector<Symbol>(k, 0), gen_hash_append(std::vector<Symbol>(k, 0), params), true);
  emit(std::vector<Symbol>(k, 1), gen_hash_append(std::vector<Symbol>(k, 1), params), true);
  std::vector<Symbol> ragged(k + 1 + k / 2);
  for (Symbol& s : ragged) s = f->random(rng);
  emit(ragged, gen_hash_append(ragged, params), true);

  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Symbol> payload(1 + rng() % (3 * k));
    for (Symbol& s : payload) s = f->random(rng);
    std::vector<Symbol> hash = gen_hash_append(payload, params);
    if (i % 2 == 0) {
      emit(payload, hash, true);
      continue;
    }
    if (i % 4 == 1) {
      const std::size_t j = rng() % hash.size();
      hash[j] = f->add(hash[j], f->random_nonzero(rng));
    } else {
      // Change one payload symbol whose hash term actually moves.
      for (;;) {
        const std::size_t j = rng() % payload.size();
        const Symbol old = payload[j];
        payload[j] = f->add(old, f->random_nonzero(rng));
        if (gen_hash_append(payload, params) != hash) break;
        payload[j] = old;
      }
    }
    emit(payload, hash, false);
  }

  return {{"field", {{"kind", "binary"}, {"width", field_width}, {"polynomial", Field::default_polynomial(field_width)}}},
          {"k", k},
          {"exponent", "h = sum_i x_i^(i+1) per block of k symbols, zero padded"},
          {"vectors", vectors}};
}

VectorCheck check_hash_vectors(const json& doc) {
  VectorCheck out;
  try {
    const auto& field = doc.at("field");
    if (field.at("kind").get<std::string>() != "binary") throw UsageError("only binary fields are supported");
    const auto width = field.at("width").get<unsigned>();
    if (field.at("polynomial").get<std::uint32_t>() != Field::default_polynomial(width)) {
      throw UsageError("vector file uses a different reduction polynomial");
    }
    const HashParams params{doc.at("k").get<std::size_t>(), 1, Field::binary(width)};
    params.validate();
    std::size_t index = 0;
    for (const auto& v : doc.at("vectors")) {
      const auto payload = v.at("payload").get<std::vector<Symbol>>();
      const auto hash = v.at("hash").get<std::vector<Symbol>>();
      const std::string expect = v.at("expect").get<std::string>();
      if (expect != "accept" && expect != "reject") throw UsageError("expect must be accept or reject");
      const bool accept = gen_hash_append(payload, params) == hash;
      if (accept == (expect == "accept")) {
        ++out.passed;
      } else {
        if (out.failed == 0) out.first_failure = "vector " + std::to_string(index) + " expected " + expect;
        ++out.failed;
      }
      ++index;
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed vector file: ") + e.what());
  }
  return out;
}

}  // namespace ncguard::cli
