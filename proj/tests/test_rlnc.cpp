#include <gtest/gtest.h>

#include "ncguard/algebra/matrix.hpp"
#include "ncguard/detect.hpp"
#include "ncguard/errors.hpp"
#include "ncguard/rlnc.hpp"
#include "oracles.hpp"

using namespace ncguard;

namespace {

std::vector<std::vector<Symbol>> coeff_rows(std::span<const Packet> packets) {
  std::vector<std::vector<Symbol>> rows;
  for (const Packet& p : packets) rows.push_back(p.coeffs);
  return rows;
}

// C * X over the field, one output row per packet, compared with the packet's payload.
bool explains(const Field& f, std::span<const Packet> packets, const Matrix& X) {
  for (const Packet& p : packets) {
    for (std::size_t c = 0; c < X.cols(); ++c) {
      Symbol acc = 0;
      for (std::size_t j = 0; j < p.coeffs.size(); ++j) acc = f.add(acc, oracle::slow_mul(f, p.coeffs[j], X.at(j, c)));
      if (acc != p.payload[c]) return false;
    }
  }
  return true;
}

std::vector<FieldSpec> round_trip_fields() {
  return {Field::binary(2), Field::binary(4), Field::binary(7), Field::binary(8), Field::prime(127),
          Field::prime(2147483647ULL)};
}

}  // namespace

TEST(Matrix, RankAgreesWithNaiveOracle) {
  Rng rng(21);
  for (const FieldSpec& f : {Field::binary(2), Field::binary(8), Field::prime(127)}) {
    for (int t = 0; t < 300; ++t) {
      const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
      std::vector<std::vector<Symbol>> data(rows, std::vector<Symbol>(cols));
      Matrix m(f, 0, cols);
      for (auto& row : data) {
        for (Symbol& s : row) s = f->random(rng);
        if (rng() % 4 == 0) row = data.front();
        m.append_row(row);
      }
      ASSERT_EQ(rank(m), oracle::naive_rank(*f, data));
    }
  }
}

TEST(Matrix, NullSpaceIsOrthogonalAndComplete) {
  Rng rng(22);
  auto f = Field::prime(127);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng() % 5, cols = rows + rng() % 5;
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (Symbol& s : m.row(r)) s = f->random(rng);
    }
    const auto basis = null_space(m);
    ASSERT_EQ(basis.size(), cols - rank(m));
    for (const auto& u : basis) {
      for (std::size_t r = 0; r < rows; ++r) ASSERT_EQ(dot(*f, m.row(r), u), 0U);
    }
    Matrix b(f, 0, cols);
    for (const auto& u : basis) b.append_row(u);
    EXPECT_EQ(rank(b), basis.size());
  }
}

TEST(Matrix, WidthMismatch) {
  Matrix m(Field::binary(8), 0, 3);
  std::vector<Symbol> row(2, 0);
  EXPECT_THROW(m.append_row(row), UsageError);
}

TEST(Generation, SinglePacket) {
  auto f = Field::binary(8);
  Rng rng(1);
  auto bundle = make_generation(0, random_payloads(f, 1, 4, rng), {1, 4, 0, 8});
  ASSERT_EQ(bundle.packets.size(), 1U);
  EXPECT_EQ(bundle.packets[0].coeffs, std::vector<Symbol>{1});
}

TEST(Generation, ZeroPayloads) {
  auto f = Field::binary(8);
  auto bundle = make_generation(3, Matrix(f, 4, 6), {4, 6, 0, 8});
  ASSERT_EQ(bundle.packets.size(), 4U);
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Symbol> e(4, 0);
    e[i] = 1;
    EXPECT_EQ(bundle.packets[i].coeffs, e);
    EXPECT_EQ(bundle.packets[i].payload, std::vector<Symbol>(6, 0));
    EXPECT_EQ(bundle.packets[i].generation_id, 3U);
  }
}

TEST(Generation, HashedTwoPercent) {
  auto f = Field::binary(8);
  HashParams hash{50, 1, f};
  Rng rng(2);
  const GenerationParams params{50, 50, hash.symbol_count(50), 8};
  auto bundle = make_generation(0, random_payloads(f, 50, 50, rng), params, &hash);
  for (const Packet& p : bundle.packets) {
    ASSERT_EQ(p.hash.size(), 1U);
    EXPECT_EQ(p.hash, oracle::naive_hash(*f, p.payload, 50));
  }
  const double fraction = static_cast<double>(params.hash_symbols) / static_cast<double>(params.k_data + params.hash_symbols);
  EXPECT_NEAR(fraction, 1.0 / 51.0, 1e-12);
  EXPECT_NEAR(hash.overhead_fraction(), 0.0196, 1e-4);
}

TEST(Generation, DimensionMismatch) {
  auto f = Field::binary(8);
  EXPECT_THROW(make_generation(0, Matrix(f, 3, 6), {4, 6, 0, 8}), UsageError);
  HashParams hash{50, 1, Field::binary(7)};
  EXPECT_THROW(make_generation(0, Matrix(f, 4, 6), {4, 6, 1, 8}, &hash), UsageError);
}

TEST(GenerationParams, WireSizeIdentity) {
  const auto p = GenerationParams::with_wire_size(1000, 10, 115, 0, 8);
  EXPECT_EQ(p.packet_bits(), 1000U);
  EXPECT_THROW(GenerationParams::with_wire_size(1000, 10, 100, 0, 8), UsageError);
  HashParams hash{50, 1, Field::binary(8)};
  const auto fitted = GenerationParams::fit(1000, 10, 8, &hash);
  EXPECT_EQ(fitted.packet_bits(), 1000U);
  EXPECT_EQ(fitted.hash_symbols, hash.symbol_count(fitted.k_data));
  EXPECT_THROW(GenerationParams::fit(1001, 10, 8), UsageError);
  EXPECT_THROW(GenerationParams::fit(80, 10, 8), UsageError);
}

TEST(Combine, SingletonIdentity) {
  auto f = Field::binary(8);
  Rng rng(4);
  auto bundle = make_generation(0, random_payloads(f, 3, 5, rng), {3, 5, 0, 8});
  const std::vector<Symbol> one{1};
  const Packet out = linear_combine(*f, std::span<const Packet>(bundle.packets.data(), 1), one);
  EXPECT_EQ(static_cast<const CodedPacket&>(out), static_cast<const CodedPacket&>(bundle.packets[0]));
}

TEST(Combine, TwoSourcesSupport) {
  auto f = Field::binary(8);
  Rng rng(5);
  auto bundle = make_generation(0, random_payloads(f, 6, 5, rng), {6, 5, 0, 8});
  const std::vector<Packet> two{bundle.packets[1], bundle.packets[4]};
  for (int t = 0; t < 100; ++t) {
    const Packet out = random_combine(*f, two, rng);
    for (std::size_t j = 0; j < 6; ++j) {
      if (j != 1 && j != 4) {
        EXPECT_EQ(out.coeffs[j], 0U);
      }
    }
    EXPECT_TRUE(oracle_verify(out, bundle.generation));
  }
}

TEST(Combine, MixedGenerationsRejected) {
  auto f = Field::binary(8);
  Rng rng(6);
  auto a = make_generation(0, random_payloads(f, 2, 3, rng), {2, 3, 0, 8});
  auto b = make_generation(1, random_payloads(f, 2, 3, rng), {2, 3, 0, 8});
  const std::vector<Packet> mixed{a.packets[0], b.packets[0]};
  EXPECT_THROW(random_combine(*f, mixed, rng), UsageError);
  EXPECT_THROW(subgeneration_view(mixed, 2), UsageError);
  EXPECT_THROW(random_combine(*f, std::span<const Packet>(), rng), UsageError);
}

TEST(CombineProperty, SubspaceClosure) {
  Rng rng(7);
  for (const FieldSpec& f : round_trip_fields()) {
    HashParams hash{3, 1, f};
    auto bundle = make_generation(0, random_payloads(f, 5, 7, rng), {5, 7, hash.symbol_count(7), f->symbol_bits()}, &hash);
    std::vector<Packet> pool = bundle.packets;
    for (int t = 0; t < 100; ++t) {
      std::vector<Packet> pick;
      for (int i = 0; i < 3; ++i) pick.push_back(pool[rng() % pool.size()]);
      const Packet out = random_combine(*f, pick, rng);
      ASSERT_TRUE(oracle_verify(out, bundle.generation));
      pool.push_back(out);
    }
  }
}

TEST(Decode, UnitVectorsReturnSources) {
  auto f = Field::binary(8);
  Rng rng(8);
  auto bundle = make_generation(0, random_payloads(f, 8, 10, rng), {8, 10, 0, 8});
  auto result = decode(f, std::span<const Packet>(bundle.packets), 8);
  ASSERT_TRUE(std::holds_alternative<DecodedGeneration>(result));
  EXPECT_EQ(std::get<DecodedGeneration>(result).payloads, bundle.generation.payloads());
}

TEST(Decode, RandomCombinationsAgainstOracle) {
  auto f = Field::binary(8);
  Rng rng(9);
  std::size_t singular = 0;
  for (int t = 0; t < 2000; ++t) {
    auto bundle = make_generation(0, random_payloads(f, 8, 6, rng), {8, 6, 0, 8});
    std::vector<Packet> rx;
    for (int i = 0; i < 8; ++i) rx.push_back(random_combine(*f, bundle.packets, rng));
    const bool full = oracle::naive_rank(*f, coeff_rows(rx)) == 8;
    auto result = decode(f, std::span<const Packet>(rx), 8);
    ASSERT_EQ(std::holds_alternative<DecodedGeneration>(result), full);
    if (full) {
      const Matrix& X = std::get<DecodedGeneration>(result).payloads;
      ASSERT_TRUE(explains(*f, rx, X));
      ASSERT_EQ(X, bundle.generation.payloads());
    } else {
      ++singular;
    }
  }
  // P(singular 8x8 over GF(256)) = 1 - prod_{i=1..8}(1 - 256^-i), about 1/255.
  double nonsingular = 1.0;
  for (int i = 1; i <= 8; ++i) nonsingular *= 1.0 - std::pow(256.0, -i);
  const double expected = 2000.0 * (1.0 - nonsingular);
  EXPECT_LE(static_cast<double>(singular), expected + 4.0 * std::sqrt(expected) + 1.0);
}

TEST(Decode, TooFewPackets) {
  auto f = Field::binary(8);
  Rng rng(10);
  auto bundle = make_generation(0, random_payloads(f, 8, 6, rng), {8, 6, 0, 8});
  std::vector<Packet> rx(bundle.packets.begin(), bundle.packets.begin() + 7);
  auto result = decode(f, std::span<const Packet>(rx), 8);
  ASSERT_TRUE(std::holds_alternative<NotDecodable>(result));
  EXPECT_EQ(std::get<NotDecodable>(result).rank, 7U);
  EXPECT_TRUE(std::holds_alternative<NotDecodable>(decode(f, std::span<const Packet>(), 8)));
}

TEST(DecodeProperty, RoundTrip) {
  Rng rng(11);
  for (const FieldSpec& f : round_trip_fields()) {
    for (std::size_t G : {1U, 2U, 4U, 8U, 16U, 50U}) {
      for (int t = 0; t < 4; ++t) {
        auto bundle = make_generation(0, random_payloads(f, G, 5, rng), {G, 5, 0, f->symbol_bits()});
        std::vector<Packet> rx;
        while (rx.size() < G || oracle::naive_rank(*f, coeff_rows(rx)) < G) {
          rx.push_back(random_combine(*f, bundle.packets, rng));
        }
        auto result = decode(f, std::span<const Packet>(rx), G);
        ASSERT_TRUE(std::holds_alternative<DecodedGeneration>(result)) << f->name() << " G=" << G;
        EXPECT_EQ(std::get<DecodedGeneration>(result).payloads, bundle.generation.payloads());
        EXPECT_EQ(std::get<DecodedGeneration>(result).inconsistent_rows, 0U);
      }
    }
  }
}

TEST(DecodeProperty, NeverFabricates) {
  auto f = Field::binary(8);
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    auto bundle = make_generation(0, random_payloads(f, 6, 4, rng), {6, 4, 0, 8});
    std::vector<Packet> rx;
    for (int i = 0; i < 6; ++i) rx.push_back(random_combine(*f, bundle.packets, rng));
    const std::size_t victim = rng() % 6;
    const std::size_t sym = rng() % 4;
    rx[victim].payload[sym] = f->add(rx[victim].payload[sym], f->random_nonzero(rng));
    auto result = decode(f, std::span<const Packet>(rx), 6);
    if (std::holds_alternative<DecodedGeneration>(result)) {
      EXPECT_FALSE(std::get<DecodedGeneration>(result).payloads == bundle.generation.payloads());
    }
  }
}

TEST(SubGenerationView, Shapes) {
  auto f = Field::binary(8);
  Rng rng(13);
  auto bundle = make_generation(0, random_payloads(f, 8, 4, rng), {8, 4, 0, 8});
  const auto full = subgeneration_view(bundle.packets, 8);
  EXPECT_TRUE(full.complete());
  EXPECT_EQ(full.G, 8U);
  EXPECT_EQ(full.packets.size(), 8U);

  const auto b = subgeneration_view(std::span<const Packet>(bundle.packets.data(), 4), 4);
  const auto c = subgeneration_view(std::span<const Packet>(bundle.packets.data() + 4, 4), 4);
  EXPECT_TRUE(b.complete());
  EXPECT_TRUE(c.complete());

  const auto empty = subgeneration_view(std::span<const Packet>(), 0);
  EXPECT_TRUE(empty.packets.empty());
  EXPECT_TRUE(empty.complete());
}
