#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ncguard/analytic.hpp"
#include "ncguard/errors.hpp"

using namespace ncguard;

namespace {

double grid_argmax(std::size_t G, double n, double step) {
  const double h_g = 0.02 * n * static_cast<double>(G);
  double best_p = 0.0, best = -1.0;
  const auto steps = static_cast<long>(std::llround(1.0 / step));
  for (long i = 0; i <= steps; ++i) {
    const double p = static_cast<double>(i) * step;
    const double v = overhead_generation(p, n, G, h_g);
    if (v > best) {
      best = v;
      best_p = p;
    }
  }
  return best_p;
}

double bisect_crossover(double n, double h_p) {
  double lo = 0.0, hi = 1.0;
  auto gap = [&](double p) { return overhead_error_correction(p) - overhead_packet(p, n, h_p); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(ErrorCorrection, Examples) {
  EXPECT_EQ(overhead_error_correction(0.0), 0.0);
  EXPECT_EQ(overhead_error_correction(0.03), 0.03);
  EXPECT_EQ(overhead_error_correction(0.5), 0.5);
  EXPECT_THROW(overhead_error_correction(1.1), UsageError);
  EXPECT_THROW(overhead_error_correction(-0.1), UsageError);
}

TEST(Packet, Examples) {
  EXPECT_NEAR(overhead_packet(0.0, 1000, 60), 0.06, 1e-15);
  EXPECT_EQ(overhead_packet(0.06, 1000, 60), 0.0);
  EXPECT_EQ(overhead_packet(0.5, 1000, 60), 0.0);
  EXPECT_THROW(overhead_packet(0.1, 1000, 1001), UsageError);
}

TEST(Packet, MonteCarloOracle) {
  // 10^5 packets, each corrupted with probability 0.02; hash bits paid on all,
  // corrupted bits saved.
  std::mt19937_64 rng(71);
  std::bernoulli_distribution hit(0.02);
  const double n = 1000, h_p = 60;
  double wasted = 0.0;
  const int packets = 100000;
  for (int i = 0; i < packets; ++i) wasted += h_p - (hit(rng) ? n : 0.0);
  const double empirical = std::max(0.0, wasted) / (packets * n);
  const double sigma = std::sqrt(0.02 * 0.98 / packets);
  EXPECT_NEAR(overhead_packet(0.02, n, h_p), empirical, 3.0 * sigma);
  EXPECT_NEAR(overhead_packet(0.02, n, h_p), 0.04, 1e-15);
}

TEST(Generation, Examples) {
  const auto d = SchemeParams::defaults();
  EXPECT_NEAR(overhead_generation(0.0, d.n, d.G, d.h_g), 0.02, 1e-15);
  EXPECT_EQ(overhead_generation(1.0, d.n, d.G, d.h_g), 0.0);
  EXPECT_THROW(overhead_generation(0.5, 1000, 0, 0), UsageError);
  EXPECT_THROW(overhead_generation(0.5, 1000, 10, 10001), UsageError);
}

TEST(Generation, SinglePacketReduction) {
  const double n = 1000, h = 60;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    EXPECT_NEAR(overhead_generation(p, n, 1, h), std::max(0.0, h - p * p * n) / n, 1e-12);
  }
}

TEST(Generation, SinglePacketMonteCarlo) {
  // A one-packet generation is dropped iff its packet is corrupted.
  std::mt19937_64 rng(72);
  const double n = 1000, h = 60, p = 0.03;
  std::bernoulli_distribution hit(p);
  const int gens = 200000;
  double raw = 0.0;
  for (int i = 0; i < gens; ++i) raw += h - (hit(rng) ? n : 0.0);
  const double empirical = std::max(0.0, raw) / (gens * n);
  const double sigma = std::sqrt(p * (1 - p) / gens);
  EXPECT_NEAR(empirical, overhead_generation(p, n, 1, h), 3.0 * sigma)
      << "exact expectation " << overhead_generation_exact(p, n, 1, h);
}

TEST(Generation, SinglePacketExactExpectation) {
  std::mt19937_64 rng(72);
  const double n = 1000, h = 60, p = 0.03;
  std::bernoulli_distribution hit(p);
  const int gens = 200000;
  double raw = 0.0;
  for (int i = 0; i < gens; ++i) raw += h - (hit(rng) ? n : 0.0);
  const double empirical = std::max(0.0, raw) / (gens * n);
  const double sigma = std::sqrt(p * (1 - p) / gens);
  EXPECT_NEAR(empirical, overhead_generation_exact(p, n, 1, h), 3.0 * sigma);
  EXPECT_NEAR(overhead_generation(p, n, 1, h) - overhead_generation_exact(p, n, 1, h), p * (1.0 - p), 1e-12);
}

TEST(Generation, ExactExpectationByEnumeration) {
  // Sum over the number of corrupted packets c ~ Binomial(G, p).
  const double n = 1000;
  for (std::size_t G : {1U, 2U, 5U, 10U, 20U}) {
    const double h_g = 0.02 * n * static_cast<double>(G);
    for (double p : {0.0, 0.01, 0.05, 0.1, 0.3, 0.5, 0.9}) {
      double mean = h_g;
      for (std::size_t c = 1; c <= G; ++c) {
        const double prob = std::tgamma(G + 1.0) / (std::tgamma(c + 1.0) * std::tgamma(G - c + 1.0)) *
                            std::pow(p, static_cast<double>(c)) * std::pow(1 - p, static_cast<double>(G - c));
        mean += prob * n * (static_cast<double>(G - c) - static_cast<double>(c));
      }
      const double nG = n * static_cast<double>(G);
      EXPECT_NEAR(overhead_generation_exact(p, n, G, h_g), std::max(0.0, mean) / nG, 1e-9);
      EXPECT_NEAR(overhead_generation(p, n, G, h_g) - overhead_generation_exact(p, n, G, h_g),
                  p * std::pow(1 - p, static_cast<double>(G)),
                  overhead_generation_exact(p, n, G, h_g) == 0.0 ? 1.0 : 1e-9);
    }
  }
}

TEST(Drop, Examples) {
  EXPECT_NEAR(drop_probability(0.3, 1), 0.3, 1e-15);
  EXPECT_EQ(drop_probability(0.0, 17), 0.0);
  double keep = 1.0;
  for (int i = 0; i < 50; ++i) keep *= 0.99;
  EXPECT_NEAR(drop_probability(0.01, 50), 1.0 - keep, 1e-12);
  EXPECT_NEAR(drop_probability(0.01, 50), 0.3950, 5e-5);
  EXPECT_THROW(drop_probability(0.1, 0), UsageError);
}

TEST(Goodput, Examples) {
  EXPECT_EQ(goodput_fraction_packet(1000, 0), 1.0);
  EXPECT_EQ(goodput_fraction_packet(1000, 1000), 0.0);
  EXPECT_NEAR(goodput_fraction_packet(1000, 60), 0.94, 1e-15);
  EXPECT_EQ(goodput_fraction_generation(1000, 10, 0), 1.0);
  EXPECT_NEAR(goodput_fraction_generation(1000, 10, 200), 0.98, 1e-15);
  EXPECT_GT(goodput_fraction_generation(1000, 1000000, 200), 1.0 - 1e-6);
}

TEST(Limit, Examples) {
  EXPECT_EQ(generation_limit(0.5), 0.0);
  EXPECT_EQ(generation_limit(0.0), 1.0);
  EXPECT_NEAR(generation_limit(0.1), 0.8, 1e-15);
  EXPECT_NEAR(overhead_generation(0.1, 1000, 500, 20), 0.8, 1e-3);
}

TEST(Peak, Examples) {
  EXPECT_EQ(peak_attack_probability(1), 0.0);
  EXPECT_EQ(grid_argmax(1, 1000, 1e-4), 0.0);
  EXPECT_NEAR(peak_attack_probability(5), 0.197, 5e-4);
  EXPECT_NEAR(peak_attack_probability(5), grid_argmax(5, 1000, 1e-4), 1e-4);
  EXPECT_NEAR(peak_attack_probability(20), 0.111, 5e-4);
  EXPECT_NEAR(peak_attack_probability(20), grid_argmax(20, 1000, 1e-4), 1e-4);
}

TEST(Crossover, Examples) {
  EXPECT_NEAR(crossover_ec_vs_packet(1000, 60), 0.03, 1e-12);
  EXPECT_EQ(crossover_ec_vs_packet(1000, 0), 0.0);
  EXPECT_NEAR(crossover_ec_vs_packet(1000, 100), 0.05, 1e-12);
  EXPECT_NEAR(bisect_crossover(1000, 100), 0.05, 1e-12);
  EXPECT_NEAR(bisect_crossover(1000, 60), crossover_ec_vs_packet(1000, 60), 1e-12);
}

TEST(AnalyticProperty, RatiosInUnitInterval) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20000; ++t) {
    const double n = 1.0 + 1e4 * u(rng);
    const double p = u(rng), h_p = n * u(rng);
    for (double r : {overhead_error_correction(p), overhead_packet(p, n, h_p), generation_limit(p)}) {
      ASSERT_GE(r, 0.0);
      ASSERT_LE(r, 1.0);
    }
  }
}

TEST(AnalyticProperty, GenerationRatioInUnitInterval) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20000; ++t) {
    const double n = 1.0 + 1e4 * u(rng);
    const std::size_t G = 1 + rng() % 200;
    const double p = u(rng), h_g = n * static_cast<double>(G) * u(rng);
    const double r = overhead_generation(p, n, G, h_g);
    ASSERT_GE(r, 0.0);
    ASSERT_LE(r, 1.0) << "p=" << p << " G=" << G << " h_g/(nG)=" << h_g / (n * static_cast<double>(G));
  }
}

TEST(AnalyticProperty, GenerationRatioAtDefaultsInUnitInterval) {
  for (std::size_t G = 1; G <= 200; ++G) {
    for (int i = 0; i <= 1000; ++i) {
      const auto sp = SchemeParams::defaults(1000, G, i / 1000.0);
      for (double r : {overhead_generation(sp.p, sp.n, G, sp.h_g), overhead_generation_exact(sp.p, sp.n, G, sp.h_g)}) {
        ASSERT_GE(r, 0.0);
        ASSERT_LE(r, 1.0);
      }
    }
  }
}

TEST(AnalyticProperty, MonotoneAndSingleCrossing) {
  std::mt19937_64 rng(74);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double n = 100.0 + 1e4 * u(rng), h_p = n * u(rng);
    const double cross = crossover_ec_vs_packet(n, h_p);
    int sign_changes = 0;
    double prev_gap = overhead_error_correction(0.0) - overhead_packet(0.0, n, h_p);
    for (int i = 1; i <= 1000; ++i) {
      const double p = i / 1000.0, q = (i - 1) / 1000.0;
      ASSERT_LE(overhead_packet(p, n, h_p), overhead_packet(q, n, h_p));
      ASSERT_GT(overhead_error_correction(p), overhead_error_correction(q));
      const double gap = overhead_error_correction(p) - overhead_packet(p, n, h_p);
      if ((gap > 0) != (prev_gap > 0)) ++sign_changes;
      prev_gap = gap;
    }
    EXPECT_LE(sign_changes, 1);
    EXPECT_NEAR(overhead_error_correction(cross), overhead_packet(cross, n, h_p), 1e-12);
  }
}

TEST(AnalyticProperty, ConvergesToLimit) {
  for (int i = 1; i <= 19; ++i) {
    const double p = 0.05 * i;
    EXPECT_LT(std::abs(overhead_generation(p, 1000, 1000, 20) - generation_limit(p)), 1e-3) << p;
  }
}

TEST(AnalyticProperty, PeakMatchesGridSearch) {
  for (std::size_t G = 2; G <= 64; ++G) {
    EXPECT_NEAR(peak_attack_probability(G), grid_argmax(G, 1000, 1e-4), 1e-4) << G;
  }
}

TEST(SchemeParams, DefaultsAndValidation) {
  const auto d = SchemeParams::defaults();
  EXPECT_EQ(d.n, 1000.0);
  EXPECT_NEAR(d.h_p, 60.0, 1e-12);
  EXPECT_NEAR(d.h_g, 200.0, 1e-12);
  EXPECT_NO_THROW(d.validate());
  auto bad = d;
  bad.G = 0;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = d;
  bad.p = 2;
  EXPECT_THROW(bad.validate(), UsageError);
  bad = d;
  bad.h_p = 1001;
  EXPECT_THROW(bad.validate(), UsageError);
  EXPECT_EQ(parse_scheme("generation"), Scheme::generation);
  EXPECT_EQ(to_string(Scheme::error_correction), "error-correction");
  EXPECT_THROW(parse_scheme("fec"), UsageError);
}

TEST(AnalyticPoint, BitsView) {
  auto sp = SchemeParams::defaults();
  sp.p = 0.01;
  const auto pt = analytic_point(Scheme::packet, sp);
  EXPECT_NEAR(pt.ratio, 0.05, 1e-12);
  EXPECT_NEAR(overhead_bits_per_time_unit(pt), 0.05 * 100 * 1000, 1e-9);
}
