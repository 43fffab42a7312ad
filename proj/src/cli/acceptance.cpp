#include "ncguard/cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "ncguard/adversary.hpp"
#include "ncguard/analytic.hpp"
#include "ncguard/detect.hpp"
#include "ncguard/errors.hpp"
#include "ncguard/fig2.hpp"
#include "ncguard/signature.hpp"
#include "ncguard/sim.hpp"

namespace ncguard::cli {
namespace {

// Tolerances.
constexpr double kCrossoverTol = 1e-12;
constexpr double kPeakLo = 0.15, kPeakHi = 0.25, kPeakGridStep = 1e-4, kPeakTol = 1e-4;
constexpr double kAsymptoteTol = 1e-3;
constexpr double kSigmas = 3.0;
constexpr double kMonteCarloFloor = 0.005;
constexpr double kMiss7 = 0.011, kMiss8 = 0.010;
constexpr double kFig2Detect = 0.98;

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

CriterionResult crossover(const ValidateOptions& o) {
  const double n = 1000, h_p = 60;
  const double p = o.hooks.crossover(n, h_p);
  const double ec = o.hooks.error_correction(p), pk = o.hooks.packet(p, n, h_p);
  CriterionResult r;
  r.pass = std::abs(p - 0.03) <= kCrossoverTol && std::abs(ec - pk) <= kCrossoverTol;
  r.measured = fmt("p=%.15g", p) + fmt(" ec=%.15g", ec) + fmt(" packet=%.15g", pk);
  r.expected = "p=0.03, curves equal within 1e-12";
  return r;
}

CriterionResult peak(const ValidateOptions& o) {
  const std::size_t G = 5;
  const double n = 1000, h_g = 0.02 * n * G;
  const double closed = o.hooks.peak(G);
  double best = -1.0, arg = 0.0;
  const auto steps = static_cast<long>(std::llround(1.0 / kPeakGridStep));
  for (long i = 0; i <= steps; ++i) {
    const double p = static_cast<double>(i) * kPeakGridStep;
    const double v = o.hooks.generation(p, n, G, h_g);
    if (v > best) {
      best = v;
      arg = p;
    }
  }
  CriterionResult r;
  r.pass = closed >= kPeakLo && closed <= kPeakHi && std::abs(closed - arg) <= kPeakTol;
  r.measured = fmt("closed form %.6f", closed) + fmt(", grid argmax %.4f", arg);
  r.expected = "in [0.15, 0.25], |closed - argmax| <= 1e-4";
  return r;
}

CriterionResult asymptote(const ValidateOptions& o) {
  CriterionResult r;
  r.pass = true;
  double worst = 0.0;
  for (double p : {0.1, 0.2, 0.3, 0.45}) {
    const double err = std::abs(o.hooks.generation(p, 1000, 500, 20) - generation_limit(p));
    worst = std::max(worst, err);
    if (!(err < kAsymptoteTol)) r.pass = false;
  }
  r.measured = fmt("max error %.3g", worst);
  r.expected = "< 1e-3 at G=500, h_g=20";
  return r;
}

CriterionResult drop(const ValidateOptions& o) {
  TrialConfig c;
  c.scheme = Scheme::generation;
  c.params = SchemeParams::defaults(1000, 50, 0.01);
  c.attack = AttackModel{0.01, AttackMode::random_symbol, 0};
  c.trials = 1000000;
  c.seed = derive_seed(o.seed, 0.01, Scheme::generation, 50);
  c.fidelity = Fidelity::tagged;
  const EmpiricalReport rep = simulate_node(c);
  const double freq = static_cast<double>(rep.generations_dropped) / static_cast<double>(rep.generations);
  const double pg = drop_probability(0.01, 50);
  const double sigma = std::sqrt(pg * (1 - pg) / static_cast<double>(rep.generations));
  CriterionResult r;
  r.pass = std::abs(freq - pg) <= kSigmas * sigma;
  r.measured = fmt("%.5f", freq) + fmt(" over %.0f generations", static_cast<double>(rep.generations));
  r.expected = fmt("%.5f", pg) + fmt(" +- %.5f", kSigmas * sigma);
  return r;
}

CriterionResult montecarlo(const ValidateOptions& o) {
  const auto grid = linear_grid(0.0, 1.0, 0.05);
  const SchemeParams params = SchemeParams::defaults(1000, 10);
  std::ostringstream measured;
  bool pass = true;
  for (Scheme s : {Scheme::error_correction, Scheme::packet, Scheme::generation}) {
    GridOptions g;
    // 1000 time units of m = 100 packets, or 10^4 generations.
    g.trials = s == Scheme::generation ? 10000 : 1000;
    g.seed = o.seed;
    g.threads = o.threads;
    const auto points = compare_grid(grid, {s}, params, g);
    std::size_t bad = 0;
    double worst = 0.0, worst_p = 0.0, worst_dev = 0.0;
    for (const GridPoint& gp : points) {
      const double analytic = s == Scheme::error_correction ? o.hooks.error_correction(gp.analytic.params.p)
                              : s == Scheme::packet ? o.hooks.packet(gp.analytic.params.p, params.n, params.h_p)
                                                    : o.hooks.generation(gp.analytic.params.p, params.n, params.G,
                                                                         params.h_g);
      const double dev = std::abs(gp.empirical->overhead_ratio - analytic);
      const double tol = std::max(kSigmas * gp.empirical->stderr_ratio, kMonteCarloFloor);
      if (dev > tol) ++bad;
      if (dev / tol > worst) {
        worst = dev / tol;
        worst_p = gp.analytic.params.p;
        worst_dev = dev;
      }
    }
    if (bad != 0) pass = false;
    measured << to_string(s) << ' ' << (points.size() - bad) << '/' << points.size() << " within"
             << fmt(" (worst p=%.2f", worst_p) << fmt(" |dev|=%.4f", worst_dev) << fmt(" = %.2f x tol)", worst);
    if (s == Scheme::generation) {
      double worst_exact = 0.0;
      for (const GridPoint& gp : points) {
        const double exact = overhead_generation_exact(gp.analytic.params.p, params.n, params.G, params.h_g);
        const double tol = std::max(kSigmas * gp.empirical->stderr_ratio, kMonteCarloFloor);
        worst_exact = std::max(worst_exact, std::abs(gp.empirical->overhead_ratio - exact) / tol);
      }
      measured << fmt("; vs exact expectation worst %.2f x tol", worst_exact);
    } else {
      measured << "; ";
    }
  }
  CriterionResult r;
  r.pass = pass;
  r.measured = measured.str();
  r.expected = "|empirical - analytic| <= max(3 stderr, 0.005) at all 21 points";
  return r;
}

// Miss rate of blind forgeries of s received packets in a full generation.
double blind_miss_rate(unsigned logq, std::size_t k, std::size_t s, std::size_t G, std::size_t trials,
                       std::uint64_t seed) {
  const FieldSpec f = Field::binary(logq);
  const HashParams hash{k, s, f};
  const GenerationParams params{G, k, hash.symbol_count(k), f->symbol_bits()};
  Rng rng(seed);
  std::size_t misses = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto bundle = make_generation(t, random_payloads(f, G, k, rng), params, &hash);
    std::vector<Packet> rx;
    for (;;) {
      rx.clear();
      for (std::size_t i = 0; i < G; ++i) rx.push_back(random_combine(*f, bundle.packets, rng));
      if (std::holds_alternative<DecodedGeneration>(decode(f, std::span<const Packet>(rx), G))) break;
    }
    rx = blind_forge_generation(std::move(rx), s, hash, rng);
    const auto decoded = decode(f, std::span<const Packet>(rx), G);
    if (gen_hash_verify(std::get<DecodedGeneration>(decoded), hash) == Verdict::valid) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(trials);
}

CriterionResult hash_bound(const ValidateOptions& o) {
  const double m7 = blind_miss_rate(7, 50, 5, 10, 10000, derive_seed(o.seed, 7, Scheme::generation, 50));
  const double m8 = blind_miss_rate(8, 100, 5, 10, 10000, derive_seed(o.seed, 8, Scheme::generation, 100));
  CriterionResult r;
  r.pass = m7 <= kMiss7 && m8 <= kMiss8;
  r.measured = fmt("miss k=50,logq=7: %.4f", m7) + fmt("; k=100,logq=8: %.4f", m8);
  r.expected = "<= 0.011; <= 0.010 (s=5, 10^4 generations each)";
  return r;
}

CriterionResult signature(const ValidateOptions& o) {
  const GroupSpec group = default_group();
  const FieldSpec f = Field::prime(static_cast<std::uint64_t>(group.subgroup_order()));
  Rng rng(derive_seed(o.seed, 0.0, Scheme::packet, 0));
  const std::size_t G = 4, k_data = 8;
  std::size_t accepted = 0, rejected = 0;
  for (int g = 0; g < 100; ++g) {
    auto bundle = make_generation(g, random_payloads(f, G, k_data, rng), {G, k_data, 0, f->symbol_bits()});
    const SignatureKey key = sig_keygen(bundle.generation, group, rng);
    for (int i = 0; i < 1000; ++i) {
      if (sig_verify(random_combine(*f, bundle.packets, rng), key) == SigVerdict::accept) ++accepted;
    }
    for (int i = 0; i < 100; ++i) {
      Packet p = random_combine(*f, bundle.packets, rng);
      corrupt_packet(p, AttackMode::random_symbol, *f, nullptr, rng);
      if (sig_verify(p, key) == SigVerdict::reject) ++rejected;
    }
  }
  const bool big = group.subgroup_order() >= (BigUint(1) << 31);
  CriterionResult r;
  r.pass = accepted == 100000 && rejected == 10000 && big;
  r.measured = std::to_string(accepted) + "/100000 accepted, " + std::to_string(rejected) +
               "/10000 rejected, log2 P = " + std::to_string(group.subgroup_bits());
  r.expected = "all accepted, all rejected, P >= 2^31";
  return r;
}

// Rank by plain elimination on a copy, one pivot per column.
std::size_t reference_rank(const Field& f, std::vector<std::vector<Symbol>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Symbol factor = f.div(rows[i][c], rows[r][c]);
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[r][j]));
    }
    if (++r == rows.size()) break;
  }
  return r;
}

CriterionResult roundtrip(const ValidateOptions& o) {
  const std::vector<FieldSpec> fields{Field::binary(2), Field::binary(4), Field::binary(7), Field::binary(8),
                                      Field::prime(127), Field::prime(2147483647ULL)};
  const std::vector<std::size_t> sizes{1, 2, 4, 8, 16, 50};
  Rng rng(derive_seed(o.seed, 0.0, Scheme::error_correction, 8));
  std::size_t exact = 0, deficient = 0, agree = 0;
  const std::size_t instances = 1000;
  for (std::size_t t = 0; t < instances; ++t) {
    const FieldSpec& f = fields[rng() % fields.size()];
    const std::size_t G = sizes[rng() % sizes.size()];
    const std::size_t k_data = 1 + rng() % 8;
    auto bundle = make_generation(t, random_payloads(f, G, k_data, rng), {G, k_data, 0, f->symbol_bits()});
    std::vector<Packet> rx;
    const bool short_set = rng() % 4 == 0;
    if (short_set) {
      // Deliberately rank deficient: combinations of at most G - 1 sources.
      const std::size_t keep = G - 1;
      for (std::size_t i = 0; i < G + 1 && keep > 0; ++i) {
        rx.push_back(random_combine(*f, std::span<const Packet>(bundle.packets.data(), keep), rng));
      }
    } else {
      for (std::size_t i = 0; i < G + rng() % 3; ++i) rx.push_back(random_combine(*f, bundle.packets, rng));
    }
    std::vector<std::vector<Symbol>> rows;
    for (const Packet& p : rx) rows.push_back(p.coeffs);
    const std::size_t ref = reference_rank(*f, rows);
    const auto result = decode(f, std::span<const Packet>(rx), G);
    bool ok;
    if (ref == G) {
      ok = std::holds_alternative<DecodedGeneration>(result) &&
           std::get<DecodedGeneration>(result).payloads == bundle.generation.payloads();
      ++exact;
    } else {
      ok = std::holds_alternative<NotDecodable>(result) && std::get<NotDecodable>(result).rank == ref;
      ++deficient;
    }
    if (ok) ++agree;
  }
  CriterionResult r;
  r.pass = agree == instances;
  r.measured = std::to_string(agree) + "/" + std::to_string(instances) + " agree (" + std::to_string(exact) +
               " full rank, " + std::to_string(deficient) + " deficient)";
  r.expected = "all agree with reference elimination";
  return r;
}

CriterionResult fig2(const ValidateOptions& o) {
  std::size_t injected = 0, flagged = 0, fired = 0, clean_after_fire = 0;
  for (std::size_t t = 0; t < 1000; ++t) {
    const Fig2Report rep = simulate_fig2(8, {{"A->B", 0.2}}, derive_seed(o.seed, 0.2, Scheme::generation, t));
    const bool polluted = rep.corrupted_per_edge.count("A->B") != 0;
    if (polluted) ++injected;
    const bool b = rep.node(Fig2Node::B).flagged();
    if (polluted && b) ++flagged;
    if (b) {
      ++fired;
      if (rep.f_decoded_clean) ++clean_after_fire;
    }
  }
  const double rate = injected ? static_cast<double>(flagged) / static_cast<double>(injected) : 0.0;
  CriterionResult r;
  r.pass = injected > 0 && rate >= kFig2Detect && clean_after_fire == fired;
  r.measured = fmt("B flagged %.4f", rate) + " of " + std::to_string(injected) + " polluted trials; F clean in " +
               std::to_string(clean_after_fire) + "/" + std::to_string(fired) + " filtered trials";
  r.expected = ">= 0.98 flagged, F clean whenever B filtered";
  return r;
}

using Runner = CriterionResult (*)(const ValidateOptions&);

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r{
      {"crossover", crossover}, {"peak", peak},           {"asymptote", asymptote},
      {"drop", drop},           {"montecarlo", montecarlo}, {"hash-bound", hash_bound},
      {"signature", signature}, {"roundtrip", roundtrip}, {"fig2", fig2}};
  return r;
}

}  // namespace

AnalyticHooks AnalyticHooks::defaults() {
  AnalyticHooks h;
  h.error_correction = [](double p) { return overhead_error_correction(p); };
  h.packet = [](double p, double n, double h_p) { return overhead_packet(p, n, h_p); };
  h.generation = [](double p, double n, std::size_t G, double h_g) { return overhead_generation(p, n, G, h_g); };
  h.peak = [](std::size_t G) { return peak_attack_probability(G); };
  h.crossover = [](double n, double h_p) { return crossover_ec_vs_packet(n, h_p); };
  return h;
}

AnalyticHooks AnalyticHooks::tampered(const std::string& which) {
  AnalyticHooks h = defaults();
  if (which == "packet") {
    h.packet = [](double p, double n, double h_p) { return std::max(0.0, h_p - 2.0 * n * p) / n; };
  } else if (which == "generation") {
    h.generation = [](double p, double n, std::size_t G, double h_g) {
      return std::max(0.0, h_g / (n * static_cast<double>(G)) + drop_probability(p, G) - p);
    };
  } else if (which == "peak") {
    h.peak = [](std::size_t G) { return 1.0 - std::pow(1.0 / (G + 1.0), 1.0 / G); };
  } else if (which == "crossover") {
    h.crossover = [](double n, double h_p) { return h_p / n; };
  } else {
    throw UsageError("unknown tamper target '" + which + "'");
  }
  return h;
}

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, run] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

CriterionResult run_criterion(const std::string& name, const ValidateOptions& options) {
  for (const auto& [n, run] : registry()) {
    if (n != name) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r = run(options);
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw UsageError("unknown criterion '" + name + "'");
}

int run_validate(const ValidateOptions& options, std::ostream& os) {
  std::vector<std::string> selected;
  if (options.criterion.empty()) {
    selected = criterion_names();
  } else {
    for (const std::string& n : criterion_names()) {
      if (n == options.criterion) selected.push_back(n);
    }
    if (selected.empty()) throw UsageError("unknown criterion '" + options.criterion + "'");
  }
  bool all = true;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const CriterionResult r = run_criterion(selected[i], options);
    all = all && r.pass;
    const std::size_t index =
        static_cast<std::size_t>(std::find(criterion_names().begin(), criterion_names().end(), r.name) -
                                 criterion_names().begin()) + 1;
    os << (r.pass ? "PASS" : "FAIL") << ' ' << index << ' ' << r.name << ": " << r.measured << " | expected "
       << r.expected << fmt(" [%.2fs]", r.seconds) << '\n';
  }
  return all ? 0 : 1;
}

}  // namespace ncguard::cli
