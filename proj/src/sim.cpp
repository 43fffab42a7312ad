#include "ncguard/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <variant>

#include "ncguard/detect.hpp"
#include "ncguard/errors.hpp"
#include "ncguard/signature.hpp"

namespace ncguard {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial overhead and received bits; the ratio estimator is
// max{0, sum raw} / sum bits.
class RatioEstimator {
 public:
  void add(double raw, double bits) {
    raw_.push_back(raw);
    bits_.push_back(bits);
  }

  double ratio() const {
    const double bits = total(bits_);
    return bits > 0.0 ? std::max(0.0, total(raw_)) / bits : 0.0;
  }

  // Delta-method standard error of the (unclamped) ratio of means.
  double stderr_ratio() const {
    const std::size_t n = raw_.size();
    const double bits = total(bits_);
    if (n < 2 || bits <= 0.0) return 0.0;
    const double r = total(raw_) / bits;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = raw_[i] - r * bits_[i];
      ss += d * d;
    }
    const double mean_bits = bits / static_cast<double>(n);
    return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) / mean_bits;
  }

  double bits_received() const { return total(bits_); }

 private:
  static double total(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  std::vector<double> raw_;
  std::vector<double> bits_;
};

// Endless stream of coded packets, G random combinations per generation.
class PacketSource {
 public:
  PacketSource(FieldSpec field, std::size_t G, std::size_t k_data, const HashParams* hash,
               const GroupSpec* group)
      : field_(std::move(field)), G_(G), k_data_(k_data), hash_(hash), group_(group) {}

  struct Item {
    Packet packet;
    std::shared_ptr<const Generation> generation;
    const SignatureKey* key = nullptr;
  };

  Item next(Rng& rng) {
    if (!current_ || emitted_ == G_) start_generation(rng);
    ++emitted_;
    return {random_combine(*field_, sources_, rng), current_, key_ ? &*key_ : nullptr};
  }

  std::size_t generations() const { return generations_; }

 private:
  void start_generation(Rng& rng) {
    const std::size_t hash_symbols = hash_ ? hash_->symbol_count(k_data_) : 0;
    const GenerationParams params{G_, k_data_, hash_symbols, field_->symbol_bits()};
    auto bundle = make_generation(generations_, random_payloads(field_, G_, k_data_, rng), params, hash_);
    current_ = std::make_shared<const Generation>(std::move(bundle.generation));
    sources_ = std::move(bundle.packets);
    if (group_) key_ = sig_keygen(*current_, *group_, rng);
    emitted_ = 0;
    ++generations_;
  }

  FieldSpec field_;
  std::size_t G_;
  std::size_t k_data_;
  const HashParams* hash_;
  const GroupSpec* group_;
  std::shared_ptr<const Generation> current_;
  std::vector<Packet> sources_;
  std::optional<SignatureKey> key_;
  std::size_t emitted_ = 0;
  std::size_t generations_ = 0;
};

std::size_t packets_per_unit(const SchemeParams& params) {
  const double m = std::round(params.m);
  if (m < 1.0 || std::abs(m - params.m) > 1e-9) throw UsageError("m must be a positive integer for simulation");
  return static_cast<std::size_t>(m);
}

EmpiricalReport finish(const RatioEstimator& est, EmpiricalReport r, double data_bits_forwarded) {
  r.overhead_ratio = est.ratio();
  r.stderr_ratio = est.stderr_ratio();
  r.bits_received = est.bits_received();
  r.goodput_fraction = r.bits_transmitted > 0.0 ? data_bits_forwarded / r.bits_transmitted : 0.0;
  return r;
}

EmpiricalReport simulate_per_packet(const TrialConfig& cfg, Rng& rng, const ForwardObserver& on_forward) {
  const SchemeParams& sp = cfg.params;
  const std::size_t m = packets_per_unit(sp);
  const bool detect = cfg.scheme == Scheme::packet;
  const double n = sp.n;
  const double data_bits = detect ? n - sp.h_p : n;

  EmpiricalReport r;
  RatioEstimator est;
  double data_forwarded = 0.0;
  std::bernoulli_distribution hit(cfg.attack.p);

  if (cfg.fidelity == Fidelity::tagged) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      std::size_t corrupted = 0;
      for (std::size_t i = 0; i < m; ++i) corrupted += hit(rng) ? 1 : 0;
      const double valid = static_cast<double>(m - corrupted);
      const double bad = static_cast<double>(corrupted);
      r.packets_received += m;
      r.corrupted_received += corrupted;
      if (detect) {
        est.add(static_cast<double>(m) * sp.h_p - n * bad, static_cast<double>(m) * n);
        r.bits_transmitted += valid * n;
        data_forwarded += valid * data_bits;
      } else {
        est.add(n * bad, static_cast<double>(m) * n);
        r.bits_transmitted += static_cast<double>(m) * n;
        data_forwarded += valid * data_bits;
      }
    }
    r.trials = cfg.trials;
    return finish(est, r, data_forwarded);
  }

  std::optional<GroupSpec> group;
  FieldSpec field;
  if (detect) {
    group = default_group(cfg.carrier.group_seed);
    field = Field::prime(static_cast<std::uint64_t>(group->subgroup_order()));
  } else {
    field = Field::binary(cfg.carrier.field_width);
  }
  PacketSource source(field, sp.G, cfg.carrier.k_data, nullptr, group ? &*group : nullptr);

  for (std::size_t t = 0; t < cfg.trials; ++t) {
    double raw = detect ? static_cast<double>(m) * sp.h_p : 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      auto item = source.next(rng);
      if (hit(rng)) corrupt_packet(item.packet, cfg.attack.mode, *field, nullptr, rng);
      const bool bad = item.packet.origin == Origin::corrupted;
      ++r.packets_received;
      if (bad) ++r.corrupted_received;

      bool forward = true;
      if (detect) {
        forward = sig_verify(item.packet, *item.key) == SigVerdict::accept;
        if (!forward) raw += bad ? -n : n;
        if (forward && bad) ++r.false_accepts;
        if (!forward && !bad) ++r.false_rejects;
      } else if (bad) {
        raw += n;
      }
      if (forward) {
        r.bits_transmitted += n;
        if (!bad) data_forwarded += data_bits;
        if (on_forward) on_forward(item.packet, *item.generation);
      }
    }
    est.add(raw, static_cast<double>(m) * n);
  }
  r.trials = cfg.trials;
  r.generations = source.generations();
  return finish(est, r, data_forwarded);
}

EmpiricalReport simulate_per_generation(const TrialConfig& cfg, Rng& rng, const ForwardObserver& on_forward) {
  const SchemeParams& sp = cfg.params;
  const std::size_t G = sp.G;
  const double n = sp.n;
  const double data_bits = n - sp.h_g / static_cast<double>(G);

  EmpiricalReport r;
  RatioEstimator est;
  double data_forwarded = 0.0;
  std::bernoulli_distribution hit(cfg.attack.p);

  if (cfg.fidelity == Fidelity::tagged) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      std::size_t corrupted = 0;
      for (std::size_t i = 0; i < G; ++i) corrupted += hit(rng) ? 1 : 0;
      r.packets_received += G;
      r.corrupted_received += corrupted;
      ++r.generations;
      double raw = sp.h_g;
      if (corrupted > 0) {
        ++r.generations_dropped;
        raw += n * static_cast<double>(G - corrupted) - n * static_cast<double>(corrupted);
      } else {
        r.bits_transmitted += n * static_cast<double>(G);
        data_forwarded += data_bits * static_cast<double>(G);
      }
      est.add(raw, n * static_cast<double>(G));
    }
    r.trials = cfg.trials;
    return finish(est, r, data_forwarded);
  }

  const FieldSpec field = Field::binary(cfg.carrier.field_width);
  HashParams hash{cfg.carrier.hash_k, 1, field};
  const std::size_t k_data = cfg.carrier.k_data;
  const GenerationParams gp{G, k_data, hash.symbol_count(k_data), field->symbol_bits()};

  std::vector<Packet> received;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    auto bundle = make_generation(t, random_payloads(field, G, k_data, rng), gp, &hash);
    received.clear();
    std::size_t corrupted = 0;
    // v collects combinations until it can decode the generation.
    DecodeResult decoded = NotDecodable{};
    while (true) {
      while (received.size() < G) {
        Packet p = random_combine(*field, bundle.packets, rng);
        if (hit(rng)) {
          corrupt_packet(p, cfg.attack.mode, *field, &hash, rng);
          ++corrupted;
        }
        received.push_back(std::move(p));
      }
      decoded = decode(field, std::span<const Packet>(received), G);
      if (std::holds_alternative<DecodedGeneration>(decoded)) break;
      Packet p = random_combine(*field, bundle.packets, rng);
      if (hit(rng)) {
        corrupt_packet(p, cfg.attack.mode, *field, &hash, rng);
        ++corrupted;
      }
      received.push_back(std::move(p));
    }

    const std::size_t count = received.size();
    r.packets_received += count;
    r.corrupted_received += corrupted;
    ++r.generations;

    const bool drop = gen_hash_verify(std::get<DecodedGeneration>(decoded), hash) == Verdict::corrupted;
    double raw = sp.h_g;
    if (drop) {
      ++r.generations_dropped;
      if (corrupted == 0) ++r.false_rejects;
      raw += n * static_cast<double>(count - corrupted) - n * static_cast<double>(corrupted);
    } else {
      if (corrupted > 0) ++r.false_accepts;
      r.bits_transmitted += n * static_cast<double>(count);
      data_forwarded += data_bits * static_cast<double>(count - corrupted);
      if (on_forward) {
        for (const Packet& p : received) on_forward(p, bundle.generation);
      }
    }
    est.add(raw, n * static_cast<double>(count));
  }
  r.trials = cfg.trials;
  return finish(est, r, data_forwarded);
}

}  // namespace

void TrialConfig::validate() const {
  params.validate();
  attack.validate();
  if (trials == 0) throw UsageError("trials must be at least 1");
  if (carrier.k_data == 0) throw UsageError("carrier payload must hold at least one symbol");
}

EmpiricalReport simulate_node(const TrialConfig& config, const ForwardObserver& on_forward) {
  config.validate();
  Rng rng(splitmix64(config.seed ^ splitmix64(config.attack.rng_seed)));
  if (config.scheme == Scheme::generation) return simulate_per_generation(config, rng, on_forward);
  return simulate_per_packet(config, rng, on_forward);
}

std::uint64_t derive_seed(std::uint64_t seed, double p, Scheme scheme, std::size_t G) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(p));
  h = splitmix64(h ^ static_cast<std::uint64_t>(scheme));
  return splitmix64(h ^ static_cast<std::uint64_t>(G));
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw UsageError("grid needs step > 0 and hi >= lo");
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  return out;
}

bool within_tolerance(double empirical, double analytic, double stderr_value, double floor) {
  return std::abs(empirical - analytic) <= std::max(3.0 * stderr_value, floor);
}

std::vector<GridPoint> compare_grid(const std::vector<double>& p_grid, const std::vector<Scheme>& schemes,
                                    const SchemeParams& params, const GridOptions& options) {
  std::vector<GridPoint> points;
  for (Scheme scheme : schemes) {
    for (double p : p_grid) {
      SchemeParams sp = params;
      sp.p = p;
      GridPoint gp;
      gp.analytic = analytic_point(scheme, sp);
      gp.seed = derive_seed(options.seed, p, scheme, sp.G);
      gp.trials = options.trials;
      points.push_back(gp);
    }
  }

  if (options.trials > 0) {
    std::function<void()> run_points;
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto worker = [&] {
      try {
        run_points();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    };
    run_points = [&] {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        GridPoint& gp = points[i];
        TrialConfig cfg;
        cfg.scheme = gp.analytic.scheme;
        cfg.params = gp.analytic.params;
        cfg.attack = AttackModel{gp.analytic.params.p, options.attack_mode, 0};
        cfg.trials = options.trials;
        cfg.seed = gp.seed;
        cfg.fidelity = options.fidelity;
        cfg.carrier = options.carrier;
        gp.empirical = simulate_node(cfg);
      }
    };
    unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
  }

  std::stable_sort(points.begin(), points.end(), [](const GridPoint& a, const GridPoint& b) {
    if (a.analytic.scheme != b.analytic.scheme) return a.analytic.scheme < b.analytic.scheme;
    if (a.analytic.params.p != b.analytic.params.p) return a.analytic.params.p < b.analytic.params.p;
    return a.analytic.params.G < b.analytic.params.G;
  });
  return points;
}

}  // namespace ncguard
