#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ncguard/adversary.hpp"
#include "ncguard/algebra/group.hpp"
#include "ncguard/analytic.hpp"
#include "ncguard/rlnc.hpp"

namespace ncguard {

/// How much of the coding stack a trial runs.
enum class Fidelity {
  /// Real coded packets, real corruption and the real detector at v.
  symbolic,
  /// Ground-truth tags only; detection is assumed exact. Used where the
  /// question is purely about the Bernoulli drop process.
  tagged,
};

/// Carrier packets used in symbolic mode. Overhead is always scored with the
/// bit sizes in SchemeParams; the carrier only has to exercise the code and
/// the detectors, so its payload can be much shorter than n.
struct CarrierLayout {
  std::size_t k_data = 8;
  unsigned field_width = 8;   // GF(2^w) for error-correction and generation schemes
  std::size_t hash_k = 50;    // polynomial hash block length
  std::uint64_t group_seed = 1;  // safe-prime group for the packet scheme
};

struct TrialConfig {
  Scheme scheme = Scheme::error_correction;
  SchemeParams params;
  AttackModel attack;
  /// Time units of m packets for the per-packet schemes, generations for
  /// the generation scheme.
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  Fidelity fidelity = Fidelity::symbolic;
  CarrierLayout carrier;

  void validate() const;
};

struct EmpiricalReport {
  double overhead_ratio = 0.0;
  double stderr_ratio = 0.0;
  double goodput_fraction = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t packets_received = 0;
  std::uint64_t corrupted_received = 0;
  std::uint64_t generations = 0;
  std::uint64_t generations_dropped = 0;
  std::uint64_t false_accepts = 0;
  std::uint64_t false_rejects = 0;
  double bits_received = 0.0;
  double bits_transmitted = 0.0;

  friend bool operator==(const EmpiricalReport&, const EmpiricalReport&) = default;
};

/// Called for every packet v forwards together with the generation it
/// belongs to (symbolic fidelity only).
using ForwardObserver = std::function<void(const Packet&, const Generation&)>;

/// Simulates node v under the configured scheme and scores the wasted bits:
/// corrupted bits forwarded (error correction); m h_p plus valid dropped
/// minus corrupted dropped (packet); h_g plus valid dropped minus corrupted
/// dropped (generation). The mean is clamped at zero before dividing by the
/// bits received, mirroring max{0, .} on the expectation.
EmpiricalReport simulate_node(const TrialConfig& config, const ForwardObserver& on_forward = {});

/// Stream seed for one grid point, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, double p, Scheme scheme, std::size_t G);

struct GridPoint {
  OverheadPoint analytic;
  std::optional<EmpiricalReport> empirical;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

struct GridOptions {
  std::size_t trials = 0;  // 0: analytic only
  std::uint64_t seed = 1;
  AttackMode attack_mode = AttackMode::random_symbol;
  Fidelity fidelity = Fidelity::symbolic;
  CarrierLayout carrier;
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// One analytic and (optionally) one empirical point per (p, scheme), sorted
/// by scheme then p. `params.p` is ignored.
std::vector<GridPoint> compare_grid(const std::vector<double>& p_grid, const std::vector<Scheme>& schemes,
                                    const SchemeParams& params, const GridOptions& options);

/// Evenly spaced grid from `lo` to `hi` inclusive, rounded to 1e-9.
std::vector<double> linear_grid(double lo, double hi, double step);

/// True when |empirical - analytic| <= max(3 stderr, floor).
bool within_tolerance(double empirical, double analytic, double stderr_value, double floor = 0.005);

}  // namespace ncguard
