#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncguard/adversary.hpp"
#include "ncguard/analytic.hpp"
#include "ncguard/sim.hpp"

namespace ncguard::cli {

inline constexpr const char* kCsvHeader =
    "scheme,p,n,G,h_p,h_g,analytic_ratio,empirical_ratio,stderr,trials,seed";

/// Parameter overrides shared by the subcommands. Defaults reproduce the
/// figures: n = 1000, h_p = 0.06 n, h_g = 0.02 n G.
struct ExperimentConfig {
  std::vector<double> p;          // explicit grid; empty selects the subcommand default
  double p_step = 0.01;
  double n = 1000.0;
  std::vector<std::size_t> G{10};
  double m = 100.0;
  double hp_frac = 0.06;
  double hg_frac = 0.02;
  std::optional<double> hg_fixed;  // h_g in bits, held constant across G
  std::vector<Scheme> schemes{Scheme::error_correction, Scheme::packet, Scheme::generation};

  std::size_t k = 50;       // hash block length
  std::size_t s = 1;
  unsigned logq = 8;        // coding field GF(2^logq)
  unsigned logP = 160;      // signature subgroup bits (accounting only)
  unsigned logQ = 1024;     // signature modulus bits (accounting only)
  std::size_t k_data = 8;   // carrier payload symbols in simulation

  std::size_t trials = 0;   // 0: analytic only
  std::uint64_t seed = 1;
  AttackMode attack = AttackMode::random_symbol;
  Fidelity fidelity = Fidelity::symbolic;
  unsigned threads = 0;
  std::string out;          // empty: stdout

  /// Throws UsageError for out-of-domain overrides.
  void validate() const;
  SchemeParams scheme_params(std::size_t G) const;
  GridOptions grid_options() const;
};

/// Grid points for every (scheme, p, G), sorted by scheme, p, then G.
std::vector<GridPoint> run_points(const ExperimentConfig& config);

void write_csv(std::ostream& os, const std::vector<GridPoint>& points);
std::string format_number(double value);

/// Writes the CSV to config.out (or `fallback` when out is empty).
void run_sweep(const ExperimentConfig& config, std::ostream& fallback);

/// Generation scheme, p in [0, 1] step 0.01, G from config.G.
ExperimentConfig figure3_config(ExperimentConfig config);
/// All schemes on p in [0, 1] step 0.01 merged with p in [0, 0.1] step 0.001.
ExperimentConfig figure45_config(ExperimentConfig config);

void print_accounting(const ExperimentConfig& config, std::ostream& os);

struct Fig2Summary {
  std::size_t trials = 0;
  std::size_t injected = 0;
  std::map<std::string, std::size_t> flagged_trials;  // per node
  std::size_t f_clean = 0;
  std::size_t f_complete = 0;
};

Fig2Summary run_fig2(std::size_t G, const std::map<std::string, double>& p_per_edge, std::size_t trials,
                     std::uint64_t seed);
void print_fig2(const Fig2Summary& summary, std::ostream& os);

}  // namespace ncguard::cli
