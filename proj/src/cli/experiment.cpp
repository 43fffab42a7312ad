#include "ncguard/cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "ncguard/errors.hpp"
#include "ncguard/fig2.hpp"
#include "ncguard/hash.hpp"
#include "ncguard/signature.hpp"

namespace ncguard::cli {

void ExperimentConfig::validate() const {
  if (!(n > 0.0)) throw UsageError("--n must be positive");
  if (G.empty()) throw UsageError("at least one G is required");
  for (std::size_t g : G) {
    if (g == 0) throw UsageError("G must be at least 1");
  }
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw UsageError("--p values must lie in [0, 1]");
  }
  if (!(p_step > 0.0 && p_step <= 1.0)) throw UsageError("--p-step must lie in (0, 1]");
  if (!(hp_frac >= 0.0 && hp_frac <= 1.0)) throw UsageError("--hp-frac must lie in [0, 1]");
  if (!(hg_frac >= 0.0 && hg_frac <= 1.0)) throw UsageError("--hg-frac must lie in [0, 1]");
  if (!(m > 0.0)) throw UsageError("--m must be positive");
  if (k == 0 || s == 0) throw UsageError("--k and --s must be positive");
  if (logq < 2 || logq > 16) throw UsageError("--logq must lie in [2, 16]");
  if (logP == 0 || logQ <= logP) throw UsageError("--logQ must exceed --logP");
  if (k_data == 0) throw UsageError("--k-data must be positive");
  for (std::size_t g : G) scheme_params(g).validate();
}

SchemeParams ExperimentConfig::scheme_params(std::size_t g) const {
  SchemeParams sp;
  sp.n = n;
  sp.G = g;
  sp.m = m;
  sp.h_p = hp_frac * n;
  sp.h_g = hg_fixed ? *hg_fixed : hg_frac * n * static_cast<double>(g);
  return sp;
}

GridOptions ExperimentConfig::grid_options() const {
  GridOptions o;
  o.trials = trials;
  o.seed = seed;
  o.attack_mode = attack;
  o.fidelity = fidelity;
  o.carrier.k_data = k_data;
  o.carrier.field_width = logq;
  o.carrier.hash_k = k;
  o.threads = threads;
  return o;
}

std::vector<GridPoint> run_points(const ExperimentConfig& config) {
  config.validate();
  const std::vector<double> grid = config.p.empty() ? linear_grid(0.0, 1.0, config.p_step) : config.p;
  std::vector<GridPoint> points;
  for (std::size_t g : config.G) {
    // G does not enter the per-packet formulas; emit those rows once.
    std::vector<Scheme> schemes = config.schemes;
    if (g != config.G.front()) {
      schemes.erase(std::remove_if(schemes.begin(), schemes.end(), [](Scheme s) { return s != Scheme::generation; }),
                    schemes.end());
    }
    auto part = compare_grid(grid, schemes, config.scheme_params(g), config.grid_options());
    points.insert(points.end(), part.begin(), part.end());
  }
  std::stable_sort(points.begin(), points.end(), [](const GridPoint& a, const GridPoint& b) {
    if (a.analytic.scheme != b.analytic.scheme) return a.analytic.scheme < b.analytic.scheme;
    if (a.analytic.params.p != b.analytic.params.p) return a.analytic.params.p < b.analytic.params.p;
    return a.analytic.params.G < b.analytic.params.G;
  });
  return points;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value == 0.0 ? 0.0 : value);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<GridPoint>& points) {
  os << kCsvHeader << '\n';
  for (const GridPoint& gp : points) {
    const SchemeParams& sp = gp.analytic.params;
    os << to_string(gp.analytic.scheme) << ',' << format_number(sp.p) << ',' << format_number(sp.n) << ',' << sp.G
       << ',' << format_number(sp.h_p) << ',' << format_number(sp.h_g) << ',' << format_number(gp.analytic.ratio)
       << ',';
    if (gp.empirical) {
      os << format_number(gp.empirical->overhead_ratio) << ',' << format_number(gp.empirical->stderr_ratio) << ','
         << gp.trials;
    } else {
      os << ",,0";
    }
    os << ',' << gp.seed << '\n';
  }
}

void run_sweep(const ExperimentConfig& config, std::ostream& fallback) {
  const auto points = run_points(config);
  if (config.out.empty()) {
    write_csv(fallback, points);
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + config.out + "' for writing");
  write_csv(file, points);
  if (!file.flush()) throw UsageError("failed writing '" + config.out + "'");
}

ExperimentConfig figure3_config(ExperimentConfig config) {
  config.schemes = {Scheme::generation};
  if (config.p.empty()) config.p = linear_grid(0.0, 1.0, 0.01);
  return config;
}

ExperimentConfig figure45_config(ExperimentConfig config) {
  if (config.p.empty()) {
    std::vector<double> grid = linear_grid(0.0, 1.0, 0.01);
    const std::vector<double> zoom = linear_grid(0.0, 0.1, 0.001);
    grid.insert(grid.end(), zoom.begin(), zoom.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    config.p = grid;
  }
  config.schemes = {Scheme::error_correction, Scheme::packet, Scheme::generation};
  return config;
}

namespace {

std::string percent(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g%%", 100.0 * fraction);
  return buf;
}

}  // namespace

void print_accounting(const ExperimentConfig& config, std::ostream& os) {
  config.validate();
  const std::size_t G = config.G.front();
  const SchemeParams sp = config.scheme_params(G);
  const double nG = sp.n * static_cast<double>(G);
  const HashParams hash{config.k, config.s, Field::binary(config.logq)};

  os << "n = " << format_number(sp.n) << " bits, G = " << G << ", m = " << format_number(sp.m) << " packets/unit\n";
  os << "packet signature: h_p = " << format_number(sp.h_p) << " bits, h_p/n = " << percent(sp.h_p / sp.n)
     << ", goodput 1 - h_p/n = " << format_number(goodput_fraction_packet(sp.n, sp.h_p)) << '\n';
  os << "generation hash: h_g = " << format_number(sp.h_g) << " bits, h_g/(nG) = " << percent(sp.h_g / nG)
     << ", goodput 1 - h_g/(nG) = " << format_number(goodput_fraction_generation(sp.n, G, sp.h_g)) << '\n';
  os << "polynomial hash over GF(2^" << config.logq << "), k = " << config.k << ": hash symbols 1/(k+1) = "
     << percent(hash.overhead_fraction()) << ", miss bound ((k+1)/q)^s = " << format_number(hash.miss_bound())
     << " (s = " << config.s << "), detection >= " << percent(1.0 - hash.miss_bound()) << '\n';

  const auto symbols = static_cast<std::size_t>(std::ceil(sp.n / config.logP));
  const double key_bits = static_cast<double>(G + symbols) * config.logQ;
  const double ratio = key_to_file_ratio(G, symbols, config.logP, config.logQ);
  os << "signature key (not part of h_p): log P = " << config.logP << ", log Q = " << config.logQ << ", "
     << G << " x " << symbols << " symbols per generation, key = (G + k_data) log Q = " << format_number(key_bits)
     << " bits = " << format_number(ratio) << " x generation size\n";
}

Fig2Summary run_fig2(std::size_t G, const std::map<std::string, double>& p_per_edge, std::size_t trials,
                     std::uint64_t seed) {
  Fig2Summary out;
  out.trials = trials;
  for (const char* n : {"B", "C", "D", "E", "F"}) out.flagged_trials[n] = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const Fig2Report r = simulate_fig2(G, p_per_edge, derive_seed(seed, 0.0, Scheme::generation, t));
    if (r.corruption_injected) ++out.injected;
    for (Fig2Node n : {Fig2Node::B, Fig2Node::C, Fig2Node::D, Fig2Node::E, Fig2Node::F}) {
      if (r.node(n).flagged()) ++out.flagged_trials[to_string(n)];
    }
    if (r.f_decoded_clean) ++out.f_clean;
    if (r.f_complete) ++out.f_complete;
  }
  return out;
}

void print_fig2(const Fig2Summary& s, std::ostream& os) {
  os << "trials " << s.trials << ", with corruption " << s.injected << '\n';
  os << "node,flagged_trials\n";
  for (const auto& [node, count] : s.flagged_trials) os << node << ',' << count << '\n';
  os << "F decoded clean " << s.f_clean << ", F complete " << s.f_complete << '\n';
}

}  // namespace ncguard::cli
