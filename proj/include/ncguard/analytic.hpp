#pragma once

#include <cstddef>
#include <string_view>

namespace ncguard {

enum class Scheme { error_correction, packet, generation };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

/// How the per-generation hash size relates to G.
enum class HashScaling {
  proportional,  // h_g = hg_frac * n * G (the figures' setting)
  fixed,         // h_g held constant while G grows (the G -> infinity limit)
};

/// Tunables of the overhead model at one node.
struct SchemeParams {
  double n = 1000.0;  // packet size, bits
  std::size_t G = 10;
  double m = 100.0;   // packets received per time unit
  double h_p = 60.0;  // per-packet signature bits
  double h_g = 200.0; // per-generation hash bits
  double p = 0.0;

  /// Defaults h_p = 0.06 n and h_g = 0.02 n G.
  static SchemeParams defaults(double n = 1000.0, std::size_t G = 10, double p = 0.0);

  /// Throws UsageError outside 0 <= p <= 1, 0 <= h_p <= n, 0 <= h_g <= nG, G >= 1.
  void validate() const;
};

struct OverheadPoint {
  Scheme scheme = Scheme::error_correction;
  SchemeParams params;
  double ratio = 0.0;
};

/// Forward everything: p of the received bits are corrupted.
double overhead_error_correction(double p);
/// max{0, h_p - n p} / n.
double overhead_packet(double p, double n, double h_p);
/// max{0, h_g + p_g (1-p) n G - p n G} / (n G) with p_g = 1 - (1-p)^G.
double overhead_generation(double p, double n, std::size_t G, double h_g);
/// Probability that a generation holds at least one corrupted packet.
double drop_probability(double p, std::size_t G);
double goodput_fraction_packet(double n, double h_p);
double goodput_fraction_generation(double n, std::size_t G, double h_g);
/// Limit of overhead_generation as G grows with h_g fixed: max{0, 1 - 2p}.
double generation_limit(double p);
/// Stationary point 1 - (2/(G+1))^(1/G) of (1-(1-p)^G)(1-p) - p.
double peak_attack_probability(std::size_t G);
/// p where the error-correction and packet curves meet: h_p / (2n).
double crossover_ec_vs_packet(double n, double h_p);

/// Mean of the exact per-generation overhead when every packet is tagged
/// and a generation is dropped iff it holds a corrupted packet:
/// max{0, h_g/(nG) + 1 - 2p - (1-p)^G}. The dropped-valid count is
/// correlated with the drop event, which the product form of
/// overhead_generation ignores; the two differ by p (1-p)^G.
double overhead_generation_exact(double p, double n, std::size_t G, double h_g);

OverheadPoint analytic_point(Scheme scheme, const SchemeParams& params);

/// Overhead bits per time unit (ratio times m n) for the packet-level view.
double overhead_bits_per_time_unit(const OverheadPoint& point);

}  // namespace ncguard
