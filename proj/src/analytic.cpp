#include "ncguard/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ncguard/errors.hpp"

namespace ncguard {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("attack probability must lie in [0, 1], got " + std::to_string(p));
}

void check_size(double n, std::size_t G) {
  if (!(n > 0.0)) throw UsageError("packet size n must be positive");
  if (G == 0) throw UsageError("generation size G must be at least 1");
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::error_correction:
      return "error-correction";
    case Scheme::packet:
      return "packet";
    case Scheme::generation:
      return "generation";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::error_correction, Scheme::packet, Scheme::generation}) {
    if (to_string(s) == name) return s;
  }
  throw UsageError("unknown scheme '" + std::string(name) + "'");
}

SchemeParams SchemeParams::defaults(double n, std::size_t G, double p) {
  SchemeParams s;
  s.n = n;
  s.G = G;
  s.p = p;
  s.h_p = 0.06 * n;
  s.h_g = 0.02 * n * static_cast<double>(G);
  return s;
}

void SchemeParams::validate() const {
  check_probability(p);
  check_size(n, G);
  if (!(m > 0.0)) throw UsageError("m must be positive");
  if (!(h_p >= 0.0 && h_p <= n)) throw UsageError("h_p must lie in [0, n]");
  if (!(h_g >= 0.0 && h_g <= n * static_cast<double>(G))) throw UsageError("h_g must lie in [0, nG]");
}

double overhead_error_correction(double p) {
  check_probability(p);
  return p;
}

double overhead_packet(double p, double n, double h_p) {
  check_probability(p);
  check_size(n, 1);
  if (!(h_p >= 0.0 && h_p <= n)) throw UsageError("h_p must lie in [0, n]");
  return std::max(0.0, h_p - n * p) / n;
}

double drop_probability(double p, std::size_t G) {
  check_probability(p);
  check_size(1.0, G);
  return 1.0 - std::pow(1.0 - p, static_cast<double>(G));
}

double overhead_generation(double p, double n, std::size_t G, double h_g) {
  check_size(n, G);
  const double nG = n * static_cast<double>(G);
  if (!(h_g >= 0.0 && h_g <= nG)) throw UsageError("h_g must lie in [0, nG]");
  const double p_g = drop_probability(p, G);
  return std::max(0.0, h_g + p_g * (1.0 - p) * nG - p * nG) / nG;
}

double overhead_generation_exact(double p, double n, std::size_t G, double h_g) {
  check_size(n, G);
  const double nG = n * static_cast<double>(G);
  if (!(h_g >= 0.0 && h_g <= nG)) throw UsageError("h_g must lie in [0, nG]");
  check_probability(p);
  return std::max(0.0, h_g / nG + 1.0 - 2.0 * p - std::pow(1.0 - p, static_cast<double>(G)));
}

double goodput_fraction_packet(double n, double h_p) {
  check_size(n, 1);
  if (!(h_p >= 0.0 && h_p <= n)) throw UsageError("h_p must lie in [0, n]");
  return 1.0 - h_p / n;
}

double goodput_fraction_generation(double n, std::size_t G, double h_g) {
  check_size(n, G);
  const double nG = n * static_cast<double>(G);
  if (!(h_g >= 0.0 && h_g <= nG)) throw UsageError("h_g must lie in [0, nG]");
  return 1.0 - h_g / nG;
}

double generation_limit(double p) {
  check_probability(p);
  return std::max(0.0, 1.0 - 2.0 * p);
}

double peak_attack_probability(std::size_t G) {
  check_size(1.0, G);
  const double g = static_cast<double>(G);
  return 1.0 - std::pow(2.0 / (g + 1.0), 1.0 / g);
}

double crossover_ec_vs_packet(double n, double h_p) {
  check_size(n, 1);
  if (!(h_p >= 0.0 && h_p <= n)) throw UsageError("h_p must lie in [0, n]");
  return h_p / (2.0 * n);
}

OverheadPoint analytic_point(Scheme scheme, const SchemeParams& params) {
  params.validate();
  OverheadPoint pt{scheme, params, 0.0};
  switch (scheme) {
    case Scheme::error_correction:
      pt.ratio = overhead_error_correction(params.p);
      break;
    case Scheme::packet:
      pt.ratio = overhead_packet(params.p, params.n, params.h_p);
      break;
    case Scheme::generation:
      pt.ratio = overhead_generation(params.p, params.n, params.G, params.h_g);
      break;
  }
  return pt;
}

double overhead_bits_per_time_unit(const OverheadPoint& point) {
  return point.ratio * point.params.m * point.params.n;
}

}  // namespace ncguard
