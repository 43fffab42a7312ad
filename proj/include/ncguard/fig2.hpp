#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncguard/adversary.hpp"
#include "ncguard/detect.hpp"

namespace ncguard {

/// Six-node split topology. A splits a generation of G packets into two
/// halves sent through B and C; each of B and C splits its half into two
/// quarters, one for D and one for E; D and E forward to the sink F.
///
///        +--> B --+--> D --+
///   A ---+        |  \/    +--> F
///        +--> C --+--> E --+
///
/// Source indices are partitioned into quarters Q1..Q4. A sends B G/2
/// combinations of Q1+Q2 and C G/2 combinations of Q3+Q4. B forwards Q1 to
/// D and Q2 to E; C forwards Q3 to D and Q4 to E. Every node checks each
/// sub-generation it receives (sizes G/2 at B and C, G/4 per sub-generation
/// at D and E, everything at F), drops it when the hash check fails and
/// otherwise decodes and recodes it.
enum class Fig2Node : std::size_t { A = 0, B, C, D, E, F };

inline constexpr std::array<const char*, 8> kFig2Edges = {"A->B", "A->C", "B->D", "B->E",
                                                          "C->D", "C->E", "D->F", "E->F"};

const char* to_string(Fig2Node node);

struct Fig2Options {
  unsigned field_width = 8;
  std::size_t k_data = 50;
  std::size_t hash_k = 50;
  AttackMode mode = AttackMode::random_symbol;
};

struct Fig2NodeReport {
  std::size_t received = 0;
  std::size_t forwarded = 0;
  std::vector<Verdict> verdicts;  // one per sub-generation checked

  bool flagged() const;
};

struct Fig2Report {
  std::array<Fig2NodeReport, 6> nodes;
  std::map<std::string, std::size_t> corrupted_per_edge;
  bool corruption_injected = false;
  /// Earliest node (in B, C, D, E, F order) that flagged a sub-generation.
  std::optional<Fig2Node> first_flag;
  /// Sources F recovered, and whether all of them match the source data.
  std::vector<std::size_t> f_sources;
  bool f_decoded_clean = false;
  /// F recovered the complete generation.
  bool f_complete = false;

  const Fig2NodeReport& node(Fig2Node n) const { return nodes[static_cast<std::size_t>(n)]; }
};

/// Runs one generation through the topology with independent per-packet
/// corruption probabilities on the named edges ("A->B", ...). Edges not in
/// the map are clean. Throws UsageError unless G is a positive multiple of 4
/// or when an edge name is unknown.
Fig2Report simulate_fig2(std::size_t G, const std::map<std::string, double>& p_per_edge, std::uint64_t seed,
                         const Fig2Options& options = {});

}  // namespace ncguard
