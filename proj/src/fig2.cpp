#include "ncguard/fig2.hpp"

#include <algorithm>
#include <numeric>

#include "ncguard/errors.hpp"

namespace ncguard {

const char* to_string(Fig2Node node) {
  static constexpr std::array<const char*, 6> names = {"A", "B", "C", "D", "E", "F"};
  return names[static_cast<std::size_t>(node)];
}

bool Fig2NodeReport::flagged() const {
  return std::find(verdicts.begin(), verdicts.end(), Verdict::corrupted) != verdicts.end();
}

namespace {

struct Context {
  FieldSpec field;
  HashParams hash;
  const Generation* truth = nullptr;
  AttackMode mode = AttackMode::random_symbol;
  Rng rng;
};

// Source packets (unit encoding vectors) a node holds, keyed by index.
using Holdings = std::map<std::size_t, Packet>;

std::vector<std::size_t> indices(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  std::iota(v.begin(), v.end(), first);
  return v;
}

// `support.size()` random combinations of the held sources on `support`,
// redrawn until they span it.
std::vector<Packet> encode_on(const Holdings& held, const std::vector<std::size_t>& support, Context& ctx) {
  std::vector<Packet> sources;
  for (std::size_t j : support) sources.push_back(held.at(j));
  for (;;) {
    std::vector<Packet> out;
    Matrix coeffs(ctx.field, 0, 0);
    for (std::size_t i = 0; i < support.size(); ++i) {
      out.push_back(random_combine(*ctx.field, sources, ctx.rng));
      coeffs.append_row(out.back().coeffs);
    }
    if (rank(coeffs) == support.size()) return out;
  }
}

void transmit(std::vector<Packet>& packets, const std::string& edge, const std::map<std::string, double>& p,
              Context& ctx, Fig2Report& report) {
  const auto it = p.find(edge);
  if (it == p.end() || it->second == 0.0) return;
  std::bernoulli_distribution hit(it->second);
  for (Packet& pkt : packets) {
    if (hit(ctx.rng)) {
      corrupt_packet(pkt, ctx.mode, *ctx.field, &ctx.hash, ctx.rng);
      ++report.corrupted_per_edge[edge];
      report.corruption_injected = true;
    }
  }
}

// Checks one sub-generation; on success adds the solved sources to `held`.
Verdict check_into(const std::vector<Packet>& received, std::size_t expected, Holdings& held, Context& ctx) {
  const SubGeneration sub = subgeneration_view(received, expected);
  const SubspanCheck check = gen_hash_verify_subspan(sub, ctx.hash);
  if (check.verdict != Verdict::valid) return check.verdict;

  const std::size_t G = ctx.truth->size();
  for (std::size_t r = 0; r < check.sources.size(); ++r) {
    const std::size_t j = check.sources[r];
    Packet p;
    p.generation_id = ctx.truth->id();
    p.coeffs.assign(G, 0);
    p.coeffs[j] = 1;
    p.payload.assign(check.payloads.row(r).begin(), check.payloads.row(r).end());
    p.hash.assign(check.hashes.row(r).begin(), check.hashes.row(r).end());
    // Ground truth for scoring only.
    const Packet truth = ctx.truth->source_packet(j);
    if (!(static_cast<const CodedPacket&>(p) == static_cast<const CodedPacket&>(truth))) p.origin = Origin::corrupted;
    held[j] = std::move(p);
  }
  return Verdict::valid;
}

}  // namespace

Fig2Report simulate_fig2(std::size_t G, const std::map<std::string, double>& p_per_edge, std::uint64_t seed,
                         const Fig2Options& options) {
  if (G == 0 || G % 4 != 0) throw UsageError("fig2 scenario needs G divisible by 4");
  for (const auto& [edge, p] : p_per_edge) {
    if (std::find_if(kFig2Edges.begin(), kFig2Edges.end(), [&](const char* e) { return edge == e; }) ==
        kFig2Edges.end()) {
      throw UsageError("unknown edge '" + edge + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("edge probability must lie in [0, 1]");
  }

  Context ctx{Field::binary(options.field_width), {}, nullptr, options.mode, Rng(seed)};
  ctx.hash = HashParams{options.hash_k, 1, ctx.field};
  const GenerationParams params{G, options.k_data, ctx.hash.symbol_count(options.k_data), ctx.field->symbol_bits()};
  auto bundle = make_generation(0, random_payloads(ctx.field, G, options.k_data, ctx.rng), params, &ctx.hash);
  ctx.truth = &bundle.generation;

  Fig2Report report;
  auto node = [&](Fig2Node n) -> Fig2NodeReport& { return report.nodes[static_cast<std::size_t>(n)]; };
  const std::size_t quarter = G / 4;
  const std::array<std::vector<std::size_t>, 4> Q = {indices(0, quarter), indices(quarter, quarter),
                                                     indices(2 * quarter, quarter), indices(3 * quarter, quarter)};
  auto join = [](std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  Holdings at_a;
  for (std::size_t j = 0; j < G; ++j) at_a[j] = bundle.packets[j];

  // A -> B, A -> C
  std::vector<Packet> ab = encode_on(at_a, join(Q[0], Q[1]), ctx);
  std::vector<Packet> ac = encode_on(at_a, join(Q[2], Q[3]), ctx);
  node(Fig2Node::A).forwarded = ab.size() + ac.size();
  transmit(ab, "A->B", p_per_edge, ctx, report);
  transmit(ac, "A->C", p_per_edge, ctx, report);

  // B and C check their halves and split them into quarters.
  std::map<std::string, std::vector<Packet>> out;
  auto relay_half = [&](Fig2Node self, const std::vector<Packet>& in, const std::vector<std::size_t>& to_d,
                        const std::vector<std::size_t>& to_e, const std::string& d_edge, const std::string& e_edge) {
    Fig2NodeReport& rep = node(self);
    rep.received = in.size();
    Holdings held;
    const Verdict v = check_into(in, G / 2, held, ctx);
    rep.verdicts.push_back(v);
    if (v != Verdict::valid) return;
    out[d_edge] = encode_on(held, to_d, ctx);
    out[e_edge] = encode_on(held, to_e, ctx);
    rep.forwarded = out[d_edge].size() + out[e_edge].size();
  };
  relay_half(Fig2Node::B, ab, Q[0], Q[1], "B->D", "B->E");
  relay_half(Fig2Node::C, ac, Q[2], Q[3], "C->D", "C->E");
  for (const char* e : {"B->D", "B->E", "C->D", "C->E"}) transmit(out[e], e, p_per_edge, ctx, report);

  // D and E check each incoming quarter separately and pass the survivors on.
  auto relay_quarters = [&](Fig2Node self, const std::string& from_b, const std::string& from_c,
                            const std::string& to_f) {
    Fig2NodeReport& rep = node(self);
    std::vector<Packet> forward;
    for (const std::string& edge : {from_b, from_c}) {
      const std::vector<Packet>& in = out[edge];
      if (in.empty()) continue;
      rep.received += in.size();
      Holdings held;
      const Verdict v = check_into(in, quarter, held, ctx);
      rep.verdicts.push_back(v);
      if (v != Verdict::valid) continue;
      std::vector<std::size_t> support;
      for (const auto& [j, pkt] : held) support.push_back(j);
      auto recoded = encode_on(held, support, ctx);
      forward.insert(forward.end(), recoded.begin(), recoded.end());
    }
    rep.forwarded = forward.size();
    out[to_f] = std::move(forward);
  };
  relay_quarters(Fig2Node::D, "B->D", "C->D", "D->F");
  relay_quarters(Fig2Node::E, "B->E", "C->E", "E->F");
  transmit(out["D->F"], "D->F", p_per_edge, ctx, report);
  transmit(out["E->F"], "E->F", p_per_edge, ctx, report);

  // F checks whatever arrived as one unit.
  std::vector<Packet> at_f = out["D->F"];
  at_f.insert(at_f.end(), out["E->F"].begin(), out["E->F"].end());
  Fig2NodeReport& f = node(Fig2Node::F);
  f.received = at_f.size();
  if (!at_f.empty()) {
    Holdings held;
    const Verdict v = check_into(at_f, G, held, ctx);
    f.verdicts.push_back(v);
    if (v == Verdict::valid) {
      report.f_decoded_clean = true;
      for (const auto& [j, pkt] : held) {
        report.f_sources.push_back(j);
        if (pkt.origin == Origin::corrupted) report.f_decoded_clean = false;
      }
      report.f_complete = report.f_sources.size() == G;
    }
  }

  for (Fig2Node n : {Fig2Node::B, Fig2Node::C, Fig2Node::D, Fig2Node::E, Fig2Node::F}) {
    if (node(n).flagged()) {
      report.first_flag = n;
      break;
    }
  }
  return report;
}

}  // namespace ncguard
