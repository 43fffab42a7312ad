#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ncguard/cli/acceptance.hpp"
#include "ncguard/cli/experiment.hpp"
#include "ncguard/cli/vectors.hpp"
#include "ncguard/errors.hpp"

using namespace ncguard;
using namespace ncguard::cli;

namespace {

struct Options {
  ExperimentConfig config;
  std::size_t G = 10;
  std::vector<std::size_t> G_list;
  std::vector<std::string> schemes;
  std::string attack = "random-symbol";
  std::string fidelity = "symbolic";
};

void add_params(CLI::App* app, Options& o) {
  auto& c = o.config;
  app->add_option("--p", c.p, "attack probabilities (comma separated)")->delimiter(',');
  app->add_option("--p-step", c.p_step, "grid step when --p is not given");
  app->add_option("--n", c.n, "packet size in bits");
  app->add_option("--G", o.G, "generation size");
  app->add_option("--G-list", o.G_list, "generation sizes (comma separated)")->delimiter(',');
  app->add_option("--m", c.m, "packets per time unit");
  app->add_option("--hp-frac", c.hp_frac, "h_p as a fraction of n");
  app->add_option("--hg-frac", c.hg_frac, "h_g as a fraction of nG");
  app->add_option("--hg-fixed", c.hg_fixed, "h_g in bits, constant in G");
  app->add_option("--scheme", o.schemes, "error-correction, packet, generation")->delimiter(',');
  app->add_option("--k", c.k, "hash block length");
  app->add_option("--s", c.s, "symbols unknown to the adversary");
  app->add_option("--logq", c.logq, "coding field GF(2^logq)");
  app->add_option("--logP", c.logP, "signature subgroup bits");
  app->add_option("--logQ", c.logQ, "signature modulus bits");
  app->add_option("--k-data", c.k_data, "carrier payload symbols in simulation");
  app->add_option("--trials", c.trials, "simulated time units (generations for the generation scheme); 0 = analytic");
  app->add_option("--seed", c.seed, "base seed");
  app->add_option("--attack", o.attack, "random-symbol, random-payload, hash-aware-forgery, blind-s-packet");
  app->add_option("--fidelity", o.fidelity, "symbolic or tagged");
  app->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  app->add_option("--out", c.out, "output file (default stdout)");
}

ExperimentConfig finish(Options& o, std::vector<std::size_t> default_G) {
  ExperimentConfig c = o.config;
  if (!o.G_list.empty()) {
    c.G = o.G_list;
  } else if (default_G.empty()) {
    c.G = {o.G};
  } else {
    c.G = std::move(default_G);
  }
  if (!o.schemes.empty()) {
    c.schemes.clear();
    for (const auto& s : o.schemes) c.schemes.push_back(parse_scheme(s));
  }
  c.attack = parse_attack_mode(o.attack);
  if (o.fidelity == "symbolic") {
    c.fidelity = Fidelity::symbolic;
  } else if (o.fidelity == "tagged") {
    c.fidelity = Fidelity::tagged;
  } else {
    throw UsageError("--fidelity must be symbolic or tagged");
  }
  c.validate();
  return c;
}

std::map<std::string, double> parse_edges(const std::vector<std::string>& specs) {
  std::map<std::string, double> out;
  for (const std::string& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--edge expects NAME=P, e.g. A->B=0.2");
    try {
      out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad probability in --edge " + s);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network coding overhead under Byzantine corruption"};
  app.require_subcommand(1);

  Options o;
  auto* sweep = app.add_subcommand("sweep", "CSV of analytic (and simulated) overhead ratios");
  auto* fig3 = app.add_subcommand("figure3", "generation scheme over p for several G");
  auto* fig45 = app.add_subcommand("figure45", "all schemes over p in [0,1] and [0,0.1]");
  auto* accounting = app.add_subcommand("accounting", "signature, hash and key size accounting");
  for (auto* sub : {sweep, fig3, fig45, accounting}) add_params(sub, o);

  ValidateOptions vopt;
  std::string tamper;
  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  validate->add_option("--seed", vopt.seed, "base seed");
  validate->add_option("--criterion", vopt.criterion, "run one criterion only");
  validate->add_option("--threads", vopt.threads, "worker threads (0 = all cores)");
  validate->add_option("--tamper", tamper)->group("");

  std::size_t fig2_G = 8, fig2_trials = 1000;
  std::uint64_t fig2_seed = 1;
  std::vector<std::string> edges;
  auto* fig2 = app.add_subcommand("fig2", "six-node sub-generation checking scenario");
  fig2->add_option("--G", fig2_G, "generation size (multiple of 4)");
  fig2->add_option("--edge", edges, "corruption probability per edge, NAME=P (repeatable)");
  fig2->add_option("--trials", fig2_trials, "independent runs");
  fig2->add_option("--seed", fig2_seed, "base seed");

  unsigned vec_logq = 8;
  std::size_t vec_k = 50, vec_count = 64;
  std::uint64_t vec_seed = 1;
  std::string vec_out, vec_check;
  auto* vectors = app.add_subcommand("vectors", "write or check hash conformance vectors");
  vectors->add_option("--logq", vec_logq, "GF(2^logq)");
  vectors->add_option("--k", vec_k, "hash block length");
  vectors->add_option("--count", vec_count, "random vectors");
  vectors->add_option("--seed", vec_seed, "seed");
  auto* out_opt = vectors->add_option("--out", vec_out, "write vectors to this file");
  vectors->add_option("--check", vec_check, "check vectors in this file")->excludes(out_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sweep) {
      run_sweep(finish(o, {}), std::cout);
    } else if (*fig3) {
      run_sweep(figure3_config(finish(o, {1, 5, 10, 20, 50})), std::cout);
    } else if (*fig45) {
      run_sweep(figure45_config(finish(o, {})), std::cout);
    } else if (*accounting) {
      print_accounting(finish(o, {}), std::cout);
    } else if (*validate) {
      if (!tamper.empty()) vopt.hooks = AnalyticHooks::tampered(tamper);
      return run_validate(vopt, std::cout);
    } else if (*fig2) {
      print_fig2(run_fig2(fig2_G, parse_edges(edges), fig2_trials, fig2_seed), std::cout);
    } else if (*vectors) {
      if (!vec_check.empty()) {
        std::ifstream in(vec_check);
        if (!in) throw UsageError("cannot open '" + vec_check + "'");
        nlohmann::json doc;
        try {
          in >> doc;
        } catch (const nlohmann::json::exception& e) {
          throw UsageError(std::string("malformed vector file: ") + e.what());
        }
        const VectorCheck r = check_hash_vectors(doc);
        std::cout << r.passed << " passed, " << r.failed << " failed\n";
        if (r.failed != 0) {
          std::cout << r.first_failure << '\n';
          return 1;
        }
      } else {
        const auto doc = make_hash_vectors(vec_logq, vec_k, vec_count, vec_seed);
        if (vec_out.empty()) {
          std::cout << doc.dump(1) << '\n';
        } else {
          std::ofstream out(vec_out);
          if (!out) throw UsageError("cannot open '" + vec_out + "' for writing");
          out << doc.dump(1) << '\n';
        }
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
