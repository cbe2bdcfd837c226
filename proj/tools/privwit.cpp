// privwit — the command-line driver for the private-key witness toolkit.
//
// Subcommands:
//   attack       alpha sweep of a side-channel attack on a key-carrying state
//   regions      membership grid of a leakage-bound region
//   bounds       leakage-bound report from supplied entropies/dimensions
//   randomness   private-randomness rate region for a configured state
//   markov       witness trajectory under a dynamics family + backflow verdict
//   demo         worked examples (currently: superdense)
//   run          execute a scenario file (INI-style or JSON)
//
// Exit codes: 0 success, 1 validation/config error, 2 numerical failure.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privwit/engine.hpp"
#include "privwit/scenario.hpp"
#include "privwit/types.hpp"
#include "privwit/version.hpp"

namespace {

using privwit::Scenario;
using privwit::ValidationError;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

double to_double(const std::string& raw, const std::string& what) {
  try {
    size_t used = 0;
    double v = std::stod(raw, &used);
    if (used == raw.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(what + ": expected a real number, got '" + raw + "'");
}

int to_int(const std::string& raw, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(raw, &used);
    if (used == raw.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(what + ": expected an integer, got '" + raw + "'");
}

std::uint64_t to_u64(const std::string& raw, const std::string& what) {
  try {
    size_t used = 0;
    unsigned long long v = std::stoull(raw, &used);
    if (used == raw.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(what + ": expected a non-negative integer, got '" + raw + "'");
}

// "start:stop:count" — or "var:start:stop:count" when `var` names the swept
// variable (e.g. --sweep alpha:0:1:101).
privwit::GridSpec parse_grid(const std::string& raw, const std::string& what, const std::string& var) {
  auto parts = split(raw, ':');
  size_t first = 0;
  if (parts.size() == 4) {
    if (var.empty() || parts[0] != var)
      throw ValidationError(what + ": expected '" + (var.empty() ? "start" : var + ":start") +
                            ":stop:count', got '" + raw + "'");
    first = 1;
  } else if (parts.size() != 3) {
    throw ValidationError(what + ": expected 'start:stop:count', got '" + raw + "'");
  }
  privwit::GridSpec g;
  g.start = to_double(parts[first], what);
  g.stop = to_double(parts[first + 1], what);
  g.count = to_int(parts[first + 2], what);
  return g;
}

// "kind" or "kind:key=val,key=val" — shared by --dynamics and --witness.
void parse_kv_spec(const std::string& raw, const std::string& what, std::string& kind,
                   const std::function<void(const std::string&, const std::string&)>& on_kv) {
  auto head = split(raw, ':');
  if (head.empty() || head.size() > 2) throw ValidationError(what + ": malformed spec '" + raw + "'");
  kind = head[0];
  if (head.size() == 1) return;
  for (const auto& item : split(head[1], ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ValidationError(what + ": expected key=value, got '" + item + "'");
    on_kv(item.substr(0, eq), item.substr(eq + 1));
  }
}

void add_output_flags(CLI::App* cmd, Scenario& sc) {
  cmd->add_option("--out", sc.output.path, "Output file (default: stdout)");
  cmd->add_option("--format", sc.output.format, "Output format: csv or json");
}

void add_thread_flag(CLI::App* cmd, Scenario& sc) {
  cmd->add_option("--threads", sc.threads,
                  "Worker threads (default: PRIVWIT_THREADS env, then hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"private-key witness toolkit"};
  app.set_version_flag("--version", std::string("privwit ") + privwit::version());
  app.require_subcommand(1);

  Scenario sc;
  std::string sweep_raw, grid_raw, dynamics_raw, witness_raw, scenario_path;

  CLI::App* attack = app.add_subcommand("attack", "Sweep a side-channel attack over alpha");
  attack->add_option("--state", sc.state.family, "State family: gamma-swap or block-orthogonal");
  attack->add_option("--ds", sc.state.ds, "Shield factor dimension");
  attack->add_option("--channel", sc.channel.kind,
                     "bit-flip | depolarizing | amplitude-damping | dephasing");
  attack->add_option("--sweep", sweep_raw, "alpha:start:stop:count (default alpha:0:1:101)");
  attack->add_option("--p-grid", sc.p_grid_points, "Points of the reference-state mixing grid");
  attack->add_option("--seed", sc.state.seed, "Sampling seed (block-orthogonal)");
  add_thread_flag(attack, sc);
  add_output_flags(attack, sc);

  CLI::App* regions = app.add_subcommand("regions", "Tabulate a leakage-bound region");
  regions->add_option("--kind", sc.region.kind, "fig2 / leakage-key or fig4 / product-key");
  std::string x_raw, y_raw;
  regions->add_option("--x", x_raw, "Information axis start:stop:count");
  regions->add_option("--y", y_raw, "Entropy axis start:stop:count");
  regions->add_option("--da", sc.region.d_A, "Key-part dimension d_A");
  add_output_flags(regions, sc);

  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the leakage bounds");
  bounds->add_option("--s-a", sc.bounds.S_a, "Entropy of the leaked system a");
  bounds->add_option("--s-b", sc.bounds.S_b, "Entropy of Bob's leaked system b");
  bounds->add_option("--dim-a", sc.bounds.dim_a, "Dimension of a");
  bounds->add_option("--d-a", sc.bounds.d_A, "Key-part dimension d_A");
  bounds->add_option("--d-b", sc.bounds.d_B, "Key-part dimension d_B");
  bounds->add_option("--d-x", sc.bounds.d_X, "Measurement outcome alphabet d_X");
  bounds->add_option("--s-c", sc.bounds.S_C, "Entropy of the product factor C");
  bounds->add_option("--s-d", sc.bounds.S_D, "Entropy of the product factor D");
  bounds->add_option("--cmi", sc.bounds.cmi, "Conditional mutual information I(a:BE|A)");
  bounds->add_option("--cmi-er", sc.bounds.cmi_er, "I(A:C|B) for the cmi_plus_er bound");
  bounds->add_option("--er-infinity", sc.bounds.er_infinity,
                     "Regularized relative entropy of entanglement");
  add_output_flags(bounds, sc);

  CLI::App* randomness = app.add_subcommand("randomness", "Private-randomness rate region");
  randomness->add_option("--state", sc.state.family,
                         "bell | product-zero | maximally-mixed | mcs-random | mcs | gamma-swap | superdense");
  randomness->add_option("--da", sc.state.da, "Alice dimension");
  randomness->add_option("--db", sc.state.db, "Bob dimension");
  randomness->add_option("--d", sc.state.d, "Maximally-correlated local dimension");
  randomness->add_option("--ds", sc.state.ds, "Shield dimension (gamma-swap)");
  randomness->add_option("--seed", sc.state.seed, "Sampling seed (mcs-random)");
  randomness->add_option("--setting", sc.setting, "Rate-region setting 1..4");
  add_output_flags(randomness, sc);

  CLI::App* markov = app.add_subcommand("markov", "Witness trajectory and backflow verdict");
  markov->add_option("--dynamics", dynamics_raw,
                     "semigroup[:gamma=G] or oscillating[:gamma=G,omega=W]");
  markov->add_option("--grid", grid_raw, "Time grid start:stop:count (default 0:3:301)");
  markov->add_option("--witness", witness_raw, "coherence or random[:seed=K,ds=D]");
  markov->add_option("--deriv-tol", sc.deriv_tol, "Derivative dead-band per unit time");
  markov->add_option("--report", sc.output.report_path, "Verdict JSON file (default: stdout)");
  add_thread_flag(markov, sc);
  add_output_flags(markov, sc);

  CLI::App* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  CLI::App* superdense = demo->add_subcommand("superdense", "Key rate before/after shield leakage");
  add_output_flags(superdense, sc);

  CLI::App* run = app.add_subcommand("run", "Execute a scenario file");
  run->add_option("scenario", scenario_path, "Path to an INI-style or JSON scenario")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);  // prints help/version, exits 0
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (run->parsed()) {
      sc = privwit::load_scenario(scenario_path);
      return privwit::run_scenario(sc, std::cout);
    }
    if (attack->parsed()) {
      sc.task = "attack";
      if (!sweep_raw.empty()) sc.sweep = parse_grid(sweep_raw, "--sweep", "alpha");
    } else if (regions->parsed()) {
      sc.task = "regions";
      if (!x_raw.empty()) sc.region.x = parse_grid(x_raw, "--x", "");
      if (!y_raw.empty()) sc.region.y = parse_grid(y_raw, "--y", "");
    } else if (bounds->parsed()) {
      sc.task = "bounds";
    } else if (randomness->parsed()) {
      sc.task = "randomness";
    } else if (markov->parsed()) {
      sc.task = "markov";
      if (!grid_raw.empty()) sc.grid = parse_grid(grid_raw, "--grid", "");
      if (!dynamics_raw.empty())
        parse_kv_spec(dynamics_raw, "--dynamics", sc.dynamics.kind, [&](const auto& k, const auto& v) {
          if (k == "gamma")
            sc.dynamics.gamma = to_double(v, "--dynamics gamma");
          else if (k == "omega")
            sc.dynamics.omega = to_double(v, "--dynamics omega");
          else
            throw ValidationError("--dynamics: unknown parameter '" + k + "'");
        });
      if (!witness_raw.empty())
        parse_kv_spec(witness_raw, "--witness", sc.witness.kind, [&](const auto& k, const auto& v) {
          if (k == "seed")
            sc.witness.seed = to_u64(v, "--witness seed");
          else if (k == "ds")
            sc.witness.ds = to_int(v, "--witness ds");
          else
            throw ValidationError("--witness: unknown parameter '" + k + "'");
        });
    } else if (superdense->parsed()) {
      sc.task = "demo-superdense";
    } else {
      std::cerr << "error: no subcommand selected\n";
      return 1;
    }
    sc.validate();
    return privwit::run_scenario(sc, std::cout);
  } catch (const privwit::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
