#pragma once

#include <iosfwd>
#include <string>

#include "privwit/scenario.hpp"

namespace privwit {

// alpha sweep of a side-channel attack on a key-carrying state.
// Columns: alpha, trace_norm_witness, psq_key_witness, er_upper_bound.
ResultTable attack_table(const Scenario& sc);

// Membership grid of a leakage-bound region.
// Columns: cmi, entropy_a, inside   (leakage-vs-key)
//          cmi, min_marginal_entropy, inside   (product-vs-key)
ResultTable regions_table(const Scenario& sc);

// Leakage-bound report from the supplied entropies/dimensions.
ResultTable bounds_table(const Scenario& sc);
std::string bounds_document(const Scenario& sc);

// Randomness-rate region corners for the configured state and setting.
ResultTable randomness_table(const Scenario& sc);
std::string randomness_document(const Scenario& sc);

// Witness trajectory and the backflow verdict.
struct MarkovRun {
  ResultTable table;        // t, f, g, df_dt, dg_dt
  std::string report_json;  // verdict + intervals
};
MarkovRun markov_run(const Scenario& sc);

// Superdense-coding leakage demo (rates before/after shield loss).
std::string superdense_document();

// Dispatch a validated scenario: write files per its output spec, or stream
// payloads to `console` when no path is configured. Returns the exit code.
int run_scenario(const Scenario& sc, std::ostream& console);

}  // namespace privwit
