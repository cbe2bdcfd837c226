#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "privwit/types.hpp"

namespace privwit {

// A uniformly spaced grid description (start, stop, count).
struct GridSpec {
  double start = 0;
  double stop = 1;
  int count = 101;
  std::vector<double> points() const;
};

struct StateSpec {
  std::string family = "gamma-swap";  // gamma-swap | bell | product-zero | maximally-mixed |
                                      // block-orthogonal | mcs-random | mcs | superdense
  int ds = 2;                         // shield factor dimension (gamma-swap)
  int da = 2;                         // Alice dimension (bell / product-zero / maximally-mixed)
  int db = 2;                         // Bob dimension
  int d = 2;                          // MCS local dimension
  std::uint64_t seed = 1;             // sampling seed (mcs-random, block-orthogonal)
  std::vector<std::vector<double>> c; // explicit real MCS coefficient matrix (family "mcs")
};

struct ChannelSpec {
  std::string kind = "bit-flip";  // bit-flip | depolarizing | amplitude-damping | dephasing
  double alpha = 0;
};

struct DynamicsSpec {
  std::string kind = "semigroup";  // semigroup | oscillating
  double gamma = 1;
  double omega = 0;
};

struct WitnessSpec {
  std::string kind = "coherence";  // coherence (canonical pbit witness) | random
  std::uint64_t seed = 1;
  int ds = 2;  // local dimensions of a random witness
};

struct RegionSpec {
  std::string kind = "fig2";  // fig2 / leakage-key | fig4 / product-key
  GridSpec x{0, 3, 61};       // conditional mutual information axis
  GridSpec y{0, 2, 41};       // entropy axis
  int d_A = 2;
};

struct BoundsSpec {
  double S_a = 1, S_b = 1;
  int dim_a = 2, d_A = 2, d_B = 2, d_X = 2;
  double S_C = 1, S_D = 1;
  double cmi = 1, cmi_er = 0, er_infinity = 0;
};

struct OutputSpec {
  std::string path;         // empty → stdout
  std::string format = "";  // csv | json; empty → subcommand default
  std::string report_path;  // markov verdict JSON (empty → stdout)
};

struct Scenario {
  std::string task = "attack";  // attack | regions | bounds | randomness | markov | demo-superdense
  StateSpec state;
  ChannelSpec channel;
  DynamicsSpec dynamics;
  GridSpec sweep{0, 1, 101};  // alpha sweep (attack)
  GridSpec grid{0, 3, 301};   // time grid (markov)
  int p_grid_points = 201;
  WitnessSpec witness;
  RegionSpec region;
  double deriv_tol = tol::deriv;
  int setting = 1;  // randomness setting
  BoundsSpec bounds;
  int threads = 0;  // 0 → resolve from env / hardware
  OutputSpec output;

  // Deterministic canonical serialization of every field, and its 64-bit
  // FNV-1a hash (hex). Identical scenarios hash identically regardless of the
  // config dialect they were loaded from.
  std::string canonical() const;
  std::string hash() const;

  // Range/cross-reference validation shared by the file loader and the CLI
  // flag path. Throws ValidationError naming the offending field.
  void validate() const;
};

// Load a scenario from a config file. Files ending in .json (or whose first
// non-space byte is '{') are parsed as JSON; anything else as INI-style
// `key = value` lines with [section] headers and '#' comments. Parse and
// validation errors cite file, line and field.
Scenario load_scenario(const std::string& path);

// Parse the INI/JSON text directly (diagnostics cite `name` as the file).
Scenario parse_scenario(const std::string& text, const std::string& name);

// Rectangular numeric results plus metadata, serializable as CSV or JSON.
struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, std::string> meta;  // scenario hash, tolerances, version, notes

  // RFC-4180-style CSV. One leading '#' comment line carries the metadata;
  // numbers use 12 significant digits; +inf prints as the token "inf".
  std::string to_csv() const;
  // The same payload as a JSON document (columns / rows / meta).
  std::string to_json_text() const;
};

// Shared metadata block: library version, scenario hash, tolerance set.
std::map<std::string, std::string> standard_meta(const Scenario& sc);

// Format one real with 12 significant digits ("inf"/"-inf"/"nan" tokens).
std::string format_real(double v);

// 64-bit FNV-1a of a byte string, as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace privwit
