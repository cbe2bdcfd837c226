#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "privwit/channels.hpp"
#include "privwit/types.hpp"

namespace privwit {

/// POVM on a labeled subsystem: PSD elements summing to the identity.
class Povm {
 public:
  Povm(std::vector<Operator> elements);

  const std::vector<Operator>& elements() const { return elements_; }
  int outcomes() const { return static_cast<int>(elements_.size()); }
  const SubsystemDims& dims() const { return elements_.front().dims(); }

  static Povm computational(const SubsystemDims& dims);

 private:
  std::vector<Operator> elements_;
};

/// Classical-quantum ensemble after a measurement: outcome probabilities with
/// conditional states on the remaining quantum factors, plus an optional
/// deterministic tag per outcome (the public announcement T).
struct CcqState {
  std::vector<double> probs;
  std::vector<DensityMatrix> conditionals;
  std::vector<int> tags;  // empty = untagged (single block)
};

/// Measure `alice` on a pure multipartite state and trace it out.
CcqState measure_and_trace(const PureState& psi, const std::vector<std::string>& alice, const Povm& q,
                           const std::vector<int>& tags = {});

/// Devetak–Winter rate I(X:B|T) - I(X:E|T) of a ccq ensemble for a fixed
/// bipartition of the quantum factors into Bob and Eve.
double dw_rate(const CcqState& ccq, const std::vector<std::string>& bob, const std::vector<std::string>& eve);

/// Same, starting from the pure state: measure `alice` with `q`, give `eve`
/// to the adversary, everything else to Bob.
double dw_rate(const PureState& psi, const std::vector<std::string>& alice, const std::vector<std::string>& eve,
               const Povm& q, const std::vector<int>& tags = {});

/// Key of the privacy-squeezed attacked block state: 1 - h(1/2 + ||(Λ_{A'} ⊗ 1)X||_1).
/// The channel acts on the first factor of X (embedding on its leading qubit
/// when the factor is larger). Needs ||X||_1 <= 1/2.
double psq_key_witness(const Operator& x, const KrausChannel& ch);

/// ||(Λ ⊗ 1)X||_1 itself, the trace-norm witness behind psq_key_witness.
double attacked_corner_norm(const Operator& x, const KrausChannel& ch);

/// Relative entropy of entanglement of a Bell-diagonal state with weights q
/// (>= 0, summing to 1): 0 if max q <= 1/2, else 1 - h(max q).
double bell_diagonal_er(const std::array<double, 4>& q);

/// Upper bound on the entanglement (and key) of an attacked gamma_V-shaped
/// state: min over the p-grid of D( Λ_{A'}(γ) || (1-p) σ_att + p·1/dim ),
/// σ_att = Λ_{A'}( 1/2(|00><00|+|11><11|)_AB ⊗ 1/d_shield ). The grid minimum
/// is polished once by golden-section search around the argmin. +inf grid
/// entries (support mismatches at p = 0) are skipped.
double er_upper_bound_attack(const DensityMatrix& gamma, const KrausChannel& ch,
                             const std::vector<double>& p_grid);

/// log2 || rho^{T_right} ||_1 for the bipartition (left | right); the two
/// label sets must cover all factors.
double negativity(const DensityMatrix& rho, const std::vector<std::string>& left,
                  const std::vector<std::string>& right);

/// Squashed-entanglement-style bound from one extension: I(A:B|E)/2.
double squashed_bound(const DensityMatrix& rho_ext, const std::vector<std::string>& a,
                      const std::vector<std::string>& b, const std::vector<std::string>& e);

/// delta = sqrt(1 - 2^{-I(a:BE|A)}), the recoverability defect driving the
/// continuity-based leakage bounds. The CMI is clamped at 0.
double recovery_delta(double cmi_bits);

/// Same defect computed from a state: delta = sqrt(1 - 2^{-I(a : be | rest)}).
double recovery_delta(const DensityMatrix& rho, const std::vector<std::string>& a,
                      const std::vector<std::string>& be, const std::vector<std::string>& rest);

struct LeakageBoundInputs {
  double S_a = 0;       // entropy of the leaked/erased system
  double S_b = 0;       // entropy of the system leaked on Bob's side
  int dim_a = 2;        // |a|, the leaked system's dimension
  int d_A = 2;          // key-part dimension on Alice's side
  int d_B = 2;          // key-part dimension on Bob's side
  int d_X = 2;          // measurement-outcome alphabet size
  double S_C = 0;       // marginal entropies of the product-state bound
  double S_D = 0;
  double cmi = 0;       // I(a:BE|A) feeding delta
  double cmi_er = 0;    // I(A:C|B) of the general bound
  double er_infinity = 0;  // caller-supplied regularized rel. entropy of entanglement
};

struct LeakageBound {
  std::string name;
  double bits = 0;
  std::string applies_to;
};

struct LeakageBoundReport {
  double delta = 0;  // recovery delta derived from inputs.cmi
  std::vector<LeakageBound> bounds;
  const LeakageBound& operator[](const std::string& name) const;
};

/// Evaluate every key-leakage bound from precomputed entropies/dimensions.
LeakageBoundReport leakage_bounds(const LeakageBoundInputs& in);

struct RandomnessRates {
  int setting = 1;
  double R_A_max = 0;
  double R_B_max = 0;
  double R_sum_max = 0;  // always the global rate log2|A| + log2|B| - S(AB)
};

/// Achievable one-sided randomness-per-party bounds for the four operating
/// settings (1: independent sources, 2: no extra noise, 3: free global noise,
/// 4: pooled local systems).
RandomnessRates randomness_rates(const DensityMatrix& rho, const std::vector<std::string>& a,
                                 const std::vector<std::string>& b, int setting);

enum class RegionKind { LeakageVsKey, ProductVsKey };

RegionKind parse_region_kind(const std::string& name);

struct RegionGrid {
  RegionKind kind;
  std::vector<double> x;  // conditional mutual information axis
  std::vector<double> y;  // entropy axis
  std::vector<std::uint8_t> inside;  // row-major over (x, y)
  bool at(int ix, int iy) const { return inside[static_cast<size_t>(ix) * y.size() + iy] != 0; }
};

/// Feasibility region of 8 delta log2(d_A) + 4 h(delta) <= RHS with
/// delta = sqrt(1 - 2^{-x}); RHS is 2y (LeakageVsKey) or y (ProductVsKey).
RegionGrid region_grid(RegionKind kind, const std::vector<double>& x, const std::vector<double>& y, int d_A);

}  // namespace privwit
