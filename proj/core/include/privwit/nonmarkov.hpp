#pragma once

#include <string>
#include <vector>

#include "privwit/channels.hpp"
#include "privwit/types.hpp"

namespace privwit {

// Sampled evolution of a key witness under a one-parameter dynamics.
//   f(t) = || (Lambda_t ⊗ 1) X ||_1   — trace norm of the evolved witness
//   g(t) = 1 - h(1/2 + f(t))          — certified key fraction (when f <= 1/2)
struct Trajectory {
  std::vector<double> ts;
  std::vector<double> f;
  std::vector<double> g;
};

// Evolve the witness X (the dynamics acts on X's first tensor factor) over the
// given time grid.  The grid must be strictly increasing with at least three
// points so derivatives are meaningful.  g is only defined when ||X||_1 <= 1/2;
// for larger witnesses it is filled with NaN.
Trajectory trace_norm_trajectory(const DynamicsFamily& dyn, const Operator& x,
                                 const std::vector<double>& grid);

// A maximal time interval on which the sampled witness norm is strictly
// increasing (derivative above the tolerance), i.e. where information flows
// back from the environment.
struct BackflowInterval {
  double t_start = 0;
  double t_end = 0;
  double max_derivative = 0;
};

struct NonmarkovReport {
  bool markovian_on_grid = true;
  std::vector<BackflowInterval> intervals;
  std::vector<double> df_dt;  // same length as the grid (central differences)
  std::vector<double> dg_dt;  // NaN where g is undefined
};

// Scan a trajectory for intervals of increasing witness norm.  Derivatives are
// central differences on the interior and one-sided at the ends; a point is
// flagged when df/dt exceeds deriv_tol.
NonmarkovReport detect_nonmarkov(const Trajectory& traj, double deriv_tol = tol::deriv);

// The canonical two-qubit witness X = (|00><11| + |11><00|)/4 on factors
// (A':2)(B':2); its trace norm is exactly 1/2.
Operator canonical_witness();

}  // namespace privwit
