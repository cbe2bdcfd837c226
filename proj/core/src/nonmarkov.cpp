#include "privwit/nonmarkov.hpp"

#include <cmath>
#include <limits>

#include "privwit/linalg.hpp"
#include "privwit/qinfo.hpp"

namespace privwit {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> central_differences(const std::vector<double>& ts, const std::vector<double>& v) {
  const size_t n = ts.size();
  std::vector<double> d(n, kNaN);
  auto slope = [&](size_t i, size_t j) {
    if (std::isnan(v[i]) || std::isnan(v[j])) return kNaN;
    return (v[j] - v[i]) / (ts[j] - ts[i]);
  };
  d[0] = slope(0, 1);
  d[n - 1] = slope(n - 2, n - 1);
  for (size_t i = 1; i + 1 < n; ++i) d[i] = slope(i - 1, i + 1);
  return d;
}
}  // namespace

Trajectory trace_norm_trajectory(const DynamicsFamily& dyn, const Operator& x,
                                 const std::vector<double>& grid) {
  if (grid.size() < 3) throw ValidationError("time grid needs at least three points");
  for (size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1]) throw ValidationError("time grid must be strictly increasing");
  if (!x.is_hermitian(tol::herm)) throw NumericError("witness operator must be Hermitian");
  if (x.dims().count() < 1) throw ValidationError("witness needs at least one tensor factor");

  const bool key_defined = trace_norm(x) <= 0.5 + tol::trace;
  const std::string local = x.dims().factor(0).label;

  Trajectory traj;
  traj.ts = grid;
  traj.f.reserve(grid.size());
  traj.g.reserve(grid.size());
  for (double t : grid) {
    if (t < dyn.t_min - tol::trace || t > dyn.t_max + tol::trace)
      throw ValidationError("grid point outside the dynamics' time domain");
    double f = trace_norm(apply_on_factor(dyn.at(t), x, local));
    traj.f.push_back(f);
    traj.g.push_back(key_defined ? 1.0 - binary_entropy(std::min(0.5 + f, 1.0)) : kNaN);
  }
  return traj;
}

NonmarkovReport detect_nonmarkov(const Trajectory& traj, double deriv_tol) {
  const size_t n = traj.ts.size();
  if (n < 3 || traj.f.size() != n)
    throw ValidationError("trajectory needs at least three consistent samples");
  if (deriv_tol <= 0) throw ValidationError("derivative tolerance must be positive");

  NonmarkovReport rep;
  rep.df_dt = central_differences(traj.ts, traj.f);
  rep.dg_dt = traj.g.size() == n ? central_differences(traj.ts, traj.g) : std::vector<double>(n, kNaN);

  size_t i = 0;
  while (i < n) {
    if (rep.df_dt[i] > deriv_tol) {
      size_t j = i;
      double mx = rep.df_dt[i];
      while (j + 1 < n && rep.df_dt[j + 1] > deriv_tol) {
        ++j;
        mx = std::max(mx, rep.df_dt[j]);
      }
      rep.intervals.push_back({traj.ts[i], traj.ts[j], mx});
      rep.markovian_on_grid = false;
      i = j + 1;
    } else {
      ++i;
    }
  }
  return rep;
}

Operator canonical_witness() {
  Matrix x = Matrix::Zero(4, 4);
  x(0, 3) = 0.25;
  x(3, 0) = 0.25;
  return Operator(std::move(x), SubsystemDims({{"A'", 2}, {"B'", 2}}));
}

}  // namespace privwit
