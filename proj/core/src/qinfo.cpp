#include "privwit/qinfo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "privwit/linalg.hpp"

namespace privwit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }
}  // namespace

double binary_entropy(double x) {
  if (x < -tol::psd || x > 1 + tol::psd)
    throw ValidationError("binary_entropy argument " + std::to_string(x) + " outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  return -xlog2x(x) - xlog2x(1 - x);
}

double shannon_entropy(const std::vector<double>& p) {
  double s = 0;
  for (double x : p) {
    if (x < -tol::psd) throw NumericError("shannon_entropy: negative probability " + std::to_string(x));
    s -= xlog2x(std::max(x, 0.0));
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::VectorXd vals = clamp_psd_spectrum(eigenvalues_hermitian(rho.mat()), "von_neumann_entropy");
  double s = 0;
  for (int i = 0; i < vals.size(); ++i) s -= xlog2x(vals[i]);
  return s;
}

double subsystem_entropy(const DensityMatrix& rho, const std::vector<std::string>& labels) {
  return von_neumann_entropy(partial_trace(rho, labels));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw ValidationError("relative_entropy: dimension mismatch " + std::to_string(rho.dim()) + " vs " +
                          std::to_string(sigma.dim()));
  Eigen::SelfAdjointEigenSolver<Matrix> er(rho.mat());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.mat());
  Eigen::VectorXd lam = clamp_psd_spectrum(er.eigenvalues(), "relative_entropy(rho)");
  Eigen::VectorXd mu = clamp_psd_spectrum(es.eigenvalues(), "relative_entropy(sigma)");

  double tr_rho_log_rho = 0;
  for (int i = 0; i < lam.size(); ++i) tr_rho_log_rho += xlog2x(lam[i]);

  // weight of rho on each eigenvector of sigma
  Matrix basis = es.eigenvectors();
  Eigen::VectorXd w = (basis.adjoint() * rho.mat() * basis).diagonal().real();
  double tr_rho_log_sigma = 0;
  for (int j = 0; j < mu.size(); ++j) {
    if (mu[j] <= tol::psd) {
      if (w[j] > tol::psd) return kInf;  // rho leaks outside supp(sigma)
      continue;
    }
    tr_rho_log_sigma += std::max(w[j], 0.0) * std::log2(mu[j]);
  }
  return tr_rho_log_rho - tr_rho_log_sigma;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("fidelity: dimension mismatch");
  Matrix sr = sqrt_psd(rho.mat());
  Matrix inner = sr * sigma.mat() * sr;
  // Trace-one factors bound the product's formation noise by ~eps even when
  // the overlap (and hence the spectrum of `inner`) is small.
  Eigen::VectorXd vals = drop_spectral_noise(clamp_psd_spectrum(eigenvalues_hermitian(inner), "fidelity"), 1.0);
  double root = vals.cwiseSqrt().sum();
  return root * root;
}

double fidelity_root(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("fidelity_root: dimension mismatch");
  return trace_norm(Matrix(sqrt_psd(rho.mat()) * sqrt_psd(sigma.mat())));
}

double conditional_mutual_information(const DensityMatrix& rho, const std::vector<std::string>& a,
                                      const std::vector<std::string>& b, const std::vector<std::string>& c) {
  std::set<std::string> seen;
  for (const auto* group : {&a, &b, &c})
    for (const auto& l : *group) {
      if (!rho.dims().has(l)) throw ValidationError("unknown subsystem label '" + l + "'");
      if (!seen.insert(l).second) throw ValidationError("label '" + l + "' appears in two groups");
    }
  auto join = [](std::vector<std::string> x, const std::vector<std::string>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  DensityMatrix abc = partial_trace(rho, join(join(a, b), c));
  double s_ac = subsystem_entropy(abc, join(a, c));
  double s_bc = subsystem_entropy(abc, join(b, c));
  double s_c = subsystem_entropy(abc, c);
  double s_abc = von_neumann_entropy(abc);
  return s_ac + s_bc - s_c - s_abc;
}

double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& a,
                          const std::vector<std::string>& b) {
  return conditional_mutual_information(rho, a, b, {});
}

PureState purify(const DensityMatrix& rho, const std::string& ancilla_label) {
  if (rho.dims().has(ancilla_label))
    throw ValidationError("ancilla label '" + ancilla_label + "' already present in state");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
  Eigen::VectorXd vals = clamp_psd_spectrum(es.eigenvalues(), "purify");

  std::vector<int> kept;
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] > tol::psd) kept.push_back(i);
  if (kept.empty()) throw NumericError("purify: state has numerically empty spectrum");
  // descending weight so the ancilla basis is deterministic
  std::sort(kept.begin(), kept.end(), [&](int i, int j) { return vals[i] > vals[j]; });

  const int rank = static_cast<int>(kept.size());
  const int d = rho.dim();
  Vector psi = Vector::Zero(d * rank);
  for (int k = 0; k < rank; ++k) {
    double root = std::sqrt(vals[kept[k]]);
    for (int i = 0; i < d; ++i) psi[i * rank + k] = root * es.eigenvectors()(i, kept[k]);
  }
  psi /= psi.norm();  // absorb clamped mass, O(tol) correction
  SubsystemDims dims = rho.dims().concat(SubsystemDims{{ancilla_label, rank}});
  return PureState(std::move(psi), std::move(dims));
}

}  // namespace privwit
