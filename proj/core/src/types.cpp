#include "privwit/types.hpp"

#include <set>
#include <sstream>

namespace privwit {

SubsystemDims::SubsystemDims(std::initializer_list<Subsystem> factors) : factors_(factors) { validate(); }

SubsystemDims::SubsystemDims(std::vector<Subsystem> factors) : factors_(std::move(factors)) { validate(); }

void SubsystemDims::validate() const {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw ValidationError("subsystem '" + f.label + "' has dimension " + std::to_string(f.dim));
    if (f.label.empty()) throw ValidationError("subsystem label must be non-empty");
    if (!seen.insert(f.label).second) throw ValidationError("duplicate subsystem label '" + f.label + "'");
  }
}

int SubsystemDims::total_dim() const {
  int d = 1;
  for (const auto& f : factors_) d *= f.dim;
  return d;
}

int SubsystemDims::index_of(const std::string& label) const {
  for (int k = 0; k < count(); ++k)
    if (factors_[k].label == label) return k;
  return -1;
}

int SubsystemDims::dim_of(const std::string& label) const {
  int k = index_of(label);
  if (k < 0) throw ValidationError("unknown subsystem label '" + label + "'");
  return factors_[k].dim;
}

std::vector<std::string> SubsystemDims::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

SubsystemDims SubsystemDims::concat(const SubsystemDims& other) const {
  std::vector<Subsystem> all = factors_;
  all.insert(all.end(), other.factors_.begin(), other.factors_.end());
  return SubsystemDims(std::move(all));
}

SubsystemDims SubsystemDims::subset(const std::vector<std::string>& labels) const {
  for (const auto& l : labels)
    if (!has(l)) throw ValidationError("unknown subsystem label '" + l + "'");
  std::vector<Subsystem> kept;
  for (const auto& f : factors_)
    for (const auto& l : labels)
      if (f.label == l) kept.push_back(f);
  return SubsystemDims(std::move(kept));
}

SubsystemDims SubsystemDims::complement(const std::vector<std::string>& labels) const {
  for (const auto& l : labels)
    if (!has(l)) throw ValidationError("unknown subsystem label '" + l + "'");
  std::vector<Subsystem> kept;
  for (const auto& f : factors_) {
    bool named = false;
    for (const auto& l : labels) named = named || f.label == l;
    if (!named) kept.push_back(f);
  }
  return SubsystemDims(std::move(kept));
}

bool SubsystemDims::operator==(const SubsystemDims& other) const {
  if (count() != other.count()) return false;
  for (int k = 0; k < count(); ++k)
    if (factors_[k].label != other.factors_[k].label || factors_[k].dim != other.factors_[k].dim) return false;
  return true;
}

std::string SubsystemDims::to_string() const {
  std::ostringstream os;
  for (const auto& f : factors_) os << "(" << f.label << ":" << f.dim << ")";
  return os.str();
}

Operator::Operator(Matrix mat, SubsystemDims dims) : mat_(std::move(mat)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols())
    throw ValidationError("operator matrix must be square, got " + std::to_string(mat_.rows()) + "x" +
                          std::to_string(mat_.cols()));
  if (mat_.rows() != dims_.total_dim())
    throw ValidationError("matrix dimension " + std::to_string(mat_.rows()) + " does not match factors " +
                          dims_.to_string());
}

bool Operator::is_hermitian(double eps) const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (!op_.is_hermitian(tol::herm))
    throw NumericError("density matrix is not Hermitian within " + std::to_string(tol::herm));
  double tr = op_.mat().trace().real();
  if (std::abs(tr - 1.0) > tol::trace)
    throw NumericError("density matrix trace " + std::to_string(tr) + " deviates from 1 beyond tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op_.mat(), Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  if (lo < -tol::psd)
    throw NumericError("density matrix has eigenvalue " + std::to_string(lo) + " below -tol_psd");
}

PureState::PureState(Vector amplitudes, SubsystemDims dims) : amp_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amp_.size() != dims_.total_dim())
    throw ValidationError("state vector length " + std::to_string(amp_.size()) + " does not match factors " +
                          dims_.to_string());
  double n = amp_.norm();
  if (std::abs(n - 1.0) > tol::trace)
    throw NumericError("pure state norm " + std::to_string(n) + " deviates from 1 beyond tolerance");
}

DensityMatrix PureState::to_density() const {
  Matrix m = amp_ * amp_.adjoint();
  return DensityMatrix(Operator(std::move(m), dims_));
}

}  // namespace privwit
