#pragma once

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace privwit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Numerical contract of the whole library. Hermiticity/trace/PSD checks use
// these; eigenvalues in [-psd, 0] are clamped to zero, anything below -psd is
// treated as a genuine violation and throws NumericError.
namespace tol {
inline constexpr double herm = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double psd = 1e-9;
inline constexpr double ssa = 1e-9;
inline constexpr double cptp = 1e-9;
inline constexpr double deriv = 1e-7;
}  // namespace tol

/// Malformed input: unknown labels, mismatched dimensions, bad parameters.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric contract violation beyond tolerance (non-PSD state, broken CPTP sum, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Subsystem {
  std::string label;
  int dim = 0;
};

/// Ordered list of labeled tensor factors. Row-major index convention: the
/// first factor is the most significant digit of a flat basis index.
class SubsystemDims {
 public:
  SubsystemDims() = default;
  SubsystemDims(std::initializer_list<Subsystem> factors);
  explicit SubsystemDims(std::vector<Subsystem> factors);

  int count() const { return static_cast<int>(factors_.size()); }
  int total_dim() const;
  const Subsystem& factor(int k) const { return factors_.at(k); }
  const std::vector<Subsystem>& factors() const { return factors_; }

  /// Position of a label, or -1 if absent.
  int index_of(const std::string& label) const;
  bool has(const std::string& label) const { return index_of(label) >= 0; }
  int dim_of(const std::string& label) const;
  std::vector<std::string> labels() const;

  /// Factors of `this` followed by factors of `other`; duplicate labels reject.
  SubsystemDims concat(const SubsystemDims& other) const;
  /// The named factors, kept in this object's original order.
  SubsystemDims subset(const std::vector<std::string>& labels) const;
  /// All factors not named. Order preserved.
  SubsystemDims complement(const std::vector<std::string>& labels) const;

  bool operator==(const SubsystemDims& other) const;
  std::string to_string() const;

 private:
  void validate() const;
  std::vector<Subsystem> factors_;
};

/// Dense operator on a labeled tensor-product space.
class Operator {
 public:
  Operator(Matrix mat, SubsystemDims dims);

  const Matrix& mat() const { return mat_; }
  Matrix& mat() { return mat_; }
  const SubsystemDims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  bool is_hermitian(double eps = tol::herm) const;
  Operator dagger() const { return Operator(mat_.adjoint(), dims_); }
  Complex trace() const { return mat_.trace(); }

 private:
  Matrix mat_;
  SubsystemDims dims_;
};

/// Operator validated as a quantum state: Hermitian, unit trace, PSD within tol.
class DensityMatrix {
 public:
  explicit DensityMatrix(Operator op);
  DensityMatrix(Matrix mat, SubsystemDims dims) : DensityMatrix(Operator(std::move(mat), std::move(dims))) {}

  const Operator& op() const { return op_; }
  const Matrix& mat() const { return op_.mat(); }
  const SubsystemDims& dims() const { return op_.dims(); }
  int dim() const { return op_.dim(); }

 private:
  Operator op_;
};

/// Unit vector on a labeled tensor-product space.
class PureState {
 public:
  PureState(Vector amplitudes, SubsystemDims dims);

  const Vector& amplitudes() const { return amp_; }
  const SubsystemDims& dims() const { return dims_; }
  int dim() const { return static_cast<int>(amp_.size()); }

  DensityMatrix to_density() const;

 private:
  Vector amp_;
  SubsystemDims dims_;
};

}  // namespace privwit
