#pragma once

#include <vector>

#include "privwit/types.hpp"

namespace privwit {

/// Kronecker product; factor lists concatenate (labels must stay unique).
Operator tensor_product(const Operator& a, const Operator& b);

/// Trace out everything except `keep`; kept factors stay in original order.
/// keep = {} reduces to the 1x1 trace.
Operator partial_trace(const Operator& op, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// Transpose the named factors in place, leaving the rest untouched.
Operator partial_transpose(const Operator& op, const std::vector<std::string>& transposed);

/// Sum of singular values. Hermitian inputs take the eigenvalue path.
double trace_norm(const Operator& op);
double trace_norm(const Matrix& m);

/// Lift an operator acting on a label-subset to the full space (identity elsewhere).
Operator embed(const Operator& op, const SubsystemDims& full);

/// PSD square root via spectral decomposition; eigenvalues in [-tol_psd, 0]
/// clamp to zero, below that throws NumericError.
Matrix sqrt_psd(const Matrix& m);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd eigenvalues_hermitian(const Matrix& m);

/// Clamp tiny negatives of a PSD spectrum; throws below -tol_psd.
Eigen::VectorXd clamp_psd_spectrum(Eigen::VectorXd vals, const char* what);

/// Zero out eigenvalues below the eigensolver noise floor,
/// dim * eps * max(|vals|_max, scale). Hermitian eigenvalues carry absolute
/// error of order eps * ||m||, so a square root taken downstream would
/// amplify that noise to ~1e-8 near zero. Pass `scale` when the matrix was
/// formed as a product whose factor norms exceed its own spectral radius.
Eigen::VectorXd drop_spectral_noise(Eigen::VectorXd vals, double scale = 0.0);

/// n evenly spaced points covering [a, b] (n >= 1; n == 1 gives {a}).
std::vector<double> uniform_grid(double a, double b, int n);

bool approx_equal(const Matrix& a, const Matrix& b, double eps);

}  // namespace privwit
