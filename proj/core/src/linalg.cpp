#include "privwit/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <limits>
#include <numeric>

namespace privwit {

namespace {

// Flat-index strides, row-major (first factor most significant).
std::vector<int> strides_of(const SubsystemDims& dims) {
  std::vector<int> s(dims.count(), 1);
  for (int k = dims.count() - 2; k >= 0; --k) s[k] = s[k + 1] * dims.factor(k + 1).dim;
  return s;
}

// All flat offsets reachable by varying only the factors in `which`.
std::vector<int> offsets_of(const SubsystemDims& dims, const std::vector<int>& which) {
  auto strides = strides_of(dims);
  std::vector<int> offs{0};
  for (int k : which) {
    int d = dims.factor(k).dim;
    std::vector<int> next;
    next.reserve(offs.size() * d);
    for (int base : offs)
      for (int v = 0; v < d; ++v) next.push_back(base + v * strides[k]);
    offs = std::move(next);
  }
  return offs;
}

std::vector<int> positions_of(const SubsystemDims& dims, const std::vector<std::string>& labels) {
  std::vector<int> pos;
  pos.reserve(labels.size());
  for (const auto& l : labels) {
    int k = dims.index_of(l);
    if (k < 0) throw ValidationError("unknown subsystem label '" + l + "'");
    for (int p : pos)
      if (p == k) throw ValidationError("subsystem label '" + l + "' listed twice");
    pos.push_back(k);
  }
  std::sort(pos.begin(), pos.end());
  return pos;
}

}  // namespace

Operator tensor_product(const Operator& a, const Operator& b) {
  Matrix m = Eigen::kroneckerProduct(a.mat(), b.mat());
  return Operator(std::move(m), a.dims().concat(b.dims()));
}

Operator partial_trace(const Operator& op, const std::vector<std::string>& keep) {
  const auto& dims = op.dims();
  auto kept_pos = positions_of(dims, keep);
  std::vector<int> traced_pos;
  for (int k = 0; k < dims.count(); ++k)
    if (std::find(kept_pos.begin(), kept_pos.end(), k) == kept_pos.end()) traced_pos.push_back(k);

  auto kept_offs = offsets_of(dims, kept_pos);
  auto traced_offs = offsets_of(dims, traced_pos);
  const int dk = static_cast<int>(kept_offs.size());

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = op.mat();
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      Complex acc(0, 0);
      for (int t : traced_offs) acc += m(kept_offs[r] + t, kept_offs[c] + t);
      out(r, c) = acc;
    }

  std::vector<Subsystem> kept_factors;
  for (int k : kept_pos) kept_factors.push_back(dims.factor(k));
  return Operator(std::move(out), SubsystemDims(std::move(kept_factors)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  return DensityMatrix(partial_trace(rho.op(), keep));
}

Operator partial_transpose(const Operator& op, const std::vector<std::string>& transposed) {
  const auto& dims = op.dims();
  auto pos = positions_of(dims, transposed);
  auto t_offs = offsets_of(dims, pos);
  std::vector<int> rest_pos;
  for (int k = 0; k < dims.count(); ++k)
    if (std::find(pos.begin(), pos.end(), k) == pos.end()) rest_pos.push_back(k);
  auto r_offs = offsets_of(dims, rest_pos);

  const Matrix& m = op.mat();
  Matrix out(m.rows(), m.cols());
  for (int rr : r_offs)
    for (int rc : r_offs)
      for (size_t ti = 0; ti < t_offs.size(); ++ti)
        for (size_t tj = 0; tj < t_offs.size(); ++tj)
          out(rr + t_offs[tj], rc + t_offs[ti]) = m(rr + t_offs[ti], rc + t_offs[tj]);
  return Operator(std::move(out), dims);
}

double trace_norm(const Matrix& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol::herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const Operator& op) { return trace_norm(op.mat()); }

Operator embed(const Operator& op, const SubsystemDims& full) {
  auto pos = positions_of(full, op.dims().labels());
  // factor order inside `op` must match the order those labels take in `full`
  {
    std::vector<Subsystem> expect;
    for (int k : pos) expect.push_back(full.factor(k));
    if (!(SubsystemDims(expect) == op.dims()))
      throw ValidationError("embed: factor order/dims " + op.dims().to_string() + " do not match " +
                            full.to_string());
  }
  auto s_offs = offsets_of(full, pos);
  std::vector<int> rest_pos;
  for (int k = 0; k < full.count(); ++k)
    if (std::find(pos.begin(), pos.end(), k) == pos.end()) rest_pos.push_back(k);
  auto r_offs = offsets_of(full, rest_pos);

  const int ds = static_cast<int>(s_offs.size());
  Matrix out = Matrix::Zero(full.total_dim(), full.total_dim());
  const Matrix& m = op.mat();
  for (int r : r_offs)
    for (int i = 0; i < ds; ++i)
      for (int j = 0; j < ds; ++j) out(r + s_offs[i], r + s_offs[j]) = m(i, j);
  return Operator(std::move(out), full);
}

Eigen::VectorXd eigenvalues_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Eigen::VectorXd clamp_psd_spectrum(Eigen::VectorXd vals, const char* what) {
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < -tol::psd)
      throw NumericError(std::string(what) + ": eigenvalue " + std::to_string(vals[i]) + " below -tol_psd");
    if (vals[i] < 0) vals[i] = 0;
  }
  return vals;
}

Eigen::VectorXd drop_spectral_noise(Eigen::VectorXd vals, double scale) {
  if (vals.size() == 0) return vals;
  double floor = static_cast<double>(vals.size()) * std::numeric_limits<double>::epsilon() *
                 std::max(scale, vals.cwiseAbs().maxCoeff());
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] < floor) vals[i] = 0;
  return vals;
}

Matrix sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Eigen::VectorXd vals = drop_spectral_noise(clamp_psd_spectrum(es.eigenvalues(), "sqrt_psd"));
  return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = a;
    return g;
  }
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return g;
}

bool approx_equal(const Matrix& a, const Matrix& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= eps;
}

}  // namespace privwit
