#include "privwit/random.hpp"

#include "privwit/channels.hpp"
#include "privwit/linalg.hpp"

namespace privwit {

double Rng::uniform(double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(gen_);
}

int Rng::uniform_int(int a, int b) {
  std::uniform_int_distribution<int> d(a, b);
  return d(gen_);
}

Complex Rng::gaussian() {
  std::normal_distribution<double> n(0.0, 1.0);
  return Complex(n(gen_), n(gen_));
}

Matrix Rng::ginibre(int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = gaussian();
  return g;
}

Matrix Rng::unitary(int d) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(d, d));
  Matrix q = qr.householderQ();
  // fix the phase convention so sampling is Haar, not QR-implementation-biased
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    Complex ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

Matrix Rng::isometry(int d_in, int d_out) {
  if (d_out < d_in) throw ValidationError("isometry needs d_out >= d_in");
  return unitary(d_out).leftCols(d_in);
}

DensityMatrix Rng::density(const SubsystemDims& dims, int rank) {
  int d = dims.total_dim();
  if (rank <= 0 || rank > d) rank = d;
  Matrix g = ginibre(d, rank);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(Operator(std::move(rho), dims));
}

PureState Rng::pure(const SubsystemDims& dims) {
  Vector v(dims.total_dim());
  for (int i = 0; i < v.size(); ++i) v[i] = gaussian();
  v /= v.norm();
  return PureState(std::move(v), dims);
}

Operator Rng::hermitian(const SubsystemDims& dims, double target_trace_norm) {
  int d = dims.total_dim();
  Matrix g = ginibre(d, d);
  Matrix h = (g + g.adjoint()) / 2.0;
  double tn = trace_norm(h);
  if (tn <= 0) throw NumericError("degenerate random Hermitian sample");
  h *= target_trace_norm / tn;
  return Operator(std::move(h), dims);
}

KrausChannel Rng::channel(int d, int kraus_count) {
  if (kraus_count < 1) throw ValidationError("channel needs at least one Kraus operator");
  Matrix w = isometry(d, d * kraus_count);  // columns: |in> -> sum_k |out>|k-th block>
  std::vector<Matrix> ks;
  ks.reserve(kraus_count);
  for (int k = 0; k < kraus_count; ++k) ks.push_back(w.middleRows(k * d, d));
  return KrausChannel(std::move(ks), "random");
}

Matrix Rng::mcs_coefficients(int d) {
  Matrix g = ginibre(d, d);
  Matrix c = g * g.adjoint();
  c /= c.trace().real();
  return c;
}

}  // namespace privwit
