#include "privwit/states.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

#include "privwit/linalg.hpp"
#include "privwit/qinfo.hpp"

namespace privwit {

namespace {

const SubsystemDims kKeyDims{{"A", 2}, {"B", 2}};

// place the four shield-sized blocks at key positions (0,0),(0,3),(3,0),(3,3)
Matrix x_form(const Matrix& diag00, const Matrix& diag11, const Matrix& corner) {
  const int d = static_cast<int>(diag00.rows());
  Matrix g = Matrix::Zero(4 * d, 4 * d);
  g.block(0, 0, d, d) = diag00;
  g.block(3 * d, 3 * d, d, d) = diag11;
  g.block(0, 3 * d, d, d) = corner;
  g.block(3 * d, 0, d, d) = corner.adjoint();
  return g;
}

}  // namespace

Matrix pauli(int i) {
  Matrix m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw ValidationError("pauli index must be 0..3");
  }
  return m;
}

Matrix swap_operator(int d) {
  if (d < 1) throw ValidationError("swap_operator needs d >= 1");
  Matrix v = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1;
  return v;
}

DensityMatrix assemble(const PrivateBitX& pbit) {
  const Matrix& x = pbit.x.mat();
  const int d = static_cast<int>(x.rows());
  double norm = trace_norm(x);
  if (norm > 0.5 + tol::trace)
    throw ValidationError("private bit needs ||X||_1 <= 1/2, got " + std::to_string(norm));
  Matrix d00 = sqrt_psd(Matrix(x * x.adjoint()));
  Matrix d11 = sqrt_psd(Matrix(x.adjoint() * x));
  // pad so the trace is exactly 1; vanishes at the exact-private-bit point
  double pad = (0.5 - norm) / d;
  d00 += pad * Matrix::Identity(d, d);
  d11 += pad * Matrix::Identity(d, d);
  return DensityMatrix(Operator(x_form(d00, d11, x), kKeyDims.concat(pbit.x.dims())));
}

DensityMatrix assemble(const BlockState& b) {
  if (b.p_plus < -tol::trace || b.p_minus < -tol::trace ||
      std::abs(b.p_plus + b.p_minus - 1.0) > tol::trace)
    throw ValidationError("block state needs p+ >= 0, p- >= 0, p+ + p- = 1");
  if (!(b.rho_plus.dims() == b.rho_minus.dims()))
    throw ValidationError("block state shields live on different factors: " + b.rho_plus.dims().to_string() +
                          " vs " + b.rho_minus.dims().to_string());
  Matrix p = b.p_plus * b.rho_plus.mat();
  Matrix m = b.p_minus * b.rho_minus.mat();
  return DensityMatrix(Operator(x_form((p + m) / 2, (p + m) / 2, (p - m) / 2), kKeyDims.concat(b.rho_plus.dims())));
}

DensityMatrix assemble(const SchmidtTwistData& s) {
  const int n = static_cast<int>(s.lambdas.size());
  if (n < 1) throw ValidationError("Schmidt twist needs at least one weight");
  double sum = 0;
  for (double l : s.lambdas) {
    if (l < -tol::trace) throw ValidationError("Schmidt weights must be non-negative");
    sum += l;
  }
  if (std::abs(sum - 1.0) > tol::trace)
    throw ValidationError("Schmidt weights must sum to 1, got " + std::to_string(sum));
  const int ds = s.sigma.dim();
  if (static_cast<int>(s.twist.size()) != n)
    throw ValidationError("twist matrix must be n x n for n Schmidt weights");
  for (const auto& row : s.twist) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("twist matrix must be n x n");
    for (const auto& u : row) {
      if (u.rows() != ds || u.cols() != ds) throw ValidationError("twist unitaries must match the shield dimension");
      if ((u.adjoint() * u - Matrix::Identity(ds, ds)).cwiseAbs().maxCoeff() > tol::herm)
        throw ValidationError("twist entries must be unitary");
    }
  }
  auto check_basis = [n](const std::optional<Matrix>& b, const char* which) {
    if (!b) return;
    if (b->rows() != n || b->cols() != n)
      throw ValidationError(std::string("basis ") + which + " must be n x n");
    if ((b->adjoint() * *b - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol::herm)
      throw ValidationError(std::string("basis ") + which + " must be unitary");
  };
  check_basis(s.basis_a, "e");
  check_basis(s.basis_b, "f");
  const Matrix ea = s.basis_a ? *s.basis_a : Matrix::Identity(n, n);
  const Matrix fb = s.basis_b ? *s.basis_b : Matrix::Identity(n, n);

  const int key = n * n;
  Matrix g = Matrix::Zero(key * ds, key * ds);
  for (int i = 0; i < n; ++i) {
    if (s.lambdas[i] <= 0) continue;
    for (int j = 0; j < n; ++j) {
      if (s.lambdas[j] <= 0) continue;
      double w = std::sqrt(s.lambdas[i] * s.lambdas[j]);
      Matrix shield = s.twist[i][i] * s.sigma.mat() * s.twist[j][j].adjoint();
      Vector ei = ea.col(i), fi = fb.col(i), ej = ea.col(j), fj = fb.col(j);
      Vector left(key), right(key);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          left[a * n + b] = ei[a] * fi[b];
          right[a * n + b] = ej[a] * fj[b];
        }
      Matrix keypart = w * (left * right.adjoint());
      for (int a = 0; a < key; ++a)
        for (int b = 0; b < key; ++b)
          if (keypart(a, b) != Complex(0, 0)) g.block(a * ds, b * ds, ds, ds) += keypart(a, b) * shield;
    }
  }
  SubsystemDims dims = SubsystemDims{{"A", n}, {"B", n}}.concat(s.sigma.dims());
  return DensityMatrix(Operator(std::move(g), std::move(dims)));
}

Operator gamma_swap_x(int d_s) {
  if (d_s < 2) throw ValidationError("gamma_swap needs d_s >= 2");
  Matrix x = swap_operator(d_s) / (2.0 * d_s * d_s);
  return Operator(std::move(x), SubsystemDims{{"A'", d_s}, {"B'", d_s}});
}

DensityMatrix gamma_swap(int d_s) { return assemble(PrivateBitX{gamma_swap_x(d_s)}); }

BlockState make_block_state(double p_plus, double p_minus, DensityMatrix rho_plus, DensityMatrix rho_minus) {
  BlockState b{p_plus, p_minus, std::move(rho_plus), std::move(rho_minus)};
  if (b.p_plus < -tol::trace || b.p_minus < -tol::trace ||
      std::abs(b.p_plus + b.p_minus - 1.0) > tol::trace)
    throw ValidationError("block state needs p+ >= 0, p- >= 0, p+ + p- = 1");
  return b;
}

BlockState block_decompose(const DensityMatrix& rho) {
  const auto& dims = rho.dims();
  if (dims.count() < 3 || dims.factor(0).dim != 2 || dims.factor(1).dim != 2)
    throw ValidationError("block decomposition expects (A:2)(B:2) ⊗ shield factors");
  const int d = rho.dim() / 4;
  const Matrix& m = rho.mat();
  auto blk = [&](int r, int c) { return m.block(r * d, c * d, d, d); };
  double off_mass = 0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      bool key_supported = (r == 0 || r == 3) && (c == 0 || c == 3);
      if (!key_supported) off_mass = std::max(off_mass, blk(r, c).cwiseAbs().maxCoeff());
    }
  if (off_mass > tol::herm)
    throw ValidationError("state is not in block form: weight outside the |00>,|11> key subspace");
  if ((blk(0, 0) - blk(3, 3)).cwiseAbs().maxCoeff() > tol::herm)
    throw ValidationError("state is not in block form: unequal diagonal shield blocks");
  Matrix corner = blk(0, 3);
  if ((corner - corner.adjoint()).cwiseAbs().maxCoeff() > tol::herm)
    throw ValidationError("state is not in block form: corner block is not Hermitian");

  SubsystemDims shield = dims.complement({dims.factor(0).label, dims.factor(1).label});
  Matrix plus = blk(0, 0) + corner;   // = p+ rho+
  Matrix minus = blk(0, 0) - corner;  // = p- rho-
  double pp = plus.trace().real();
  double pm = minus.trace().real();
  auto normalize = [&](Matrix part, double p) {
    if (p > tol::trace) return DensityMatrix(Operator(Matrix(part / p), shield));
    return DensityMatrix(Operator(Matrix::Identity(d, d) / d, shield));
  };
  return BlockState{pp, pm, normalize(plus, pp), normalize(minus, pm)};
}

DensityMatrix privacy_squeeze(const BlockState& b) {
  Matrix diff = b.p_plus * b.rho_plus.mat() - b.p_minus * b.rho_minus.mat();
  double c = trace_norm(diff) / 2;
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = (b.p_plus + b.p_minus) / 2;
  m(0, 3) = m(3, 0) = c;
  return DensityMatrix(Operator(std::move(m), kKeyDims));
}

DensityMatrix privacy_squeeze_state(const DensityMatrix& rho) { return privacy_squeeze(block_decompose(rho)); }

PureState superdense_example() {
  SubsystemDims dims{{"A", 4}, {"B", 4}, {"A'", 2}, {"E", 2}};
  Vector phi(4);
  phi << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  Vector psi = Vector::Zero(64);
  for (int i = 0; i < 4; ++i) {
    Vector bell = Eigen::kroneckerProduct(pauli(i), Matrix::Identity(2, 2)) * phi;
    for (int k = 0; k < 4; ++k) psi[i * 16 + i * 4 + k] = 0.5 * bell[k];
  }
  return PureState(std::move(psi), std::move(dims));
}

DensityMatrix maximally_correlated(const Matrix& c) {
  const int d = static_cast<int>(c.rows());
  if (c.cols() != d || d < 1) throw ValidationError("coefficient matrix must be square");
  if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol::herm)
    throw NumericError("coefficient matrix is not Hermitian within tolerance");
  if (std::abs(c.trace().real() - 1.0) > tol::trace)
    throw NumericError("coefficient matrix trace deviates from 1");
  double lo = eigenvalues_hermitian(c).minCoeff();
  if (lo < -tol::psd) throw NumericError("coefficient matrix has eigenvalue below -tol_psd");

  Matrix rho = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) = c(i, j);
  return DensityMatrix(Operator(std::move(rho), SubsystemDims{{"A", d}, {"B", d}}));
}

double mcs_key_rate(const DensityMatrix& rho) {
  if (rho.dims().count() != 2) throw ValidationError("mcs_key_rate expects a bipartite state");
  const auto& dims = rho.dims();
  return subsystem_entropy(rho, {dims.factor(1).label}) - von_neumann_entropy(rho);
}

}  // namespace privwit
