#include "privwit/channels.hpp"

#include <cmath>

#include "privwit/linalg.hpp"

namespace privwit {

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

void check_alpha(double alpha) {
  if (alpha < 0 || alpha > 1)
    throw ValidationError("channel parameter alpha = " + std::to_string(alpha) + " outside [0,1]");
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus, std::string label)
    : kraus_(std::move(kraus)), label_(std::move(label)) {
  if (kraus_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const auto rows = kraus_.front().rows();
  const auto cols = kraus_.front().cols();
  for (const auto& m : kraus_)
    if (m.rows() != rows || m.cols() != cols) throw ValidationError("Kraus operators differ in shape");
  Matrix sum = Matrix::Zero(cols, cols);
  for (const auto& m : kraus_) sum += m.adjoint() * m;
  double dev = (sum - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (dev > tol::cptp)
    throw NumericError("channel '" + label_ + "' violates CPTP: |sum M†M - 1| = " + std::to_string(dev));
}

KrausChannel identity_channel(int d) {
  return KrausChannel({Matrix::Identity(d, d)}, "identity");
}

Operator apply(const KrausChannel& ch, const Operator& op) {
  if (ch.d_in() != op.dim())
    throw ValidationError("channel acts on dimension " + std::to_string(ch.d_in()) + ", operator has " +
                          std::to_string(op.dim()));
  Matrix out = Matrix::Zero(ch.d_out(), ch.d_out());
  for (const auto& m : ch.kraus()) out += m * op.mat() * m.adjoint();
  if (ch.d_out() != ch.d_in())
    throw ValidationError("apply: only square channels are supported on labeled operators");
  return Operator(std::move(out), op.dims());
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(apply(ch, rho.op()));
}

Operator apply_on_factor(const KrausChannel& ch, const Operator& op, const std::string& label) {
  const auto& dims = op.dims();
  int pos = dims.index_of(label);
  if (pos < 0) throw ValidationError("unknown subsystem label '" + label + "'");
  const int df = dims.factor(pos).dim;
  const int k = ch.d_in();
  if (ch.d_out() != k) throw ValidationError("apply_on_factor: channel must be square");
  if (df % k != 0)
    throw ValidationError("channel of dimension " + std::to_string(k) + " does not embed in factor '" + label +
                          "' of dimension " + std::to_string(df));
  const int rest = df / k;
  if (k == 2 && rest > 1 && (df & (df - 1)) != 0)
    throw ValidationError("qubit channel embeds only in power-of-two factors; '" + label + "' has dimension " +
                          std::to_string(df));

  // view the flat index as (pre, a, r, post): a is the attacked block index
  int pre = 1;
  for (int i = 0; i < pos; ++i) pre *= dims.factor(i).dim;
  int post = 1;
  for (int i = pos + 1; i < dims.count(); ++i) post *= dims.factor(i).dim;

  const int d = op.dim();
  const int stride_a = rest * post;  // stride of the attacked block index
  const Matrix& m = op.mat();
  Matrix out = Matrix::Zero(d, d);

  // all flat offsets with the attacked index zeroed
  std::vector<int> base;
  base.reserve(pre * rest * post);
  for (int p = 0; p < pre; ++p)
    for (int r = 0; r < rest; ++r)
      for (int q = 0; q < post; ++q) base.push_back(p * df * post + r * post + q);

  for (const auto& M : ch.kraus()) {
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        Complex mab = M(a, b);
        if (mab == Complex(0, 0)) continue;
        for (int ap = 0; ap < k; ++ap)
          for (int bp = 0; bp < k; ++bp) {
            Complex w = mab * std::conj(M(ap, bp));
            if (w == Complex(0, 0)) continue;
            for (int row : base)
              for (int col : base) out(row + a * stride_a, col + ap * stride_a) += w * m(row + b * stride_a, col + bp * stride_a);
          }
      }
  }
  return Operator(std::move(out), dims);
}

DensityMatrix apply_on_factor(const KrausChannel& ch, const DensityMatrix& rho, const std::string& label) {
  return DensityMatrix(apply_on_factor(ch, rho.op(), label));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.d_in() != first.d_out()) throw ValidationError("compose: channel dimensions do not chain");
  std::vector<Matrix> ks;
  ks.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& a : second.kraus())
    for (const auto& b : first.kraus()) ks.push_back(a * b);
  return KrausChannel(std::move(ks), second.label() + "∘" + first.label());
}

ChannelKind parse_channel_kind(const std::string& name) {
  if (name == "bit-flip" || name == "bit_flip") return ChannelKind::BitFlip;
  if (name == "depolarizing") return ChannelKind::Depolarizing;
  if (name == "amplitude-damping" || name == "amplitude_damping") return ChannelKind::AmplitudeDamping;
  if (name == "dephasing") return ChannelKind::Dephasing;
  throw ValidationError("unknown channel kind '" + name + "'");
}

std::string channel_kind_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::BitFlip: return "bit-flip";
    case ChannelKind::Depolarizing: return "depolarizing";
    case ChannelKind::AmplitudeDamping: return "amplitude-damping";
    case ChannelKind::Dephasing: return "dephasing";
  }
  throw ValidationError("unknown channel kind");
}

KrausChannel standard_channel(ChannelKind kind, double alpha) {
  check_alpha(alpha);
  const Matrix id = Matrix::Identity(2, 2);
  switch (kind) {
    case ChannelKind::BitFlip:
      return KrausChannel({std::sqrt(1 - alpha) * id, std::sqrt(alpha) * pauli_x()}, "bit-flip");
    case ChannelKind::Depolarizing:
      return KrausChannel({std::sqrt(1 - 3 * alpha / 4) * id, std::sqrt(alpha / 4) * pauli_x(),
                           std::sqrt(alpha / 4) * pauli_y(), std::sqrt(alpha / 4) * pauli_z()},
                          "depolarizing");
    case ChannelKind::AmplitudeDamping: {
      Matrix m1(2, 2), m2(2, 2);
      m1 << 1, 0, 0, std::sqrt(1 - alpha);
      m2 << 0, std::sqrt(alpha), 0, 0;
      return KrausChannel({m1, m2}, "amplitude-damping");
    }
    case ChannelKind::Dephasing:
      return KrausChannel({std::sqrt(1 - alpha) * id, std::sqrt(alpha) * pauli_z()}, "dephasing");
  }
  throw ValidationError("unknown channel kind");
}

DynamicsKind parse_dynamics_kind(const std::string& name) {
  if (name == "semigroup") return DynamicsKind::SemigroupDephasing;
  if (name == "oscillating") return DynamicsKind::OscillatingDephasing;
  throw ValidationError("unknown dynamics kind '" + name + "'");
}

DynamicsFamily standard_dynamics(DynamicsKind kind, const DynamicsParams& p, double t_min, double t_max) {
  if (p.gamma < 0) throw ValidationError("dynamics rate gamma must be >= 0");
  if (t_max < t_min) throw ValidationError("dynamics domain has t_max < t_min");
  DynamicsFamily fam;
  fam.t_min = t_min;
  fam.t_max = t_max;
  const double gamma = p.gamma;
  const double omega = p.omega;
  auto dephasing_at = [](double q) {
    // Lambda(rho) = (1+q)/2 rho + (1-q)/2 Z rho Z, q in [-1,1]
    Matrix id = Matrix::Identity(2, 2);
    Matrix z = pauli_z();
    return KrausChannel({std::sqrt((1 + q) / 2) * id, std::sqrt((1 - q) / 2) * z}, "dephasing(t)");
  };
  switch (kind) {
    case DynamicsKind::SemigroupDephasing:
      fam.label = "semigroup";
      fam.at = [gamma, dephasing_at](double t) { return dephasing_at(std::exp(-gamma * t)); };
      return fam;
    case DynamicsKind::OscillatingDephasing:
      fam.label = "oscillating";
      fam.at = [gamma, omega, dephasing_at](double t) { return dephasing_at(std::exp(-gamma * t) * std::cos(omega * t)); };
      return fam;
  }
  throw ValidationError("unknown dynamics kind");
}

}  // namespace privwit
