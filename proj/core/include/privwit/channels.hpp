#pragma once

#include <functional>
#include <string>
#include <vector>

#include "privwit/types.hpp"

namespace privwit {

/// CPTP map in Kraus form; sum M†M = 1 is checked within tol_cptp.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> kraus, std::string label = "");

  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }
  int d_in() const { return static_cast<int>(kraus_.front().cols()); }
  int d_out() const { return static_cast<int>(kraus_.front().rows()); }

 private:
  std::vector<Matrix> kraus_;
  std::string label_;
};

KrausChannel identity_channel(int d);

/// Apply to the whole space; channel dimension must match op.dim().
Operator apply(const KrausChannel& ch, const Operator& op);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Apply to the factor named `label`. A channel smaller than the factor embeds
/// on the leading block: the factor is read as (d_in x rest), i.e. a qubit
/// channel acts on the first qubit of a power-of-two factor. Errors when the
/// factor does not split that way.
Operator apply_on_factor(const KrausChannel& ch, const Operator& op, const std::string& label);
DensityMatrix apply_on_factor(const KrausChannel& ch, const DensityMatrix& rho, const std::string& label);

/// Compose: (second after first), dims must chain.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

enum class ChannelKind { BitFlip, Depolarizing, AmplitudeDamping, Dephasing };

ChannelKind parse_channel_kind(const std::string& name);
std::string channel_kind_name(ChannelKind kind);

/// The four standard single-qubit noise families, alpha in [0,1].
KrausChannel standard_channel(ChannelKind kind, double alpha);

/// Time-parametrized channel family on [t_min, t_max].
struct DynamicsFamily {
  std::function<KrausChannel(double)> at;
  double t_min = 0;
  double t_max = 0;
  std::string label;
};

enum class DynamicsKind { SemigroupDephasing, OscillatingDephasing };

struct DynamicsParams {
  double gamma = 1.0;
  double omega = 0.0;
};

DynamicsKind parse_dynamics_kind(const std::string& name);

/// Qubit dephasing with coherence factor q(t): semigroup q = exp(-gamma t),
/// oscillating q = exp(-gamma t) cos(omega t).
DynamicsFamily standard_dynamics(DynamicsKind kind, const DynamicsParams& p, double t_min = 0, double t_max = 1);

}  // namespace privwit
