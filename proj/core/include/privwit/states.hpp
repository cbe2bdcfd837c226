#pragma once

#include <optional>
#include <vector>

#include "privwit/types.hpp"

namespace privwit {

/// Key-carrying state in X-form: a two-qubit key part (A:2)(B:2) in basis
/// |00>,|01>,|10>,|11| over shield factors, with blocks
///   [ sqrt(XX†) . . X ; 0 ; 0 ; X† . . sqrt(X†X) ].
/// ||X||_1 = 1/2 gives an exact private bit. Smaller trace norms are accepted
/// (the diagonal blocks gain a maximally mixed pad so the trace stays 1) and
/// yield a non-private state with key witness below 1.
struct PrivateBitX {
  Operator x;  // acts on the shield factors; scalar (empty dims) allowed
};

/// p+ psi+ ⊗ rho+ + p- psi- ⊗ rho-, with psi± = (|00> ± |11>)/sqrt(2).
struct BlockState {
  double p_plus = 0;
  double p_minus = 0;
  DensityMatrix rho_plus;
  DensityMatrix rho_minus;
};

/// Schmidt-basis controlled twist of a pure key part over a shield state:
/// sum_ij sqrt(lambda_i lambda_j) |e_i f_i><e_j f_j| ⊗ U_i sigma U_j†.
/// twist holds the full matrix of unitaries U^(ij); only the diagonal U^(ii)
/// enters the state (the off-diagonal entries are retained and validated, but
/// the controlled twist never consults them on this input class).
struct SchmidtTwistData {
  std::vector<double> lambdas;
  std::vector<std::vector<Matrix>> twist;
  DensityMatrix sigma;
  std::optional<Matrix> basis_a;  // columns e_i; identity when absent
  std::optional<Matrix> basis_b;  // columns f_i
};

/// Assemble the X-form state on (A:2)(B:2) ⊗ shield.
DensityMatrix assemble(const PrivateBitX& pbit);
DensityMatrix assemble(const BlockState& b);
DensityMatrix assemble(const SchmidtTwistData& s);

/// The swap operator sum_ij |ij><ji| on two d-dimensional factors.
Matrix swap_operator(int d);

/// Private bit gamma_V with X = swap/(2 d_s^2) on shield (A':d_s)(B':d_s).
DensityMatrix gamma_swap(int d_s);
/// The X operator of gamma_swap, for witness evaluations.
Operator gamma_swap_x(int d_s);

/// Block state on (A:2)(B:2) ⊗ shield factors of the rho±.
BlockState make_block_state(double p_plus, double p_minus, DensityMatrix rho_plus, DensityMatrix rho_minus);

/// Read the block decomposition back off a density matrix whose key part is
/// supported on |00>,|11> with equal diagonal blocks and Hermitian corner.
BlockState block_decompose(const DensityMatrix& rho);

/// 4x4 key-part state with corners (p+ + p-)/2 and off-diagonal corners
/// ||p+ rho+ - p- rho-||_1 / 2. Keeps all the key distillable from the block.
DensityMatrix privacy_squeeze(const BlockState& b);
DensityMatrix privacy_squeeze_state(const DensityMatrix& rho);

/// Four-outcome superdense-coding flag state: 1/2 sum_i |ii>_AB ⊗ (sigma_i ⊗ 1) |Phi>_{A'E}
/// on (A:4)(B:4)(A':2)(E:2). Tracing E leaves a key state whose whole key
/// hangs on the shield qubit A'.
PureState superdense_example();

/// Maximally correlated state sum_ij c_ij |ii><jj| on (A:d)(B:d);
/// c must be PSD with unit trace.
DensityMatrix maximally_correlated(const Matrix& c);

/// Distillable key of a maximally correlated state: S(B) - S(AB).
double mcs_key_rate(const DensityMatrix& rho);

/// sigma_i for i = 0..3 (identity, x, y, z).
Matrix pauli(int i);

}  // namespace privwit
