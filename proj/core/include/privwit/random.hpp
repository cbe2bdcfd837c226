#pragma once

#include <random>

#include "privwit/types.hpp"

namespace privwit {

class KrausChannel;

/// Seeded sampling for property tests and the CLI's random-witness modes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a = 0.0, double b = 1.0);
  int uniform_int(int a, int b);  // inclusive
  Complex gaussian();             // standard complex normal

  Matrix ginibre(int rows, int cols);
  Matrix unitary(int d);                  // Haar via QR of a Ginibre matrix
  Matrix isometry(int d_in, int d_out);   // d_out >= d_in, columns orthonormal

  /// Full-rank (or rank-limited) random density matrix on the given factors.
  DensityMatrix density(const SubsystemDims& dims, int rank = 0);
  PureState pure(const SubsystemDims& dims);

  /// Random Hermitian operator rescaled to the requested trace norm.
  Operator hermitian(const SubsystemDims& dims, double target_trace_norm);

  /// Random CPTP map with `kraus_count` Kraus operators (Stinespring cut).
  KrausChannel channel(int d, int kraus_count);

  /// Random maximally correlated coefficient matrix: PSD, unit trace.
  Matrix mcs_coefficients(int d);

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace privwit
