#pragma once

#include <vector>

#include "privwit/types.hpp"

namespace privwit {

/// h(x) = -x log2 x - (1-x) log2 (1-x); domain [0,1], endpoints give 0.
double binary_entropy(double x);

/// Shannon entropy (base 2) of a probability vector; entries clamp at tol_psd.
double shannon_entropy(const std::vector<double>& p);

/// von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// S of the reduced state on `labels`.
double subsystem_entropy(const DensityMatrix& rho, const std::vector<std::string>& labels);

/// D(rho || sigma) in bits; +inf when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uhlmann fidelity, squared convention: F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// sqrt(F) = ||sqrt(rho) sqrt(sigma)||_1, the non-squared convention.
double fidelity_root(const DensityMatrix& rho, const DensityMatrix& sigma);

/// I(a : b | c) = S(ac) + S(bc) - S(c) - S(abc); label sets must be disjoint.
/// Factors outside the three sets are traced out first; c = {} gives plain
/// mutual information.
double conditional_mutual_information(const DensityMatrix& rho, const std::vector<std::string>& a,
                                      const std::vector<std::string>& b, const std::vector<std::string>& c);

double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& a,
                          const std::vector<std::string>& b);

/// Spectral purification with an ancilla of dimension rank(rho).
PureState purify(const DensityMatrix& rho, const std::string& ancilla_label = "anc");

}  // namespace privwit
