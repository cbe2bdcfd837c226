#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

#include "privwit/channels.hpp"
#include "privwit/linalg.hpp"
#include "privwit/qinfo.hpp"
#include "privwit/random.hpp"
#include "privwit/states.hpp"
#include "privwit/types.hpp"
#include "test_helpers.hpp"

using namespace privwit;
using namespace privwit::testing;

TEST_CASE("subsystem dims: ordering, lookup, validation") {
  SubsystemDims dims({{"A", 2}, {"B", 3}, {"C", 4}});
  CHECK(dims.total_dim() == 24);
  CHECK(dims.count() == 3);
  CHECK(dims.dim_of("B") == 3);
  CHECK(dims.index_of("C") == 2);
  CHECK(!dims.has("Z"));
  CHECK(dims.subset({"C", "A"}).to_string() == SubsystemDims({{"A", 2}, {"C", 4}}).to_string());
  CHECK(dims.complement({"B"}) == SubsystemDims({{"A", 2}, {"C", 4}}));
  CHECK_THROWS_AS(SubsystemDims({{"A", 2}, {"A", 2}}), ValidationError);
  CHECK_THROWS_AS(SubsystemDims({{"A", 0}}), ValidationError);
  CHECK_THROWS_AS(SubsystemDims({{"", 2}}), ValidationError);
  CHECK_THROWS_AS(dims.subset({"Q"}), ValidationError);
}

TEST_CASE("density matrix validation") {
  SubsystemDims q({{"A", 2}});
  CHECK_NOTHROW(DensityMatrix(Matrix::Identity(2, 2) / 2, q));
  Matrix not_herm(2, 2);
  not_herm << 0.5, 0.3, 0.1, 0.5;
  CHECK_THROWS_AS(DensityMatrix(not_herm, q), NumericError);
  CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(2, 2), q), NumericError);  // trace 2
  Matrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS(DensityMatrix(neg, q), NumericError);
  CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(3, 3) / 3, q), ValidationError);  // dim mismatch
}

TEST_CASE("pure state validation and density conversion") {
  Vector v = basis_vector(0, 4);
  PureState psi(v, SubsystemDims({{"A", 2}, {"B", 2}}));
  CHECK(close(psi.to_density().mat()(0, 0).real(), 1.0));
  Vector bad = 2 * v;
  CHECK_THROWS_AS(PureState(bad, SubsystemDims({{"A", 2}, {"B", 2}})), NumericError);
}

TEST_CASE("tensor product and embed") {
  Operator x(pauli(1), SubsystemDims({{"A", 2}}));
  Operator z(pauli(3), SubsystemDims({{"B", 2}}));
  Operator xz = tensor_product(x, z);
  CHECK(xz.dims() == SubsystemDims({{"A", 2}, {"B", 2}}));
  CHECK(close(std::abs(xz.mat()(0, 2).real() - 1.0), 0));  // (X ⊗ Z)(0,2) = 1

  Operator lifted = embed(z, SubsystemDims({{"A", 2}, {"B", 2}}));
  Matrix expect = Eigen::kroneckerProduct(Matrix::Identity(2, 2), pauli(3)).eval();
  CHECK(approx_equal(lifted.mat(), expect, 1e-12));
}

TEST_CASE("partial trace: basic reductions") {
  PureState bell = max_entangled(2);
  DensityMatrix rho = bell.to_density();
  DensityMatrix a = partial_trace(rho, {"A"});
  CHECK(approx_equal(a.mat(), Matrix::Identity(2, 2) / 2, 1e-12));

  // keep-all is the identity; keep-none is the full trace
  CHECK(approx_equal(partial_trace(rho, {"A", "B"}).mat(), rho.mat(), 1e-12));
  Operator traced = partial_trace(rho.op(), std::vector<std::string>{});
  CHECK(traced.dim() == 1);
  CHECK(close(traced.mat()(0, 0).real(), 1.0));
}

TEST_CASE("partial trace of the swap-shield state keeps its key corners") {
  // Tracing one shield factor of the swap-witness state leaves 1/8 of the
  // identity in the key corners (tr_{A'} swap = 1), not a dephased state —
  // this nonzero corner is what the attack bound sees at full strength.
  DensityMatrix gamma = gamma_swap(2);
  DensityMatrix reduced = partial_trace(gamma, {"A", "B", "B'"});
  Matrix expect = Matrix::Zero(8, 8);
  // key |00><00| and |11><11| diagonal blocks: I_2 / 4
  expect.block(0, 0, 2, 2) = Matrix::Identity(2, 2) / 4;
  expect.block(6, 6, 2, 2) = Matrix::Identity(2, 2) / 4;
  // key |00><11| and |11><00| corners: I_2 / 8
  expect.block(0, 6, 2, 2) = Matrix::Identity(2, 2) / 8;
  expect.block(6, 0, 2, 2) = Matrix::Identity(2, 2) / 8;
  CHECK(approx_equal(reduced.mat(), expect, 1e-12));
}

TEST_CASE("partial transpose: maximally entangled spectrum") {
  DensityMatrix bell = max_entangled(2).to_density();
  Operator pt = partial_transpose(bell.op(), {"B"});
  Eigen::VectorXd vals = eigenvalues_hermitian(pt.mat());
  CHECK(close(vals.minCoeff(), -0.5, 1e-12));
  CHECK(close(vals.maxCoeff(), 0.5, 1e-12));
  CHECK(close(trace_norm(pt), 2.0, 1e-12));
}

TEST_CASE("trace norm: Hermitian and general routes agree") {
  Rng rng(11);
  SubsystemDims dims({{"s", 4}});
  for (int i = 0; i < 25; ++i) {
    Matrix g = rng.ginibre(4, 4);
    Eigen::BDCSVD<Matrix> svd(g);
    double expect = svd.singularValues().sum();
    CHECK(close(trace_norm(g), expect, 1e-9));
    Operator h = rng.hermitian(dims, 1.0);
    CHECK(close(trace_norm(h), 1.0, 1e-9));
  }
  CHECK(close(trace_norm(gamma_swap_x(2)), 0.5, 1e-12));
}

TEST_CASE("sqrt_psd") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 4;
  m(1, 1) = 9;
  Matrix r = sqrt_psd(m);
  CHECK(close(r(0, 0).real(), 2));
  CHECK(close(r(1, 1).real(), 3));
}

TEST_CASE("binary and shannon entropy") {
  CHECK(binary_entropy(0) == 0);
  CHECK(binary_entropy(1) == 0);
  CHECK(close(binary_entropy(0.5), 1.0, 1e-15));
  CHECK(close(binary_entropy(0.11), kH011, 1e-12));
  CHECK(close(binary_entropy(0.75), 1.0 - kOneMinusHThreeQuarters, 1e-12));
  CHECK(close(binary_entropy(1.0 / std::sqrt(2.0)), kHInvSqrt2, 1e-12));
  CHECK_THROWS_AS(binary_entropy(-0.01), ValidationError);
  CHECK_THROWS_AS(binary_entropy(1.01), ValidationError);
  CHECK(close(shannon_entropy({0.5, 0.5}), 1.0, 1e-15));
  CHECK(close(shannon_entropy({0.25, 0.25, 0.25, 0.25}), 2.0, 1e-15));
}

TEST_CASE("von Neumann entropy") {
  SubsystemDims q({{"A", 2}});
  CHECK(close(von_neumann_entropy(DensityMatrix(Matrix::Identity(2, 2) / 2, q)), 1.0, 1e-12));
  CHECK(close(von_neumann_entropy(DensityMatrix(ket_bra(0, 0, 2), q)), 0.0, 1e-12));
  CHECK(close(subsystem_entropy(max_entangled(3).to_density(), {"B"}), std::log2(3.0), 1e-12));
}

TEST_CASE("relative entropy: frozen values and support behavior") {
  SubsystemDims q({{"A", 2}});
  DensityMatrix zero(ket_bra(0, 0, 2), q);
  DensityMatrix one(ket_bra(1, 1, 2), q);
  DensityMatrix mixed(Matrix::Identity(2, 2) / 2, q);
  CHECK(close(relative_entropy(zero, zero), 0.0, 1e-12));
  CHECK(close(relative_entropy(zero, mixed), 1.0, 1e-12));
  CHECK(relative_entropy(zero, one) == std::numeric_limits<double>::infinity());
  CHECK(relative_entropy(mixed, zero) == std::numeric_limits<double>::infinity());
  // D >= 0 with equality only at rho = sigma (spot-check on random pairs)
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    DensityMatrix r1 = rng.density(q);
    DensityMatrix r2 = rng.density(q);
    CHECK(relative_entropy(r1, r2) >= -1e-12);
  }
}

TEST_CASE("fidelity: frozen values and the independent root route") {
  SubsystemDims q({{"A", 2}});
  DensityMatrix zero(ket_bra(0, 0, 2), q);
  DensityMatrix mixed(Matrix::Identity(2, 2) / 2, q);
  CHECK(close(fidelity(zero, mixed), 0.5, 1e-12));
  CHECK(close(fidelity(zero, zero), 1.0, 1e-12));
  Rng rng(7);
  SubsystemDims d3({{"A", 3}});
  for (int i = 0; i < 40; ++i) {
    DensityMatrix r1 = rng.density(d3);
    DensityMatrix r2 = rng.density(d3, rng.uniform_int(1, 3));
    double f = fidelity(r1, r2);
    double fr = fidelity_root(r1, r2);
    CHECK(close(f, fr * fr, 1e-9));  // two independent formulas
    CHECK(f >= -1e-12);
    CHECK(f <= 1 + 1e-9);
  }
}

TEST_CASE("conditional mutual information: GHZ and products") {
  DensityMatrix g = ghz().to_density();
  CHECK(close(conditional_mutual_information(g, {"a"}, {"b"}, {"c"}), 1.0, 1e-12));
  CHECK(close(mutual_information(max_entangled(2).to_density(), {"A"}, {"B"}), 2.0, 1e-12));
  // product state: every mutual information vanishes
  DensityMatrix prod(Matrix::Identity(8, 8) / 8, SubsystemDims({{"a", 2}, {"b", 2}, {"c", 2}}));
  CHECK(close(conditional_mutual_information(prod, {"a"}, {"b"}, {"c"}), 0.0, 1e-12));
  CHECK_THROWS_AS(conditional_mutual_information(g, {"a"}, {"a"}, {"c"}), ValidationError);
}

TEST_CASE("purification recovers the state") {
  Rng rng(13);
  SubsystemDims dims({{"A", 2}, {"B", 3}});
  for (int i = 0; i < 15; ++i) {
    DensityMatrix rho = rng.density(dims, rng.uniform_int(1, 6));
    PureState psi = purify(rho, "anc");
    DensityMatrix back = partial_trace(psi.to_density(), {"A", "B"});
    CHECK(approx_equal(back.mat(), rho.mat(), 1e-9));
  }
  // pure input: rank-1 ancilla
  PureState psi = purify(max_entangled(2).to_density());
  CHECK(psi.dims().dim_of("anc") == 1);
}

TEST_CASE("rng: determinism and structural validity") {
  Rng a(42), b(42);
  CHECK(approx_equal(a.ginibre(3, 3), b.ginibre(3, 3), 0.0));

  Rng rng(99);
  Matrix u = rng.unitary(4);
  CHECK(approx_equal(u * u.adjoint(), Matrix::Identity(4, 4), 1e-10));

  Matrix v = rng.isometry(3, 6);
  CHECK(approx_equal(v.adjoint() * v, Matrix::Identity(3, 3), 1e-10));

  KrausChannel ch = rng.channel(3, 3);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
  CHECK(approx_equal(sum, Matrix::Identity(3, 3), 1e-9));

  SubsystemDims dims({{"s", 4}});
  DensityMatrix rho = rng.density(dims, 2);
  CHECK(close(rho.mat().trace().real(), 1.0, 1e-12));

  Operator h = rng.hermitian(dims, 0.5);
  CHECK(h.is_hermitian(1e-12));
  CHECK(close(trace_norm(h), 0.5, 1e-10));

  Matrix c = rng.mcs_coefficients(3);
  CHECK(close(c.trace().real(), 1.0, 1e-12));
  CHECK(eigenvalues_hermitian(c).minCoeff() >= -1e-12);
}

TEST_CASE("uniform grid endpoints") {
  auto g = uniform_grid(0.0, 1.0, 101);
  CHECK(g.size() == 101);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(close(g[50], 0.5, 1e-15));
}
