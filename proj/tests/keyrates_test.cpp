#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "privwit/channels.hpp"
#include "privwit/keyrates.hpp"
#include "privwit/linalg.hpp"
#include "privwit/qinfo.hpp"
#include "privwit/random.hpp"
#include "privwit/states.hpp"
#include "privwit/types.hpp"
#include "test_helpers.hpp"

using namespace privwit;
using namespace privwit::testing;

TEST_CASE("povm validation") {
  SubsystemDims q({{"A", 2}});
  Povm comp = Povm::computational(q);
  CHECK(comp.outcomes() == 2);
  CHECK_THROWS_AS(Povm(std::vector<Operator>{}), ValidationError);
  // elements that do not sum to the identity
  CHECK_THROWS_AS(Povm({Operator(ket_bra(0, 0, 2), q), Operator(0.5 * ket_bra(1, 1, 2), q)}),
                  NumericError);
  // element with a negative eigenvalue
  CHECK_THROWS_AS(Povm({Operator(Matrix(1.5 * ket_bra(0, 0, 2) - 0.5 * ket_bra(1, 1, 2)), q),
                        Operator(Matrix(-0.5 * ket_bra(0, 0, 2) + 1.5 * ket_bra(1, 1, 2)), q)}),
                  NumericError);
}

TEST_CASE("measure_and_trace on a maximally entangled pair") {
  PureState bell = max_entangled(2);
  CcqState ccq = measure_and_trace(bell, {"A"}, Povm::computational(SubsystemDims({{"A", 2}})));
  REQUIRE(ccq.probs.size() == 2);
  CHECK(close(ccq.probs[0], 0.5, 1e-12));
  CHECK(close(ccq.probs[1], 0.5, 1e-12));
  // outcome i leaves Bob in |i><i|
  CHECK(approx_equal(ccq.conditionals[0].mat(), ket_bra(0, 0, 2), 1e-12));
  CHECK(approx_equal(ccq.conditionals[1].mat(), ket_bra(1, 1, 2), 1e-12));
}

TEST_CASE("devetak-winter rate: entangled pair gives one private bit") {
  PureState bell = max_entangled(2);
  Povm comp = Povm::computational(SubsystemDims({{"A", 2}}));
  CHECK(close(dw_rate(bell, {"A"}, {}, comp), 1.0, 1e-12));
  // purifying the pair with a real eavesdropper register changes nothing:
  // the global state is pure, Eve's side is product with AB
  PureState psi = purify(max_entangled(2).to_density(), "E");
  CHECK(psi.dims().dim_of("E") == 1);  // pure input: trivial environment
  CHECK(close(dw_rate(psi, {"A"}, {"E"}, comp), 1.0, 1e-12));
}

TEST_CASE("devetak-winter rate on a synthetic ccq ensemble") {
  // d perfectly distinguishable Bob states, Eve constant: rate log2(d)
  const int d = 3;
  SubsystemDims rest({{"B", d}, {"E", d}});
  std::vector<double> probs(d, 1.0 / d);
  std::vector<DensityMatrix> conds;
  for (int i = 0; i < d; ++i) {
    Matrix m = Matrix::Zero(d * d, d * d);
    for (int e = 0; e < d; ++e) m(i * d + e, i * d + e) = 1.0 / d;
    conds.emplace_back(m, rest);
  }
  CcqState ccq{probs, conds, {}};
  CHECK(close(dw_rate(ccq, {"B"}, {"E"}), std::log2(3.0), 1e-12));
  // swap the roles: Bob sees nothing, Eve sees everything, the rate goes negative
  CHECK(close(dw_rate(ccq, {"E"}, {"B"}), -std::log2(3.0), 1e-12));
}

TEST_CASE("public tags split the ensemble into independently keyed blocks") {
  // Four outcomes; Bob sees x mod 2, Eve sees x div 2. Without the tag the
  // key and the leak cancel; announcing x div 2 makes Eve's side constant
  // within each block and recovers one full bit.
  SubsystemDims rest({{"B", 2}, {"E", 2}});
  std::vector<double> probs(4, 0.25);
  std::vector<DensityMatrix> conds;
  std::vector<int> tags;
  for (int x = 0; x < 4; ++x) {
    int b = x % 2, e = x / 2;
    Matrix m = Matrix::Zero(4, 4);
    m(b * 2 + e, b * 2 + e) = 1.0;
    conds.emplace_back(m, rest);
    tags.push_back(e);
  }
  CcqState untagged{probs, conds, {}};
  CcqState tagged{probs, conds, tags};
  CHECK(close(dw_rate(untagged, {"B"}, {"E"}), 0.0, 1e-12));
  CHECK(close(dw_rate(tagged, {"B"}, {"E"}), 1.0, 1e-12));
}

TEST_CASE("dw_rate input validation") {
  PureState bell = max_entangled(2);
  Povm comp = Povm::computational(SubsystemDims({{"A", 2}}));
  CHECK_THROWS_AS(dw_rate(bell, {"A"}, {"A"}, comp), ValidationError);   // eve not in the rest
  CHECK_THROWS_AS(dw_rate(bell, {"Z"}, {}, comp), ValidationError);      // unknown label
  CcqState empty{{}, {}, {}};
  CHECK_THROWS_AS(dw_rate(empty, {"B"}, {"E"}), ValidationError);
}

TEST_CASE("attacked corner norm and the squeezed-key witness") {
  Operator x = gamma_swap_x(2);
  CHECK(close(attacked_corner_norm(x, identity_channel(2)), 0.5, 1e-12));
  CHECK(close(psq_key_witness(x, identity_channel(2)), 1.0, 1e-12));
  // full depolarizing of A' contracts the corner hard; witness drops to ~0
  double c_dep = attacked_corner_norm(x, standard_channel(ChannelKind::Depolarizing, 1.0));
  CHECK(c_dep < 0.5);
  double w_dep = psq_key_witness(x, standard_channel(ChannelKind::Depolarizing, 1.0));
  CHECK(close(w_dep, 1.0 - binary_entropy(0.5 + c_dep), 1e-12));
  // witness needs a sub-normalized corner
  SubsystemDims big({{"A'", 2}, {"B'", 2}});
  CHECK_THROWS_AS(psq_key_witness(Operator(Matrix::Identity(4, 4), big), identity_channel(2)),
                  ValidationError);
}

TEST_CASE("bell-diagonal relative entropy of entanglement") {
  CHECK(close(bell_diagonal_er({1.0, 0.0, 0.0, 0.0}), 1.0, 1e-12));
  CHECK(close(bell_diagonal_er({0.75, 0.25, 0.0, 0.0}), kOneMinusHThreeQuarters, 1e-12));
  CHECK(close(bell_diagonal_er({0.5, 0.5, 0.0, 0.0}), 0.0, 1e-12));
  CHECK(close(bell_diagonal_er({0.25, 0.25, 0.25, 0.25}), 0.0, 1e-12));
  CHECK_THROWS_AS(bell_diagonal_er({1.2, -0.2, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(bell_diagonal_er({0.5, 0.2, 0.0, 0.0}), ValidationError);
}

TEST_CASE("attack bound: identity channel keeps one full bit") {
  std::vector<double> grid = uniform_grid(0.0, 1.0, 201);
  double er = er_upper_bound_attack(gamma_swap(2), identity_channel(2), grid);
  CHECK(close(er, 1.0, 1e-9));
}

TEST_CASE("attack bound: bit flip matches the closed form") {
  // for the swap-witness state under a key-side bit flip the bound evaluates
  // to 1 - h(alpha)/2 (frozen at alpha = 0.3)
  std::vector<double> grid = uniform_grid(0.0, 1.0, 201);
  double er = er_upper_bound_attack(gamma_swap(2), standard_channel(ChannelKind::BitFlip, 0.3), grid);
  CHECK(close(er, kBitFlipBoundAt03, 1e-9));
}

TEST_CASE("attack bound is shield-dimension independent") {
  std::vector<double> grid = uniform_grid(0.0, 1.0, 101);
  KrausChannel ch = standard_channel(ChannelKind::AmplitudeDamping, 0.6);
  double e2 = er_upper_bound_attack(gamma_swap(2), ch, grid);
  double e4 = er_upper_bound_attack(gamma_swap(4), ch, grid);
  CHECK(close(e2, e4, 1e-9));
}

TEST_CASE("attack bound: strong noise reaches the bell-diagonal floor") {
  std::vector<double> grid = uniform_grid(0.0, 1.0, 201);
  double dep = er_upper_bound_attack(gamma_swap(2), standard_channel(ChannelKind::Depolarizing, 1.0), grid);
  double ad = er_upper_bound_attack(gamma_swap(2), standard_channel(ChannelKind::AmplitudeDamping, 1.0), grid);
  CHECK(close(dep, kOneMinusHThreeQuarters, 1e-9));
  CHECK(close(ad, kOneMinusHThreeQuarters, 1e-9));
  CHECK(close(dep, ad, 1e-9));
}

TEST_CASE("attack bound input validation") {
  std::vector<double> grid = uniform_grid(0.0, 1.0, 11);
  CHECK_THROWS_AS(er_upper_bound_attack(gamma_swap(2), identity_channel(2), {}), ValidationError);
  CHECK_THROWS_AS(er_upper_bound_attack(gamma_swap(2), identity_channel(2), {0.5, 1.5}), ValidationError);
  SubsystemDims flat({{"A", 4}});
  CHECK_THROWS_AS(er_upper_bound_attack(DensityMatrix(Matrix::Identity(4, 4) / 4, flat),
                                        identity_channel(2), grid),
                  ValidationError);
}

TEST_CASE("negativity") {
  DensityMatrix bell = max_entangled(2).to_density();
  CHECK(close(negativity(bell, {"A"}, {"B"}), 1.0, 1e-12));
  SubsystemDims two({{"A", 2}, {"B", 2}});
  CHECK(close(negativity(DensityMatrix(Matrix::Identity(4, 4) / 4, two), {"A"}, {"B"}), 0.0, 1e-12));
  CHECK_THROWS_AS(negativity(bell, {"A"}, {"A"}), ValidationError);
  CHECK_THROWS_AS(negativity(bell, {"A"}, {}), ValidationError);
}

TEST_CASE("squashed-style bound from one extension") {
  // product extension of a maximally entangled pair: I(A:B|E)/2 = 1
  DensityMatrix bell = max_entangled(2).to_density();
  // build bell ⊗ I/2 on (A)(B)(E) entrywise
  SubsystemDims dims({{"A", 2}, {"B", 2}, {"E", 2}});
  Matrix m = Matrix::Zero(8, 8);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int e = 0; e < 2; ++e) m(i * 2 + e, j * 2 + e) = bell.mat()(i, j) / 2.0;
  DensityMatrix rho_ext(m, dims);
  CHECK(close(squashed_bound(rho_ext, {"A"}, {"B"}, {"E"}), 1.0, 1e-9));
  // fully product state: zero
  DensityMatrix prod(Matrix::Identity(8, 8) / 8, dims);
  CHECK(close(squashed_bound(prod, {"A"}, {"B"}, {"E"}), 0.0, 1e-9));
}

TEST_CASE("recovery delta") {
  CHECK(close(recovery_delta(0.0), 0.0, 1e-15));
  CHECK(close(recovery_delta(1.0), kDeltaAtCmi1, 1e-12));
  CHECK(close(recovery_delta(-1e-12), 0.0, 1e-15));  // clamped
  CHECK_THROWS_AS(recovery_delta(-0.5), ValidationError);
  // monotone in the cmi
  CHECK(recovery_delta(2.0) > recovery_delta(1.0));
  // state form: GHZ has I(a:c|b) = 1
  DensityMatrix g = ghz().to_density();
  CHECK(close(recovery_delta(g, {"a"}, {"c"}, {"b"}), kDeltaAtCmi1, 1e-9));
}

TEST_CASE("leakage bounds: frozen values at cmi = 1") {
  LeakageBoundInputs in;
  in.S_a = 1.0;
  in.S_b = 1.0;
  in.dim_a = 2;
  in.d_A = 2;
  in.d_B = 2;
  in.d_X = 2;
  in.S_C = 0.7;
  in.S_D = 1.5;
  in.cmi = 1.0;
  in.cmi_er = 0.25;
  in.er_infinity = 0.5;
  LeakageBoundReport rep = leakage_bounds(in);
  CHECK(close(rep.delta, kDeltaAtCmi1, 1e-12));
  CHECK(close(rep["two_S_a"].bits, 2.0, 1e-12));
  CHECK(close(rep["S_a_plus_log_a"].bits, 2.0, 1e-12));
  CHECK(close(rep["four_S_b"].bits, 4.0, 1e-12));
  CHECK(close(rep["two_S_a_copy"].bits, 2.0, 1e-12));
  CHECK(close(rep["raw_key_erasure"].bits, 1.0, 1e-12));
  CHECK(close(rep["S_a_mcs"].bits, 1.0, 1e-12));
  CHECK(close(rep["single_shot_log"].bits, 1.0, 1e-12));
  CHECK(close(rep["delta_bound_cor_main"].bits, kDeltaBoundCorMainAtCmi1, 1e-12));
  // with these dimensions: 4 delta log2(16) + 4h = 16 delta + 4h
  double d = rep.delta;
  CHECK(close(rep["delta_bound_thm"].bits, 16 * d + 4 * binary_entropy(d), 1e-12));
  CHECK(close(rep["delta_bound_dimX"].bits, 8 * d + 4 * binary_entropy(d), 1e-12));
  CHECK(close(rep["product_bound"].bits, 0.7, 1e-12));
  CHECK(close(rep["cmi_plus_er"].bits, 0.75, 1e-12));
  // alphabet-size bound is the tighter delta bound whenever d_X^2 <= dim_a d_A d_B^2
  CHECK(rep["delta_bound_dimX"].bits <= rep["delta_bound_thm"].bits + 1e-12);
  CHECK_THROWS_AS(rep["no_such_bound"], ValidationError);
}

TEST_CASE("leakage bounds: zero cmi zeroes the continuity terms") {
  LeakageBoundInputs in;
  in.cmi = 0.0;
  LeakageBoundReport rep = leakage_bounds(in);
  CHECK(rep.delta == 0.0);
  CHECK(close(rep["delta_bound_thm"].bits, 0.0, 1e-12));
  CHECK(close(rep["delta_bound_dimX"].bits, 0.0, 1e-12));
  CHECK(close(rep["delta_bound_cor_main"].bits, 0.0, 1e-12));
}

TEST_CASE("leakage bounds input validation") {
  LeakageBoundInputs in;
  in.S_a = -0.1;
  CHECK_THROWS_AS(leakage_bounds(in), ValidationError);
  LeakageBoundInputs in2;
  in2.dim_a = 0;
  CHECK_THROWS_AS(leakage_bounds(in2), ValidationError);
  LeakageBoundInputs in3;
  in3.er_infinity = -1;
  CHECK_THROWS_AS(leakage_bounds(in3), ValidationError);
}

TEST_CASE("randomness rates across the four settings") {
  DensityMatrix bell = max_entangled(2).to_density();
  SubsystemDims two({{"A", 2}, {"B", 2}});
  DensityMatrix mixed(Matrix::Identity(4, 4) / 4, two);
  Matrix zz = Matrix::Zero(4, 4);
  zz(0, 0) = 1;
  DensityMatrix zero(zz, two);

  // setting 1 (independent adversary per side): entangled pair gives each side
  // its full local bit, and the pair two bits jointly
  RandomnessRates s1 = randomness_rates(bell, {"A"}, {"B"}, 1);
  CHECK(close(s1.R_A_max, 1.0, 1e-12));
  CHECK(close(s1.R_B_max, 1.0, 1e-12));
  CHECK(close(s1.R_sum_max, 2.0, 1e-12));

  // setting 2 (no positive-part rescue): maximally mixed input yields nothing
  RandomnessRates s2 = randomness_rates(mixed, {"A"}, {"B"}, 2);
  CHECK(close(s2.R_A_max, 0.0, 1e-12));
  CHECK(close(s2.R_B_max, 0.0, 1e-12));
  CHECK(close(s2.R_sum_max, 0.0, 1e-12));

  // setting 3 (free global noise): every rate equals the global one
  RandomnessRates s3 = randomness_rates(zero, {"A"}, {"B"}, 3);
  CHECK(close(s3.R_A_max, 2.0, 1e-12));
  CHECK(close(s3.R_B_max, 2.0, 1e-12));
  CHECK(close(s3.R_sum_max, 2.0, 1e-12));

  // setting 4 (pooled local systems): the pair pools to a single fresh bit per side
  RandomnessRates s4 = randomness_rates(bell, {"A"}, {"B"}, 4);
  CHECK(close(s4.R_A_max, 1.0, 1e-12));
  CHECK(close(s4.R_B_max, 1.0, 1e-12));

  CHECK_THROWS_AS(randomness_rates(bell, {"A"}, {"B"}, 5), ValidationError);
  CHECK_THROWS_AS(randomness_rates(bell, {"A"}, {"A"}, 1), ValidationError);
  CHECK_THROWS_AS(randomness_rates(bell, {"A"}, {}, 1), ValidationError);
}

TEST_CASE("feasibility regions") {
  CHECK(parse_region_kind("fig2") == RegionKind::LeakageVsKey);
  CHECK(parse_region_kind("leakage-key") == RegionKind::LeakageVsKey);
  CHECK(parse_region_kind("fig4") == RegionKind::ProductVsKey);
  CHECK(parse_region_kind("product-key") == RegionKind::ProductVsKey);
  CHECK_THROWS_AS(parse_region_kind("fig9"), ValidationError);

  std::vector<double> xs = uniform_grid(0.0, 3.0, 61);
  std::vector<double> ys = uniform_grid(0.0, 8.0, 161);
  RegionGrid g = region_grid(RegionKind::LeakageVsKey, xs, ys, 2);
  REQUIRE(g.inside.size() == xs.size() * ys.size());
  // x = 0: delta = 0, the whole column is feasible
  for (size_t iy = 0; iy < ys.size(); ++iy) CHECK(g.at(0, static_cast<int>(iy)));
  // each column switches from infeasible to feasible at y* = 4 delta + 2 h(delta)
  for (size_t ix = 1; ix < xs.size(); ++ix) {
    double delta = std::sqrt(1.0 - std::pow(2.0, -xs[ix]));
    double ystar = 4 * delta + 2 * binary_entropy(delta);
    size_t flip = ys.size();
    for (size_t iy = 0; iy < ys.size(); ++iy)
      if (g.at(static_cast<int>(ix), static_cast<int>(iy))) {
        flip = iy;
        break;
      }
    REQUIRE(flip < ys.size());
    // first feasible y is within one grid step of the analytic boundary
    double step = ys[1] - ys[0];
    CHECK(ys[flip] >= ystar - 1e-9);
    CHECK(ys[flip] <= ystar + step + 1e-9);
    // feasibility is monotone in y
    for (size_t iy = flip; iy < ys.size(); ++iy) CHECK(g.at(static_cast<int>(ix), static_cast<int>(iy)));
  }

  // the product-bound region demands twice the key for the same leakage
  RegionGrid g4 = region_grid(RegionKind::ProductVsKey, xs, ys, 2);
  for (size_t ix = 0; ix < xs.size(); ++ix)
    for (size_t iy = 0; iy < ys.size(); ++iy)
      if (g4.at(static_cast<int>(ix), static_cast<int>(iy)))
        CHECK(g.at(static_cast<int>(ix), static_cast<int>(iy)));

  CHECK_THROWS_AS(region_grid(RegionKind::LeakageVsKey, {-1.0, 0.0}, ys, 2), ValidationError);
  CHECK_THROWS_AS(region_grid(RegionKind::LeakageVsKey, xs, ys, 1), ValidationError);
}
