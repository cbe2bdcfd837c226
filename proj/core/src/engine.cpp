#include "privwit/engine.hpp"

#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "privwit/channels.hpp"
#include "privwit/keyrates.hpp"
#include "privwit/linalg.hpp"
#include "privwit/nonmarkov.hpp"
#include "privwit/parallel.hpp"
#include "privwit/qinfo.hpp"
#include "privwit/random.hpp"
#include "privwit/states.hpp"
#include "privwit/version.hpp"

namespace privwit {

using nlohmann::json;

namespace {

struct AttackSetup {
  DensityMatrix gamma;
  Operator x;
};

// The attacked state and its corner witness for the families whose key part
// has the (A:2)(B:2) ⊗ shield X-form.
AttackSetup attack_setup(const StateSpec& st) {
  if (st.family == "gamma-swap") return {gamma_swap(st.ds), gamma_swap_x(st.ds)};
  if (st.family == "block-orthogonal") {
    if (st.ds < 2) throw ValidationError("state.ds must be >= 2 for block-orthogonal states");
    const int k = st.ds / 2;
    Rng rng(st.seed);
    Matrix top = rng.density(SubsystemDims({{"S", k}})).mat();
    Matrix bot = rng.density(SubsystemDims({{"S", st.ds - k}})).mat();
    Matrix rp = Matrix::Zero(st.ds, st.ds), rm = Matrix::Zero(st.ds, st.ds);
    rp.topLeftCorner(k, k) = top;
    rm.bottomRightCorner(st.ds - k, st.ds - k) = bot;
    SubsystemDims shield({{"S", st.ds}});
    BlockState b = make_block_state(0.5, 0.5, DensityMatrix(Operator(rp, shield)),
                                    DensityMatrix(Operator(rm, shield)));
    Matrix corner = 0.5 * (b.p_plus * b.rho_plus.mat() - b.p_minus * b.rho_minus.mat());
    return {assemble(b), Operator(std::move(corner), shield)};
  }
  throw ValidationError("state.family: attack sweeps support 'gamma-swap' or 'block-orthogonal', got '" +
                        st.family + "'");
}

Matrix real_matrix(const std::vector<std::vector<double>>& c) {
  const int n = static_cast<int>(c.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = c[i][j];
  return m;
}

struct Bipartite {
  DensityMatrix rho;
  std::vector<std::string> a;
  std::vector<std::string> b;
};

Bipartite randomness_state(const StateSpec& st) {
  if (st.family == "bell") {
    const int d = st.da;
    Vector v = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) v[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
    return {PureState(v, SubsystemDims({{"A", d}, {"B", d}})).to_density(), {"A"}, {"B"}};
  }
  if (st.family == "product-zero") {
    Vector v = Vector::Zero(st.da * st.db);
    v[0] = 1;
    return {PureState(v, SubsystemDims({{"A", st.da}, {"B", st.db}})).to_density(), {"A"}, {"B"}};
  }
  if (st.family == "maximally-mixed") {
    const int d = st.da * st.db;
    Matrix m = Matrix::Identity(d, d) / d;
    return {DensityMatrix(Operator(std::move(m), SubsystemDims({{"A", st.da}, {"B", st.db}}))),
            {"A"},
            {"B"}};
  }
  if (st.family == "mcs-random")
    return {maximally_correlated(Rng(st.seed).mcs_coefficients(st.d)), {"A"}, {"B"}};
  if (st.family == "mcs") return {maximally_correlated(real_matrix(st.c)), {"A"}, {"B"}};
  if (st.family == "gamma-swap") return {gamma_swap(st.ds), {"A", "A'"}, {"B", "B'"}};
  if (st.family == "superdense")
    return {superdense_example().to_density(), {"A", "A'"}, {"B", "E"}};
  throw ValidationError("state.family: '" + st.family + "' has no bipartition for randomness rates");
}

Operator markov_witness(const WitnessSpec& w) {
  if (w.kind == "coherence") return canonical_witness();
  Rng rng(w.seed);
  return rng.hermitian(SubsystemDims({{"A'", w.ds}, {"B'", w.ds}}), 0.5);
}

void write_payload(const std::string& path, const std::string& payload, std::ostream& console) {
  if (path.empty()) {
    console << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("output.path: cannot open '" + path + "' for writing");
  out << payload;
  if (!out.good()) throw ValidationError("output.path: write to '" + path + "' failed");
}

std::string pick_format(const Scenario& sc, const char* task_default) {
  return sc.output.format.empty() ? task_default : sc.output.format;
}

}  // namespace

ResultTable attack_table(const Scenario& sc) {
  AttackSetup setup = attack_setup(sc.state);
  const KrausChannel probe = standard_channel(parse_channel_kind(sc.channel.kind), 0.0);
  (void)probe;  // validates the kind before the sweep starts

  const std::vector<double> alphas = sc.sweep.points();
  const std::vector<double> p_grid = uniform_grid(0.0, 1.0, sc.p_grid_points);
  const ChannelKind kind = parse_channel_kind(sc.channel.kind);

  ResultTable t;
  t.columns = {"alpha", "trace_norm_witness", "psq_key_witness", "er_upper_bound"};
  t.rows.assign(alphas.size(), std::vector<double>(4, 0.0));
  parallel_for(static_cast<int>(alphas.size()), resolve_threads(sc.threads), [&](int i) {
    const KrausChannel ch = standard_channel(kind, alphas[i]);
    const double c = attacked_corner_norm(setup.x, ch);
    t.rows[i] = {alphas[i], c, psq_key_witness(setup.x, ch),
                 er_upper_bound_attack(setup.gamma, ch, p_grid)};
  });
  t.meta = standard_meta(sc);
  t.meta["channel"] = sc.channel.kind;
  t.meta["ds"] = std::to_string(sc.state.ds);
  t.meta["er_convention"] = "min_over_p_at_each_alpha";
  return t;
}

ResultTable regions_table(const Scenario& sc) {
  const RegionKind kind = parse_region_kind(sc.region.kind);
  RegionGrid g = region_grid(kind, sc.region.x.points(), sc.region.y.points(), sc.region.d_A);

  ResultTable t;
  t.columns = {"cmi", kind == RegionKind::LeakageVsKey ? "entropy_a" : "min_marginal_entropy", "inside"};
  t.rows.reserve(g.x.size() * g.y.size());
  for (size_t i = 0; i < g.x.size(); ++i)
    for (size_t j = 0; j < g.y.size(); ++j)
      t.rows.push_back({g.x[i], g.y[j], static_cast<double>(g.at(i, j))});
  t.meta = standard_meta(sc);
  t.meta["kind"] = sc.region.kind;
  t.meta["d_A"] = std::to_string(sc.region.d_A);
  return t;
}

namespace {
LeakageBoundInputs bound_inputs(const BoundsSpec& b) {
  LeakageBoundInputs in;
  in.S_a = b.S_a;
  in.S_b = b.S_b;
  in.dim_a = b.dim_a;
  in.d_A = b.d_A;
  in.d_B = b.d_B;
  in.d_X = b.d_X;
  in.S_C = b.S_C;
  in.S_D = b.S_D;
  in.cmi = b.cmi;
  in.cmi_er = b.cmi_er;
  in.er_infinity = b.er_infinity;
  return in;
}
}  // namespace

ResultTable bounds_table(const Scenario& sc) {
  LeakageBoundReport rep = leakage_bounds(bound_inputs(sc.bounds));
  ResultTable t;
  t.columns = {"delta"};
  std::vector<double> row = {rep.delta};
  for (const auto& b : rep.bounds) {
    t.columns.push_back(b.name);
    row.push_back(b.bits);
  }
  t.rows.push_back(std::move(row));
  t.meta = standard_meta(sc);
  return t;
}

std::string bounds_document(const Scenario& sc) {
  LeakageBoundReport rep = leakage_bounds(bound_inputs(sc.bounds));
  json doc;
  doc["version"] = version();
  doc["scenario"] = sc.hash();
  doc["delta"] = rep.delta;
  json arr = json::array();
  for (const auto& b : rep.bounds)
    arr.push_back({{"name", b.name}, {"bits", b.bits}, {"applies_to", b.applies_to}});
  doc["bounds"] = std::move(arr);
  return doc.dump(2) + "\n";
}

ResultTable randomness_table(const Scenario& sc) {
  Bipartite bp = randomness_state(sc.state);
  RandomnessRates r = randomness_rates(bp.rho, bp.a, bp.b, sc.setting);
  ResultTable t;
  t.columns = {"setting", "R_A_max", "R_B_max", "R_sum_max"};
  t.rows.push_back({static_cast<double>(r.setting), r.R_A_max, r.R_B_max, r.R_sum_max});
  t.meta = standard_meta(sc);
  t.meta["family"] = sc.state.family;
  return t;
}

std::string randomness_document(const Scenario& sc) {
  Bipartite bp = randomness_state(sc.state);
  RandomnessRates r = randomness_rates(bp.rho, bp.a, bp.b, sc.setting);
  json doc;
  doc["version"] = version();
  doc["scenario"] = sc.hash();
  doc["family"] = sc.state.family;
  doc["setting"] = r.setting;
  doc["R_A_max"] = r.R_A_max;
  doc["R_B_max"] = r.R_B_max;
  doc["R_sum_max"] = r.R_sum_max;
  return doc.dump(2) + "\n";
}

MarkovRun markov_run(const Scenario& sc) {
  DynamicsParams params;
  params.gamma = sc.dynamics.gamma;
  params.omega = sc.dynamics.omega;
  DynamicsFamily dyn =
      standard_dynamics(parse_dynamics_kind(sc.dynamics.kind), params, sc.grid.start, sc.grid.stop);
  Operator x = markov_witness(sc.witness);
  Trajectory traj = trace_norm_trajectory(dyn, x, sc.grid.points());
  NonmarkovReport rep = detect_nonmarkov(traj, sc.deriv_tol);

  MarkovRun run;
  run.table.columns = {"t", "f", "g", "df_dt", "dg_dt"};
  for (size_t i = 0; i < traj.ts.size(); ++i)
    run.table.rows.push_back({traj.ts[i], traj.f[i], traj.g[i], rep.df_dt[i], rep.dg_dt[i]});
  run.table.meta = standard_meta(sc);
  run.table.meta["dynamics"] = sc.dynamics.kind;
  run.table.meta["witness"] = sc.witness.kind;

  json doc;
  doc["version"] = version();
  doc["scenario"] = sc.hash();
  doc["verdict"] = rep.markovian_on_grid ? "markovian_on_grid" : "nonmarkovian";
  doc["deriv_tol"] = sc.deriv_tol;
  json ivals = json::array();
  for (const auto& iv : rep.intervals)
    ivals.push_back(
        {{"t_start", iv.t_start}, {"t_end", iv.t_end}, {"max_derivative", iv.max_derivative}});
  doc["intervals"] = std::move(ivals);
  run.report_json = doc.dump(2) + "\n";
  return run;
}

std::string superdense_document() {
  PureState psi = superdense_example();
  Povm q = Povm::computational(psi.dims().subset({"A"}));
  const double before = dw_rate(psi, {"A"}, {"E"}, q);
  const double after = dw_rate(psi, {"A"}, {"E", "A'"}, q);
  const double s_a = subsystem_entropy(psi.to_density(), {"A'"});
  json doc;
  doc["version"] = version();
  doc["rate_shield_kept"] = before;
  doc["rate_shield_leaked"] = after;
  doc["drop"] = before - after;
  doc["S_a"] = s_a;
  doc["bound_two_S_a"] = 2 * s_a;
  return doc.dump(2) + "\n";
}

int run_scenario(const Scenario& sc, std::ostream& console) {
  sc.validate();
  auto emit_table = [&](const ResultTable& t, const std::string& format) {
    write_payload(sc.output.path, format == "json" ? t.to_json_text() : t.to_csv(), console);
  };
  if (sc.task == "attack") {
    emit_table(attack_table(sc), pick_format(sc, "csv"));
  } else if (sc.task == "regions") {
    emit_table(regions_table(sc), pick_format(sc, "csv"));
  } else if (sc.task == "bounds") {
    if (pick_format(sc, "json") == "csv")
      emit_table(bounds_table(sc), "csv");
    else
      write_payload(sc.output.path, bounds_document(sc), console);
  } else if (sc.task == "randomness") {
    if (pick_format(sc, "json") == "csv")
      emit_table(randomness_table(sc), "csv");
    else
      write_payload(sc.output.path, randomness_document(sc), console);
  } else if (sc.task == "markov") {
    MarkovRun run = markov_run(sc);
    emit_table(run.table, pick_format(sc, "csv"));
    if (sc.output.report_path.empty())
      console << run.report_json;
    else
      write_payload(sc.output.report_path, run.report_json, console);
  } else if (sc.task == "demo-superdense") {
    write_payload(sc.output.path, superdense_document(), console);
  } else {
    throw ValidationError("task: unknown task '" + sc.task + "'");
  }
  return 0;
}

}  // namespace privwit
