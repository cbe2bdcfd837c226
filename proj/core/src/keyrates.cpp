#include "privwit/keyrates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "privwit/linalg.hpp"
#include "privwit/qinfo.hpp"

namespace privwit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double holevo(const std::vector<double>& p, const std::vector<DensityMatrix>& states) {
  double total = 0;
  Matrix avg = Matrix::Zero(states.front().dim(), states.front().dim());
  double havg = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    avg += p[i] * states[i].mat();
    havg += p[i] * von_neumann_entropy(states[i]);
    total += p[i];
  }
  if (total <= tol::trace) return 0;
  avg /= total;
  Eigen::VectorXd vals = clamp_psd_spectrum(eigenvalues_hermitian(avg), "holevo");
  double s = 0;
  for (int i = 0; i < vals.size(); ++i)
    if (vals[i] > 0) s -= vals[i] * std::log2(vals[i]);
  return s - havg / total;
}
}  // namespace

Povm::Povm(std::vector<Operator> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("POVM needs at least one element");
  const auto& dims = elements_.front().dims();
  Matrix sum = Matrix::Zero(dims.total_dim(), dims.total_dim());
  for (const auto& e : elements_) {
    if (!(e.dims() == dims)) throw ValidationError("POVM elements live on different factors");
    if (!e.is_hermitian(tol::herm)) throw NumericError("POVM element is not Hermitian");
    if (eigenvalues_hermitian(e.mat()).minCoeff() < -tol::psd)
      throw NumericError("POVM element has eigenvalue below -tol_psd");
    sum += e.mat();
  }
  if ((sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() > tol::cptp)
    throw NumericError("POVM elements do not sum to the identity within tolerance");
}

Povm Povm::computational(const SubsystemDims& dims) {
  const int d = dims.total_dim();
  std::vector<Operator> els;
  els.reserve(d);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1;
    els.emplace_back(std::move(e), dims);
  }
  return Povm(std::move(els));
}

CcqState measure_and_trace(const PureState& psi, const std::vector<std::string>& alice, const Povm& q,
                           const std::vector<int>& tags) {
  if (!(q.dims() == psi.dims().subset(alice)))
    throw ValidationError("POVM factors " + q.dims().to_string() + " do not match measured labels");
  if (!tags.empty() && static_cast<int>(tags.size()) != q.outcomes())
    throw ValidationError("tag map must assign one tag per POVM outcome");

  std::vector<std::string> rest = psi.dims().complement(alice).labels();
  CcqState out;
  out.tags = tags;
  for (const auto& e : q.elements()) {
    Operator root(sqrt_psd(e.mat()), e.dims());
    Operator lifted = embed(root, psi.dims());
    Vector post = lifted.mat() * psi.amplitudes();
    double p = post.squaredNorm();
    out.probs.push_back(p);
    if (p > tol::trace) {
      Matrix proj = post * post.adjoint() / p;
      out.conditionals.push_back(partial_trace(DensityMatrix(Operator(std::move(proj), psi.dims())), rest));
    } else {
      // zero-probability branch: harmless placeholder, weight 0 in every sum
      int d = psi.dims().complement(alice).total_dim();
      out.conditionals.push_back(
          DensityMatrix(Operator(Matrix::Identity(d, d) / d, psi.dims().complement(alice))));
    }
  }
  return out;
}

double dw_rate(const CcqState& ccq, const std::vector<std::string>& bob, const std::vector<std::string>& eve) {
  if (ccq.probs.empty()) throw ValidationError("empty ccq ensemble");
  std::set<std::string> overlap(bob.begin(), bob.end());
  for (const auto& l : eve)
    if (overlap.count(l)) throw ValidationError("label '" + l + "' assigned to both Bob and Eve");

  std::map<int, std::vector<size_t>> blocks;
  for (size_t i = 0; i < ccq.probs.size(); ++i) blocks[ccq.tags.empty() ? 0 : ccq.tags[i]].push_back(i);

  double rate = 0;
  for (const auto& [tag, idx] : blocks) {
    (void)tag;
    double pt = 0;
    for (size_t i : idx) pt += ccq.probs[i];
    if (pt <= tol::trace) continue;
    std::vector<double> pc;
    std::vector<DensityMatrix> rb, re;
    for (size_t i : idx) {
      pc.push_back(ccq.probs[i] / pt);
      rb.push_back(partial_trace(ccq.conditionals[i], bob));
      re.push_back(partial_trace(ccq.conditionals[i], eve));
    }
    rate += pt * (holevo(pc, rb) - holevo(pc, re));
  }
  return rate;
}

double dw_rate(const PureState& psi, const std::vector<std::string>& alice, const std::vector<std::string>& eve,
               const Povm& q, const std::vector<int>& tags) {
  auto rest = psi.dims().complement(alice);
  std::vector<std::string> bob;
  for (const auto& l : rest.labels()) {
    bool is_eve = false;
    for (const auto& ev : eve) is_eve = is_eve || ev == l;
    if (!is_eve) bob.push_back(l);
  }
  for (const auto& ev : eve)
    if (!rest.has(ev)) throw ValidationError("Eve label '" + ev + "' is measured away or unknown");
  return dw_rate(measure_and_trace(psi, alice, q, tags), bob, eve);
}

double attacked_corner_norm(const Operator& x, const KrausChannel& ch) {
  if (x.dims().count() < 1) throw ValidationError("witness operator needs at least one factor");
  return trace_norm(apply_on_factor(ch, x, x.dims().factor(0).label));
}

double psq_key_witness(const Operator& x, const KrausChannel& ch) {
  double norm = trace_norm(x);
  if (norm > 0.5 + tol::trace)
    throw ValidationError("privacy-squeezed witness needs ||X||_1 <= 1/2, got " + std::to_string(norm));
  double c = attacked_corner_norm(x, ch);
  return 1.0 - binary_entropy(std::min(0.5 + c, 1.0));
}

double bell_diagonal_er(const std::array<double, 4>& q) {
  double sum = 0, mx = 0;
  for (double v : q) {
    if (v < -tol::trace) throw ValidationError("Bell-diagonal weights must be non-negative");
    sum += v;
    mx = std::max(mx, v);
  }
  if (std::abs(sum - 1.0) > tol::trace) throw ValidationError("Bell-diagonal weights must sum to 1");
  if (mx <= 0.5) return 0.0;
  return 1.0 - binary_entropy(mx);
}

double er_upper_bound_attack(const DensityMatrix& gamma, const KrausChannel& ch,
                             const std::vector<double>& p_grid) {
  const auto& dims = gamma.dims();
  if (dims.count() < 3 || dims.factor(0).dim != 2 || dims.factor(1).dim != 2)
    throw ValidationError("attack bound expects a state on (A:2)(B:2) ⊗ shield factors");
  if (p_grid.empty()) throw ValidationError("empty p grid");
  for (double p : p_grid)
    if (p < 0 || p > 1) throw ValidationError("p grid entries must lie in [0,1]");

  const std::string shield_first = dims.factor(2).label;
  const int d_shield = dims.total_dim() / 4;
  const int dim = dims.total_dim();

  DensityMatrix attacked = apply_on_factor(ch, gamma, shield_first);

  // separable reference: dephased key part over the maximally mixed shield,
  // pushed through the same attack
  Matrix base = Matrix::Zero(dim, dim);
  for (int k : {0, 3})
    for (int s = 0; s < d_shield; ++s) base(k * d_shield + s, k * d_shield + s) = 0.5 / d_shield;
  DensityMatrix sigma_att = apply_on_factor(ch, DensityMatrix(Operator(std::move(base), dims)), shield_first);

  // mixing with the global maximally mixed state shifts sigma_att's
  // eigenvalues without touching its eigenvectors, so one decomposition
  // serves the whole p sweep
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma_att.mat());
  Eigen::VectorXd s = clamp_psd_spectrum(es.eigenvalues(), "er_upper_bound_attack(sigma)");
  Eigen::VectorXd w = (es.eigenvectors().adjoint() * attacked.mat() * es.eigenvectors()).diagonal().real();
  Eigen::VectorXd lam = clamp_psd_spectrum(eigenvalues_hermitian(attacked.mat()), "er_upper_bound_attack(rho)");

  double tr_rho_log_rho = 0;
  for (int i = 0; i < lam.size(); ++i)
    if (lam[i] > 0) tr_rho_log_rho += lam[i] * std::log2(lam[i]);

  auto d_at = [&](double p) {
    double tr_rho_log_sigma = 0;
    for (int i = 0; i < s.size(); ++i) {
      double si = (1 - p) * s[i] + p / dim;
      if (si <= tol::psd * tol::psd) {
        if (w[i] > tol::psd) return kInf;
        continue;
      }
      tr_rho_log_sigma += std::max(w[i], 0.0) * std::log2(si);
    }
    return tr_rho_log_rho - tr_rho_log_sigma;
  };

  double best = kInf;
  size_t best_i = 0;
  for (size_t i = 0; i < p_grid.size(); ++i) {
    double v = d_at(p_grid[i]);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  if (!std::isfinite(best)) return best;

  // one golden-section polish pass on the bracket around the grid argmin
  double lo = p_grid[best_i > 0 ? best_i - 1 : 0];
  double hi = p_grid[best_i + 1 < p_grid.size() ? best_i + 1 : p_grid.size() - 1];
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = d_at(x1), f2 = d_at(x2);
  for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = d_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = d_at(x2);
    }
  }
  return std::min({best, f1, f2});
}

double negativity(const DensityMatrix& rho, const std::vector<std::string>& left,
                  const std::vector<std::string>& right) {
  std::set<std::string> cover;
  for (const auto& l : left) cover.insert(l);
  for (const auto& l : right) {
    if (cover.count(l)) throw ValidationError("label '" + l + "' on both sides of the cut");
    cover.insert(l);
  }
  for (const auto& f : rho.dims().factors())
    if (!cover.count(f.label)) throw ValidationError("bipartition misses factor '" + f.label + "'");
  if (cover.size() != static_cast<size_t>(rho.dims().count()))
    throw ValidationError("bipartition names unknown factors");
  return std::log2(trace_norm(partial_transpose(rho.op(), right)));
}

double squashed_bound(const DensityMatrix& rho_ext, const std::vector<std::string>& a,
                      const std::vector<std::string>& b, const std::vector<std::string>& e) {
  return conditional_mutual_information(rho_ext, a, b, e) / 2;
}

double recovery_delta(double cmi_bits) {
  if (cmi_bits < -tol::ssa) throw ValidationError("conditional mutual information must be >= 0");
  cmi_bits = std::max(cmi_bits, 0.0);
  return std::sqrt(1.0 - std::pow(2.0, -cmi_bits));
}

double recovery_delta(const DensityMatrix& rho, const std::vector<std::string>& a,
                      const std::vector<std::string>& be, const std::vector<std::string>& rest) {
  return recovery_delta(conditional_mutual_information(rho, a, be, rest));
}

const LeakageBound& LeakageBoundReport::operator[](const std::string& name) const {
  for (const auto& b : bounds)
    if (b.name == name) return b;
  throw ValidationError("no bound named '" + name + "'");
}

LeakageBoundReport leakage_bounds(const LeakageBoundInputs& in) {
  if (in.S_a < 0 || in.S_b < 0 || in.S_C < 0 || in.S_D < 0)
    throw ValidationError("entropies must be non-negative");
  if (in.dim_a < 1 || in.d_A < 1 || in.d_B < 1 || in.d_X < 1)
    throw ValidationError("dimensions must be >= 1");
  if (in.er_infinity < 0) throw ValidationError("regularized relative entropy must be >= 0");

  LeakageBoundReport rep;
  rep.delta = recovery_delta(in.cmi);
  const double d = rep.delta;
  const double h = binary_entropy(d);
  auto add = [&rep](std::string name, double bits, std::string klass) {
    rep.bounds.push_back({std::move(name), bits, std::move(klass)});
  };
  add("two_S_a", 2 * in.S_a, "irreducible private state, shield or Alice-side erasure");
  add("S_a_plus_log_a", in.S_a + std::log2(static_cast<double>(in.dim_a)),
      "distributed randomness, local unitary + erasure");
  add("four_S_b", 4 * in.S_b, "raw one-way key, Bob-side erasure (per copy)");
  add("two_S_a_copy", 2 * in.S_a, "raw one-way key, Alice-side copying (per copy)");
  add("raw_key_erasure", in.S_a, "raw one-way key, Alice-side erasure of classical x (per copy)");
  add("S_a_mcs", in.S_a, "maximally correlated state, erasure to Eve");
  add("single_shot_log", std::log2(static_cast<double>(in.dim_a)), "single-shot one-way key");
  add("delta_bound_thm",
      4 * d * std::log2(static_cast<double>(in.dim_a) * in.d_A * in.d_B * in.d_B) + 4 * h,
      "one-way iid key, general state");
  add("delta_bound_dimX", 8 * d * std::log2(static_cast<double>(in.d_X)) + 4 * h,
      "one-way iid key, outcome alphabet d_X");
  add("delta_bound_cor_main", 8 * d * std::log2(static_cast<double>(in.d_A)) + 4 * h,
      "irreducible Schmidt-twisted pure state");
  add("product_bound", std::min(in.S_C, in.S_D), "strictly irreducible private state x product system");
  add("cmi_plus_er", in.cmi_er + in.er_infinity,
      "general bipartite state (needs regularized rel. entropy of entanglement)");
  return rep;
}

RandomnessRates randomness_rates(const DensityMatrix& rho, const std::vector<std::string>& a,
                                 const std::vector<std::string>& b, int setting) {
  if (setting < 1 || setting > 4) throw ValidationError("randomness setting must be 1..4");
  std::set<std::string> cover;
  for (const auto& l : a) cover.insert(l);
  for (const auto& l : b) {
    if (cover.count(l)) throw ValidationError("label '" + l + "' on both sides");
    cover.insert(l);
  }
  for (const auto& f : rho.dims().factors())
    if (!cover.count(f.label)) throw ValidationError("bipartition misses factor '" + f.label + "'");

  double log_a = 0, log_b = 0;
  for (const auto& l : a) log_a += std::log2(static_cast<double>(rho.dims().dim_of(l)));
  for (const auto& l : b) log_b += std::log2(static_cast<double>(rho.dims().dim_of(l)));
  double s_ab = von_neumann_entropy(rho);
  double s_a = subsystem_entropy(rho, a);
  double s_b = subsystem_entropy(rho, b);

  RandomnessRates r;
  r.setting = setting;
  r.R_sum_max = log_a + log_b - s_ab;
  auto pos = [](double t) { return std::max(t, 0.0); };
  switch (setting) {
    case 1:
      r.R_A_max = log_a - pos(s_ab - s_b);
      r.R_B_max = log_b - pos(s_ab - s_a);
      break;
    case 2:
      r.R_A_max = log_a - (s_ab - s_b);
      r.R_B_max = log_b - (s_ab - s_a);
      break;
    case 3:
      r.R_A_max = r.R_sum_max;
      r.R_B_max = r.R_sum_max;
      break;
    case 4:
      r.R_A_max = log_a + log_b - std::max(s_b, s_ab);
      r.R_B_max = log_a + log_b - std::max(s_a, s_ab);
      break;
  }
  return r;
}

RegionKind parse_region_kind(const std::string& name) {
  if (name == "leakage-key" || name == "fig2") return RegionKind::LeakageVsKey;
  if (name == "product-key" || name == "fig4") return RegionKind::ProductVsKey;
  throw ValidationError("unknown region kind '" + name + "'");
}

RegionGrid region_grid(RegionKind kind, const std::vector<double>& x, const std::vector<double>& y, int d_A) {
  if (x.empty() || y.empty()) throw ValidationError("region grid axes must be non-empty");
  if (d_A < 2) throw ValidationError("region grid needs d_A >= 2");
  RegionGrid g;
  g.kind = kind;
  g.x = x;
  g.y = y;
  g.inside.resize(x.size() * y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0) throw ValidationError("conditional mutual information axis must be >= 0");
    double d = recovery_delta(x[i]);
    double lhs = 8 * d * std::log2(static_cast<double>(d_A)) + 4 * binary_entropy(d);
    for (size_t j = 0; j < y.size(); ++j) {
      double rhs = (kind == RegionKind::LeakageVsKey) ? 2 * y[j] : y[j];
      g.inside[i * y.size() + j] = lhs <= rhs ? 1 : 0;
    }
  }
  return g;
}

}  // namespace privwit
