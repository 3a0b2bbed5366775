#include "fmps/bounds.hpp"

#include <cmath>
#include <limits>

#include "fmps/mps.hpp"
#include "fmps/rng.hpp"

namespace fmps {

double required_epsilon(double delta, int n_qubits) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "delta must lie in (0, 1)");
  }
  if (n_qubits < 1) throw Error(ErrorCode::OutOfRange, "n_qubits must be >= 1");
  return std::sqrt(delta) * std::pow(2.0, -0.5 * (n_qubits - 1));
}

double lemma3_overlap_bound(double eps, int n_qubits) {
  if (eps < 0.0) throw Error(ErrorCode::OutOfRange, "eps must be >= 0");
  return 1.0 - eps * eps * std::pow(2.0, n_qubits - 1);
}

BoundReport verify_lemma3(const DiscretizedState& f, int trials, double eps_target,
                          std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::OutOfRange, "trials must be >= 1");
  if (eps_target < 0.0) throw Error(ErrorCode::OutOfRange, "eps_target must be >= 0");

  Rng rng(seed);
  const Eigen::Index len = f.values.size();
  double min_slack = std::numeric_limits<double>::infinity();
  double worst_bound = 1.0;
  int violations = 0;

  Eigen::VectorXd g(len);
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < len; ++i) {
      g[i] = f.values[i] + rng.uniform(-eps_target, eps_target);
    }
    const double norm = g.norm();
    if (norm == 0.0) continue;
    g /= norm;
    const double achieved_eps = (f.values - g).lpNorm<Eigen::Infinity>();
    const double overlap = f.values.dot(g);
    const double bound = lemma3_overlap_bound(achieved_eps, f.n_qubits);
    const double slack = overlap - bound;
    if (slack < min_slack) {
      min_slack = slack;
      worst_bound = bound;
    }
    if (slack < -1e-12) ++violations;
  }

  BoundReport report;
  report.name = "lemma3_overlap";
  report.theoretical = worst_bound;
  report.measured = worst_bound + min_slack;
  report.slack = min_slack;
  report.satisfied = violations == 0;
  report.params = {{"trials", static_cast<double>(trials)},
                   {"eps_target", eps_target},
                   {"seed", static_cast<double>(seed)},
                   {"N", static_cast<double>(f.n_qubits)},
                   {"violations", static_cast<double>(violations)}};
  return report;
}

double entropy_upper_bound(int n_qubits, double delta, double gamma, double width) {
  if (n_qubits < 1) throw Error(ErrorCode::OutOfRange, "n_qubits must be >= 1");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw Error(ErrorCode::OutOfRange, "delta must lie in (0, 1)");
  }
  if (!(gamma >= 0.0) || !(width > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "gamma must be >= 0 and width > 0");
  }
  if (std::isinf(gamma) || gamma == 0.0) {
    // gamma = inf: no finite derivative certificate, the bound is vacuous.
    // gamma = 0: flat family, zero entanglement; bound log2(0+1) = 0.
    return std::isinf(gamma) ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double p_real = (static_cast<double>(n_qubits - 1) - std::log2(delta)) /
                        (2.0 * std::log2(1.0 + 2.0 / (gamma * width)));
  return std::log2(p_real + 1.0);
}

BoundReport check_theorem1(const EntropyProfile& profile, double bound) {
  BoundReport report;
  report.name = "theorem1_entropy";
  report.theoretical = bound;
  report.measured = profile.s_max;
  report.slack = bound - profile.s_max;
  report.satisfied = profile.s_max <= bound + 1e-9;
  report.params = {{"argmax_cut", static_cast<double>(profile.argmax_cut)}};
  return report;
}

Corollary2Curve corollary2_eval(int n_qubits, double delta, double c0, double c1, double c2) {
  if (n_qubits < 1) throw Error(ErrorCode::OutOfRange, "n_qubits must be >= 1");
  if (!(delta > 0.0) || delta > 1.0) {
    throw Error(ErrorCode::OutOfRange, "delta must lie in (0, 1]");
  }
  if (!(c2 > 1.0)) throw Error(ErrorCode::OutOfRange, "C2 must be > 1");
  const double inner_arg =
      static_cast<double>(n_qubits) - std::log2(delta) + c1 - 2.0 * std::log2(c2);
  if (!(inner_arg > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "inner logarithm argument must be positive");
  }
  Corollary2Curve curve;
  curve.trace_lower =
      2.0 * c0 * std::log2(inner_arg) / (static_cast<double>(n_qubits) * std::log2(c2));
  const double t = curve.trace_lower;
  curve.fidelity_upper = t >= 1.0 ? 0.0 : (t <= -1.0 ? 1.0 : std::sqrt(1.0 - t * t));
  if (curve.fidelity_upper > 1.0) curve.fidelity_upper = 1.0;
  return curve;
}

std::vector<TrendRow> rank2_fidelity_trend(const FunctionSpec& spec, const Domain& domain,
                                           const std::vector<int>& n_list, Eigen::Index chi) {
  std::vector<TrendRow> rows;
  rows.reserve(n_list.size());
  for (const int n : n_list) {
    const DiscretizedState state = discretize(spec, domain, n);
    const MatrixProductState exact = from_state_vector(state);
    const TruncationResult trunc = truncate(exact, TruncationPolicy{chi, 0.0});
    const EntropyProfile profile = entropy_profile(exact);
    rows.push_back({n, mps_inner(exact, trunc.mps), profile.s_max});
  }
  return rows;
}

}  // namespace fmps
