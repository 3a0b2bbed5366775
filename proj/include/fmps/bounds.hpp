#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fmps/entropy.hpp"
#include "fmps/funcgrid.hpp"

namespace fmps {

/// One theoretical-vs-measured comparison, with the inputs that produced it.
struct BoundReport {
  std::string name;
  double theoretical = 0.0;
  double measured = 0.0;
  bool satisfied = false;
  double slack = 0.0;
  std::map<std::string, double> params;
};

/// sqrt(delta) * 2^(-(N-1)/2): the pointwise accuracy that keeps the overlap
/// of two unit grid vectors above 1 - delta.
double required_epsilon(double delta, int n_qubits);

/// 1 - eps^2 2^(N-1); may be negative, returned as-is.
double lemma3_overlap_bound(double eps, int n_qubits);

/// Randomized adversarial check of the overlap bound: `trials` entrywise
/// perturbations of f in [-eps_target, eps_target], each renormalized, the
/// achieved linf distance re-measured, and the overlap compared against
/// lemma3_overlap_bound. Reports the minimum slack and violation count.
BoundReport verify_lemma3(const DiscretizedState& f, int trials, double eps_target,
                          std::uint64_t seed);

/// log2(p+1) with p the real-valued (pre-ceiling) overlap degree; +infinity
/// when gamma has no finite value (the non-SDR control).
double entropy_upper_bound(int n_qubits, double delta, double gamma, double width);

/// s_max <= bound within 1e-9.
BoundReport check_theorem1(const EntropyProfile& profile, double bound);

struct Corollary2Curve {
  double trace_lower = 0.0;
  double fidelity_upper = 0.0;
};

/// Literal evaluation of the rank-2 closed forms:
///   trace_lower = 2 C0 log2(N - log2(delta) + C1 - 2 log2(C2)) / (N log2 C2)
///   fidelity_upper = sqrt(1 - trace_lower^2), clamped to [0, 1].
/// The constants are caller-supplied; illustrative defaults are
/// C0=1, C1=0, C2=2, delta=0.01.
Corollary2Curve corollary2_eval(int n_qubits, double delta, double c0, double c1, double c2);

struct TrendRow {
  int n_qubits = 0;
  double fidelity = 0.0;
  double s_max = 0.0;
};

/// Rank-chi truncation fidelity and exact s_max across system sizes.
std::vector<TrendRow> rank2_fidelity_trend(const FunctionSpec& spec, const Domain& domain,
                                           const std::vector<int>& n_list,
                                           Eigen::Index chi = 2);

}  // namespace fmps
