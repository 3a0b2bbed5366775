#pragma once

#include <Eigen/Core>
#include <vector>

#include "fmps/funcgrid.hpp"
#include "fmps/mps.hpp"

namespace fmps {

struct CutEntropy {
  int cut = 0;
  double entropy_bits = 0.0;
  int spectrum_len = 0;  // Schmidt values above 1e-12 of the largest
};

/// Per-cut entanglement data for contiguous bipartitions k = 1..N-1.
struct EntropyProfile {
  std::vector<CutEntropy> per_cut;
  double s_max = 0.0;
  int argmax_cut = 0;  // smallest cut achieving s_max

  double entropy_at(int cut) const;
};

/// -sum sigma_i^2 log2 sigma_i^2 with 0 log 0 := 0. The squared spectrum
/// must sum to 1 within 1e-8 (NotNormalized otherwise).
double von_neumann(const Eigen::VectorXd& spectrum);

EntropyProfile entropy_profile(const DiscretizedState& state, int dense_cap = 20);
EntropyProfile entropy_profile(const MatrixProductState& mps);

/// sqrt(1 - <f,g>^2); the pure-state trace distance, so that
/// T^2 + <f,g>^2 = 1.
double trace_distance_pure(const DiscretizedState& f, const DiscretizedState& g);
double trace_distance_from_overlap(double overlap);

/// Half trace norm of the difference of the reduced density matrices on the
/// smaller side of the cut. This is the distance the entropy continuity
/// bound applies to at a cut; it is never larger than the full-state trace
/// distance.
double reduced_trace_distance(const Eigen::VectorXd& f, const Eigen::VectorXd& g, int cut);

/// Binary Shannon entropy in bits, H2(0) = H2(1) = 0.
double binary_entropy(double t);

/// T log2(2^m - 1) + H2(T): the Fannes-Audenaert right-hand side for an
/// m-qubit system. Throws OutOfRange unless 0 <= T <= 1 and m >= 1.
double fannes_audenaert_rhs(double t, int m_qubits);

struct FannesCheck {
  double lhs = 0.0;            // |S_f(k) - S_g(k)|
  double signed_diff = 0.0;    // S_f(k) - S_g(k), reported without sign assumptions
  double rhs = 0.0;            // bound on the smaller side's 2^m-dimensional space
  double rhs_full_system = 0.0;  // looser form using all N qubits
  double slack = 0.0;          // rhs - lhs
  bool pass = false;           // lhs <= rhs + 1e-9
};

/// Entropy-continuity check at one cut. T is supplied by the caller; the
/// scope-consistent choice is reduced_trace_distance at the same cut.
FannesCheck check_fannes(const EntropyProfile& f_profile, const EntropyProfile& g_profile,
                         double t, int n_qubits, int cut);

}  // namespace fmps
