#pragma once

#include <Eigen/Core>
#include <vector>

#include "fmps/funcgrid.hpp"
#include "fmps/polyapprox.hpp"

namespace fmps {

/// One site of the chain. The order-3 tensor indexed (left, physical, right)
/// is stored as one left x right matrix per physical value:
///
///      left ---[ a[s] ]--- right         s in {0, 1}
///                 |
///                 s
struct MPSCore {
  std::array<Eigen::MatrixXd, 2> a;

  Eigen::Index left() const { return a[0].rows(); }
  Eigen::Index right() const { return a[0].cols(); }
  const Eigen::MatrixXd& operator[](int s) const { return a[static_cast<std::size_t>(s)]; }
  Eigen::MatrixXd& operator[](int s) { return a[static_cast<std::size_t>(s)]; }
};

enum class Canonical { None, Left, Right };

/// Chain of N order-3 cores factorizing a length-2^N real vector. Boundary
/// bonds have dimension 1. Objects are treated as immutable after
/// construction; every operation returns a new state.
struct MatrixProductState {
  std::vector<MPSCore> cores;
  Canonical canonical = Canonical::None;

  int n_qubits() const { return static_cast<int>(cores.size()); }

  /// Length N+1; bond_dims[0] == bond_dims[N] == 1 for well-formed states.
  std::vector<Eigen::Index> bond_dims() const;
  Eigen::Index max_bond() const;

  /// Checks shape consistency and finiteness. Throws on violation.
  void validate() const;
};

struct TruncationPolicy {
  Eigen::Index chi_max = kUnlimited;
  double sv_threshold = 0.0;  // singular values below this are dropped

  static constexpr Eigen::Index kUnlimited = 0x7fffffff;
};

struct TruncationResult {
  MatrixProductState mps;
  double discarded_weight = 0.0;  // sum of squared dropped singular values
};

/// Exact left-canonical factorization by successive SVDs. Bond k carries the
/// numerical rank of the k-th unfolding (singular values above
/// rel_threshold * largest are kept).
MatrixProductState from_state_vector(const DiscretizedState& state, double rel_threshold = 1e-12);
MatrixProductState mps_from_vector(const Eigen::VectorXd& v, double rel_threshold = 1e-12);

/// Full contraction to a length-2^N vector. Throws CapExceeded above `cap`.
Eigen::VectorXd to_state_vector(const MatrixProductState& mps, int cap = 24);

/// Single right-to-left SVD sweep from left-canonical form; quasi-optimal
/// for the policy's rank cap. Result is right-canonical and unit norm.
TruncationResult truncate(const MatrixProductState& mps, const TruncationPolicy& policy);

/// Explicit bounded-rank encoding of a polynomial on the inclusive-endpoint
/// grid; every interior bond dimension is exactly degree+1 (never more).
///
/// The grid point is affine in the index bits: with s = (x-lo)/(hi-lo),
///   s(i) = sum_j tau_j b_j,   tau_j = 2^(N-1-j) / (2^N - 1),
/// so each core maps the monomial powers (s^0..s^p) of the bit-prefix to
/// those of the extended prefix via the binomial expansion of (s + tau b)^m.
/// The contraction equals the grid evaluation of the polynomial, then the
/// state is unit normalized.
MatrixProductState poly_to_mps(const ChebyshevPoly& poly, int n_qubits, int degree_cap = 64);

/// <a|b> by transfer-matrix contraction, O(N chi^3); no dense vectors.
double mps_inner(const MatrixProductState& a, const MatrixProductState& b);

double mps_norm(const MatrixProductState& mps);

/// Descending Schmidt coefficients at the bipartition after qubit `cut`
/// (1 <= cut <= N-1). Dense overloads reshape to 2^cut x 2^(N-cut) and take
/// singular values; the MPS overload reads them from canonical-form bonds.
Eigen::VectorXd schmidt_spectrum(const Eigen::VectorXd& v, int cut);
Eigen::VectorXd schmidt_spectrum(const DiscretizedState& state, int cut);
Eigen::VectorXd schmidt_spectrum(const MatrixProductState& mps, int cut);

/// Spectra at every cut 1..N-1 from one canonicalization sweep.
std::vector<Eigen::VectorXd> schmidt_spectra(const MatrixProductState& mps);

/// QR sweep producing an equivalent left-canonical state.
MatrixProductState left_canonicalize(const MatrixProductState& mps);

bool is_left_canonical(const MatrixProductState& mps, double tol = 1e-10);

}  // namespace fmps
