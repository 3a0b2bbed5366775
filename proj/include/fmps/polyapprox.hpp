#pragma once

#include <Eigen/Core>

#include "fmps/funcgrid.hpp"

namespace fmps {

/// Degree-p polynomial in the Chebyshev-T basis of the affinely mapped
/// variable u = (2x - lo - hi)/(hi - lo):  g(x) = sum_m coeffs[m] T_m(u).
struct ChebyshevPoly {
  Domain domain;
  Eigen::VectorXd coeffs;  // length degree+1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Clenshaw evaluation.
  double operator()(double x) const;

  /// Coefficients rewritten in the monomial basis of s = (x - lo)/(hi - lo),
  /// s in [0, 1]. Used by the bounded-rank MPS encoding.
  Eigen::VectorXd monomial_in_unit_interval() const;
};

struct ApproxReport {
  int degree = 0;
  double linf_error = 0.0;
  int grid_n = 0;
};

/// Interpolant through the p+1 Chebyshev-Gauss nodes (roots of T_{p+1})
/// mapped to the domain. Near-minimax for smooth functions.
ChebyshevPoly fit_chebyshev(const FunctionSpec& spec, const Domain& domain, int degree);
ChebyshevPoly fit_chebyshev(const ScalarFunction& f, const Domain& domain, int degree);

/// max_i |f_i - g_i| over the 2^N grid with BOTH sample vectors unit
/// normalized first, matching how the overlap bound consumes the error.
double linf_error(const ChebyshevPoly& poly, const FunctionSpec& spec, int n_qubits);
double linf_error(const ChebyshevPoly& poly, const DiscretizedState& state);

/// log(1/eps) / log(alpha) + c with alpha = 1 + 2/(gamma*width); the degree
/// at which a near-minimax polynomial meets pointwise accuracy eps.
double required_degree_real(double eps, double gamma, double width, double c);
int required_degree(double eps, double gamma, double width, double c);

/// ((N-1) - log2(delta)) / (2 log2(alpha)): the degree needed so that the
/// overlap of the normalized grid vectors stays above 1 - delta.
double degree_for_overlap_real(double delta, int n_qubits, double gamma, double width);
int degree_for_overlap(double delta, int n_qubits, double gamma, double width);

/// Smallest degree (linear scan from 0) whose normalized grid error is
/// <= eps. Throws DegreeCapExceeded past `cap`.
ApproxReport minimal_degree_search(const FunctionSpec& spec, const Domain& domain, double eps,
                                   int n_qubits, int cap = 64);

}  // namespace fmps
