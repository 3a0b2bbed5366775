#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "fmps/error.hpp"

namespace fmps {

/// Closed bounded interval [lo, hi], lo < hi.
struct Domain {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  void validate() const;
};

enum class Family {
  Gaussian,
  Sine,
  Exponential,
  Lognormal,
  Polynomial,
  LinearRamp,
  Constant,
  Step,
};

const char* family_name(Family f);

/// True for the families whose derivatives admit a finite factorial bound
/// C * gamma^n * n!. The step family is excluded and acts as the negative
/// control in bound reports.
bool is_sdr(Family f);

/// A named scalar function plus its derivative-bound certificate (C, gamma).
///
/// Families and parameters (defaults in parentheses):
///   gaussian     mu (0), sigma (1):      exp(-(x-mu)^2 / (2 sigma^2))
///   sine         omega (1), phase (0):   sin(omega x + phase)
///   exponential  lambda (1):             exp(lambda x)
///   lognormal    mu (0), sigma (1):      pdf, extended by 0 for x <= 0
///   polynomial   c0, c1, ... c64:        sum ck x^k (at least one ck required)
///   linear-ramp  (none):                 x
///   constant     c (1):                  c
///   step         at (domain midpoint), low (0), high (1)
///
/// Reserved keys accepted by the parser on any family: lo, hi (preferred
/// domain, consumed by the harness), gamma, cf (certificate overrides).
struct FunctionSpec {
  Family family = Family::Constant;
  std::map<std::string, double> params;
  std::optional<double> deriv_scale_override;  // gamma
  std::optional<double> deriv_const_override;  // C

  /// Parses the `family:key=val,key=val` grammar. Throws ParseError.
  static FunctionSpec parse(const std::string& text);

  /// Canonical text form (family plus sorted explicit params); stable, used
  /// as the function identifier in sweep output.
  std::string id() const;

  double param(const std::string& key, double fallback) const;
  bool has_param(const std::string& key) const;

  /// Domain from reserved lo/hi keys, when present.
  std::optional<Domain> preferred_domain() const;
};

/// Unit-l2-norm sample vector of a function over the dyadic grid
///   x_i = lo + i (hi-lo)/(2^N - 1),  i = 0 .. 2^N-1  (endpoints inclusive).
/// Index bits are big-endian: qubit 0 is the most significant bit of i, so
/// cut k separates coarse spatial scales from fine ones.
struct DiscretizedState {
  int n_qubits = 0;
  Domain domain;
  Eigen::VectorXd values;

  std::int64_t size() const { return values.size(); }
};

using ScalarFunction = std::function<double(double)>;

/// Binds a spec to a domain (resolves defaults such as the step threshold).
ScalarFunction make_function(const FunctionSpec& spec, const Domain& domain);

double grid_point(const Domain& domain, int n_qubits, std::int64_t i);

/// Samples and unit-normalizes. Throws ZeroFunction if every sample is 0,
/// NonFinite if any sample is NaN or infinite.
DiscretizedState discretize(const FunctionSpec& spec, const Domain& domain, int n_qubits);

/// Wraps a raw vector (length must be a power of two) as a unit-norm state.
DiscretizedState state_from_values(const Domain& domain, Eigen::VectorXd values);

/// sum_i |v_i|; bounded by 2^(N/2) for unit vectors, with equality exactly
/// for the uniform state.
double one_norm(const DiscretizedState& state);

/// Euclidean inner product. Throws DimensionMismatch when lengths differ.
double inner(const DiscretizedState& a, const DiscretizedState& b);

/// Certificate scale gamma: the override when set, else the per-family
/// default. Defaults (documented in the README): gaussian 1/sigma,
/// sine omega, exponential |lambda|/2, lognormal 1/(lo * min(sigma,1)),
/// polynomial 2 d^2/|D|, linear-ramp 2/|D|, constant 0, step +infinity.
double deriv_scale(const FunctionSpec& spec, const Domain& domain);

/// Certificate constant C paired with deriv_scale's gamma.
double deriv_const(const FunctionSpec& spec, const Domain& domain);

/// Highest coefficient index supplied for the polynomial family (0 for the
/// constant and 1 for the linear-ramp family).
int polynomial_degree(const FunctionSpec& spec);

}  // namespace fmps
