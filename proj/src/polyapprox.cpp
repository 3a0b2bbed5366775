#include "fmps/polyapprox.hpp"

#include <cmath>

namespace fmps {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

void check_tolerance(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw Error(ErrorCode::InvalidTolerance,
                "tolerance must lie in (0, 1), got " + std::to_string(eps));
  }
}

double log2_alpha(double gamma, double width) {
  if (!(gamma > 0.0) || !(width > 0.0)) {
    throw Error(ErrorCode::OutOfRange, "gamma and width must be positive");
  }
  return std::log2(1.0 + 2.0 / (gamma * width));
}

}  // namespace

double ChebyshevPoly::operator()(double x) const {
  const double u = (2.0 * x - (domain.lo + domain.hi)) / domain.width();
  const auto n = coeffs.size();
  if (n == 1) return coeffs[0];
  double b0 = coeffs[n - 1];
  double b1 = 0.0;
  for (Eigen::Index m = n - 2; m >= 1; --m) {
    const double tmp = b0;
    b0 = coeffs[m] + 2.0 * u * b0 - b1;
    b1 = tmp;
  }
  return coeffs[0] + u * b0 - b1;
}

Eigen::VectorXd ChebyshevPoly::monomial_in_unit_interval() const {
  const int p = degree();
  // T-basis -> monomials of u via the recurrence T_{m+1} = 2u T_m - T_{m-1}
  Eigen::VectorXd in_u = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd t_prev = Eigen::VectorXd::Zero(p + 1);
  Eigen::VectorXd t_cur = Eigen::VectorXd::Zero(p + 1);
  t_prev[0] = 1.0;  // T_0
  in_u += coeffs[0] * t_prev;
  if (p >= 1) {
    t_cur[1] = 1.0;  // T_1
    in_u += coeffs[1] * t_cur;
    for (int m = 2; m <= p; ++m) {
      Eigen::VectorXd t_next = Eigen::VectorXd::Zero(p + 1);
      for (int k = 0; k < m; ++k) t_next[k + 1] += 2.0 * t_cur[k];
      t_next -= t_prev;
      in_u += coeffs[m] * t_next;
      t_prev.swap(t_cur);
      t_cur.swap(t_next);
    }
  }
  // substitute u = 2s - 1 by Horner composition over coefficient arrays
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p + 1);
  for (int m = p; m >= 0; --m) {
    // out <- out * (2s - 1) + in_u[m]
    Eigen::VectorXd shifted = Eigen::VectorXd::Zero(p + 1);
    for (int k = 0; k < p; ++k) shifted[k + 1] = 2.0 * out[k];
    out = shifted - out;
    out[0] += in_u[m];
  }
  return out;
}

ChebyshevPoly fit_chebyshev(const ScalarFunction& f, const Domain& domain, int degree) {
  domain.validate();
  if (degree < 0) throw Error(ErrorCode::OutOfRange, "degree must be >= 0");
  const int n = degree + 1;
  Eigen::VectorXd theta(n), samples(n);
  for (int j = 0; j < n; ++j) {
    theta[j] = (2.0 * j + 1.0) * kPi / (2.0 * n);
    const double x = domain.midpoint() + 0.5 * domain.width() * std::cos(theta[j]);
    samples[j] = f(x);
    if (!std::isfinite(samples[j])) {
      throw Error(ErrorCode::NonFinite, "function not finite at interpolation node");
    }
  }
  ChebyshevPoly poly;
  poly.domain = domain;
  poly.coeffs.resize(n);
  for (int m = 0; m < n; ++m) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += samples[j] * std::cos(m * theta[j]);
    poly.coeffs[m] = (m == 0 ? 1.0 : 2.0) * acc / n;
  }
  return poly;
}

ChebyshevPoly fit_chebyshev(const FunctionSpec& spec, const Domain& domain, int degree) {
  return fit_chebyshev(make_function(spec, domain), domain, degree);
}

double linf_error(const ChebyshevPoly& poly, const DiscretizedState& state) {
  if (std::abs(poly.domain.lo - state.domain.lo) > 1e-12 ||
      std::abs(poly.domain.hi - state.domain.hi) > 1e-12) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial and state domains differ");
  }
  const std::int64_t len = state.size();
  Eigen::VectorXd g(len);
  for (std::int64_t i = 0; i < len; ++i) {
    g[i] = poly(grid_point(state.domain, state.n_qubits, i));
  }
  if (!g.allFinite()) throw Error(ErrorCode::NonFinite, "polynomial sample not finite");
  const double norm = g.norm();
  if (norm == 0.0) throw Error(ErrorCode::ZeroFunction, "polynomial vanishes on the grid");
  g /= norm;
  return (state.values - g).lpNorm<Eigen::Infinity>();
}

double linf_error(const ChebyshevPoly& poly, const FunctionSpec& spec, int n_qubits) {
  return linf_error(poly, discretize(spec, poly.domain, n_qubits));
}

double required_degree_real(double eps, double gamma, double width, double c) {
  check_tolerance(eps);
  return std::log2(1.0 / eps) / log2_alpha(gamma, width) + c;
}

int required_degree(double eps, double gamma, double width, double c) {
  return static_cast<int>(std::ceil(required_degree_real(eps, gamma, width, c)));
}

double degree_for_overlap_real(double delta, int n_qubits, double gamma, double width) {
  check_tolerance(delta);
  if (n_qubits < 1) throw Error(ErrorCode::OutOfRange, "n_qubits must be >= 1");
  return (static_cast<double>(n_qubits - 1) - std::log2(delta)) /
         (2.0 * log2_alpha(gamma, width));
}

int degree_for_overlap(double delta, int n_qubits, double gamma, double width) {
  const double p = degree_for_overlap_real(delta, n_qubits, gamma, width);
  if (!(p < 1e9)) throw Error(ErrorCode::OutOfRange, "degree overflows");
  return static_cast<int>(std::ceil(p));
}

ApproxReport minimal_degree_search(const FunctionSpec& spec, const Domain& domain, double eps,
                                   int n_qubits, int cap) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidTolerance, "eps must be > 0");
  const DiscretizedState state = discretize(spec, domain, n_qubits);
  for (int p = 0; p <= cap; ++p) {
    const double err = linf_error(fit_chebyshev(spec, domain, p), state);
    if (err <= eps) return ApproxReport{p, err, n_qubits};
  }
  throw Error(ErrorCode::DegreeCapExceeded,
              "no degree <= " + std::to_string(cap) + " reaches eps = " + std::to_string(eps));
}

}  // namespace fmps
