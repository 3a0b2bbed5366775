#include "fmps/funcgrid.hpp"

#include "fmps/format.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace fmps {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

void Domain::validate() const {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::OutOfRange,
                "domain requires finite lo < hi, got [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
  }
}

const char* family_name(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::Sine: return "sine";
    case Family::Exponential: return "exponential";
    case Family::Lognormal: return "lognormal";
    case Family::Polynomial: return "polynomial";
    case Family::LinearRamp: return "linear-ramp";
    case Family::Constant: return "constant";
    case Family::Step: return "step";
  }
  return "?";
}

bool is_sdr(Family f) { return f != Family::Step; }

FunctionSpec FunctionSpec::parse(const std::string& text) {
  const std::string body = trim(text);
  if (body.empty()) throw Error(ErrorCode::ParseError, "empty function spec");

  const auto colon = body.find(':');
  const std::string name = trim(body.substr(0, colon));

  FunctionSpec spec;
  bool found = false;
  for (Family f : {Family::Gaussian, Family::Sine, Family::Exponential,
                   Family::Lognormal, Family::Polynomial, Family::LinearRamp,
                   Family::Constant, Family::Step}) {
    if (name == family_name(f)) {
      spec.family = f;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::ParseError, "unknown family '" + name + "'");

  if (colon != std::string::npos) {
    std::stringstream rest(body.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::ParseError, "expected key=value, got '" + item + "'");
      }
      const std::string key = trim(item.substr(0, eq));
      const std::string val = trim(item.substr(eq + 1));
      if (key.empty()) throw Error(ErrorCode::ParseError, "empty key in '" + item + "'");
      char* end = nullptr;
      const double x = std::strtod(val.c_str(), &end);
      if (end == val.c_str() || *end != '\0') {
        throw Error(ErrorCode::ParseError, "bad numeric value '" + val + "'");
      }
      if (key == "gamma") {
        if (x < 0) throw Error(ErrorCode::ParseError, "gamma must be >= 0");
        spec.deriv_scale_override = x;
      } else if (key == "cf") {
        if (x < 0) throw Error(ErrorCode::ParseError, "cf must be >= 0");
        spec.deriv_const_override = x;
      } else {
        spec.params[key] = x;
      }
    }
  }

  if (spec.family == Family::Polynomial) {
    bool any = false;
    for (const auto& [k, v] : spec.params) {
      if (k == "lo" || k == "hi") continue;
      if (k.size() < 2 || k[0] != 'c') {
        throw Error(ErrorCode::ParseError, "polynomial keys must be c0..c64, got '" + k + "'");
      }
      for (std::size_t i = 1; i < k.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(k[i]))) {
          throw Error(ErrorCode::ParseError, "polynomial keys must be c0..c64, got '" + k + "'");
        }
      }
      const int idx = std::stoi(k.substr(1));
      if (idx > 64) throw Error(ErrorCode::ParseError, "polynomial degree capped at 64");
      any = true;
    }
    if (!any) {
      throw Error(ErrorCode::ParseError, "polynomial family needs at least one ck coefficient");
    }
  }
  return spec;
}

std::string FunctionSpec::id() const {
  std::string out = family_name(family);
  std::string sep = ":";
  const auto append = [&](const std::string& key, double v) {
    out += sep + key + "=" + format_double(v);
    sep = ",";
  };
  for (const auto& [k, v] : params) append(k, v);
  if (deriv_const_override) append("cf", *deriv_const_override);
  if (deriv_scale_override) append("gamma", *deriv_scale_override);
  return out;
}

double FunctionSpec::param(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool FunctionSpec::has_param(const std::string& key) const {
  return params.count(key) > 0;
}

std::optional<Domain> FunctionSpec::preferred_domain() const {
  if (!has_param("lo") && !has_param("hi")) return std::nullopt;
  Domain d{param("lo", 0.0), param("hi", 1.0)};
  d.validate();
  return d;
}

int polynomial_degree(const FunctionSpec& spec) {
  switch (spec.family) {
    case Family::Constant: return 0;
    case Family::LinearRamp: return 1;
    case Family::Polynomial: {
      int deg = 0;
      for (const auto& [k, v] : spec.params) {
        if (k.size() >= 2 && k[0] == 'c' && std::isdigit(static_cast<unsigned char>(k[1])) &&
            v != 0.0) {
          deg = std::max(deg, std::stoi(k.substr(1)));
        }
      }
      return deg;
    }
    default:
      throw Error(ErrorCode::OutOfRange,
                  std::string("no polynomial degree for family ") + family_name(spec.family));
  }
}

ScalarFunction make_function(const FunctionSpec& spec, const Domain& domain) {
  domain.validate();
  switch (spec.family) {
    case Family::Gaussian: {
      const double mu = spec.param("mu", 0.0);
      const double sigma = spec.param("sigma", 1.0);
      if (!(sigma > 0)) throw Error(ErrorCode::OutOfRange, "gaussian sigma must be > 0");
      return [mu, sigma](double x) {
        const double z = (x - mu) / sigma;
        return std::exp(-0.5 * z * z);
      };
    }
    case Family::Sine: {
      const double omega = spec.param("omega", 1.0);
      const double phase = spec.param("phase", 0.0);
      return [omega, phase](double x) { return std::sin(omega * x + phase); };
    }
    case Family::Exponential: {
      const double lambda = spec.param("lambda", 1.0);
      return [lambda](double x) { return std::exp(lambda * x); };
    }
    case Family::Lognormal: {
      const double mu = spec.param("mu", 0.0);
      const double sigma = spec.param("sigma", 1.0);
      if (!(sigma > 0)) throw Error(ErrorCode::OutOfRange, "lognormal sigma must be > 0");
      // extended by zero at x <= 0 so every domain evaluates finitely
      return [mu, sigma](double x) {
        if (x <= 0.0) return 0.0;
        const double z = (std::log(x) - mu) / sigma;
        return std::exp(-0.5 * z * z) / (x * sigma * kSqrt2Pi);
      };
    }
    case Family::Polynomial: {
      std::vector<double> coeffs(65, 0.0);
      int deg = 0;
      for (const auto& [k, v] : spec.params) {
        if (k.size() >= 2 && k[0] == 'c' && std::isdigit(static_cast<unsigned char>(k[1]))) {
          const int idx = std::stoi(k.substr(1));
          coeffs[static_cast<std::size_t>(idx)] = v;
          deg = std::max(deg, idx);
        }
      }
      coeffs.resize(static_cast<std::size_t>(deg) + 1);
      return [coeffs](double x) {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
        return acc;
      };
    }
    case Family::LinearRamp:
      return [](double x) { return x; };
    case Family::Constant: {
      const double c = spec.param("c", 1.0);
      return [c](double) { return c; };
    }
    case Family::Step: {
      const double at = spec.param("at", domain.midpoint());
      const double low = spec.param("low", 0.0);
      const double high = spec.param("high", 1.0);
      return [at, low, high](double x) { return x < at ? low : high; };
    }
  }
  throw Error(ErrorCode::OutOfRange, "unreachable family");
}

double grid_point(const Domain& domain, int n_qubits, std::int64_t i) {
  const std::int64_t last = (std::int64_t{1} << n_qubits) - 1;
  return domain.lo + static_cast<double>(i) * domain.width() / static_cast<double>(last);
}

DiscretizedState discretize(const FunctionSpec& spec, const Domain& domain, int n_qubits) {
  domain.validate();
  if (n_qubits < 1 || n_qubits > 30) {
    throw Error(ErrorCode::OutOfRange, "n_qubits must be in [1, 30]");
  }
  const auto f = make_function(spec, domain);
  const std::int64_t len = std::int64_t{1} << n_qubits;
  Eigen::VectorXd v(len);
  for (std::int64_t i = 0; i < len; ++i) {
    v[i] = f(grid_point(domain, n_qubits, i));
  }
  DiscretizedState state = state_from_values(domain, std::move(v));
  state.n_qubits = n_qubits;
  return state;
}

DiscretizedState state_from_values(const Domain& domain, Eigen::VectorXd values) {
  domain.validate();
  if (!is_power_of_two(values.size())) {
    throw Error(ErrorCode::DimensionMismatch,
                "state length must be a power of two, got " + std::to_string(values.size()));
  }
  if (!values.allFinite()) {
    throw Error(ErrorCode::NonFinite, "sample vector contains NaN or infinity");
  }
  const double norm = values.norm();
  if (norm == 0.0) {
    throw Error(ErrorCode::ZeroFunction, "function is identically zero on the grid");
  }
  DiscretizedState state;
  state.domain = domain;
  state.n_qubits = 0;
  for (std::int64_t n = values.size(); n > 1; n >>= 1) ++state.n_qubits;
  state.values = values / norm;
  return state;
}

double one_norm(const DiscretizedState& state) {
  // compensated summation keeps the error near machine epsilon of the total,
  // which the saturation check (equality within 1e-12 at N=16) relies on
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < state.values.size(); ++i) {
    const double y = std::abs(state.values[i]) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double inner(const DiscretizedState& a, const DiscretizedState& b) {
  if (a.values.size() != b.values.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner product of states with " + std::to_string(a.values.size()) + " and " +
                    std::to_string(b.values.size()) + " entries");
  }
  double sum = 0.0, comp = 0.0;
  for (Eigen::Index i = 0; i < a.values.size(); ++i) {
    const double y = a.values[i] * b.values[i] - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double deriv_scale(const FunctionSpec& spec, const Domain& domain) {
  if (spec.deriv_scale_override) return *spec.deriv_scale_override;
  domain.validate();
  switch (spec.family) {
    case Family::Gaussian:
      // Cramer's Hermite bound gives |f^(n)| <= 1.09 sigma^-n sqrt(n!);
      // since 2^n <= 3.3 sqrt(n!), the pair (3.6, 1/(2 sigma)) certifies it
      return 0.5 / spec.param("sigma", 1.0);
    case Family::Sine:
      // |f^(n)| = omega^n and 2^n <= 2 n!, so (2, omega/2) certifies
      return 0.5 * std::abs(spec.param("omega", 1.0));
    case Family::Exponential:
      // |f^(n)| = lambda^n sup|f| and 2^n <= 2 n!, so (2 sup|f|, lambda/2)
      return 0.5 * std::abs(spec.param("lambda", 1.0));
    case Family::Lognormal: {
      // heuristic: the singularity sits at x=0, and near-endpoint resolution
      // scales with the geometric mean of the gap and the width
      const double sigma = spec.param("sigma", 1.0);
      const double lo = std::max(domain.lo, 1e-12);
      return 1.0 / (std::min(sigma, 1.0) * std::sqrt(lo * domain.width()));
    }
    case Family::Polynomial: {
      const double d = static_cast<double>(polynomial_degree(spec));
      return 2.0 * d * d / domain.width();  // Markov-style certificate
    }
    case Family::LinearRamp:
      return 2.0 / domain.width();
    case Family::Constant:
      return 0.0;
    case Family::Step:
      return std::numeric_limits<double>::infinity();  // no finite certificate
  }
  return 0.0;
}

double deriv_const(const FunctionSpec& spec, const Domain& domain) {
  if (spec.deriv_const_override) return *spec.deriv_const_override;
  domain.validate();
  switch (spec.family) {
    case Family::Gaussian:
      return 3.6;  // 1.09 * max_n 2^n / sqrt(n!)
    case Family::Sine:
      return 2.0;
    case Family::Exponential: {
      const double lambda = spec.param("lambda", 1.0);
      const double sup = std::exp(std::max(lambda * domain.lo, lambda * domain.hi));
      return 2.0 * sup;
    }
    case Family::Lognormal:
      return 1.0;  // placeholder; reports compare slopes, not intercepts
    case Family::Polynomial:
    case Family::LinearRamp:
    case Family::Constant: {
      // sup |f| over the grid endpoints and midpoint, cheap and adequate
      const auto f = make_function(spec, domain);
      return std::max({std::abs(f(domain.lo)), std::abs(f(domain.midpoint())),
                       std::abs(f(domain.hi)), 1.0});
    }
    case Family::Step:
      return std::numeric_limits<double>::infinity();
  }
  return 1.0;
}

}  // namespace fmps
