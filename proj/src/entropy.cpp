#include "fmps/entropy.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace fmps {

namespace {

using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EntropyProfile profile_from_spectra(const std::vector<Eigen::VectorXd>& spectra) {
  EntropyProfile profile;
  profile.per_cut.reserve(spectra.size());
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    const auto& sv = spectra[i];
    int len = 0;
    const double top = sv.size() > 0 ? sv[0] : 0.0;
    for (Eigen::Index j = 0; j < sv.size(); ++j) {
      if (sv[j] > 1e-12 * top) ++len;
    }
    profile.per_cut.push_back({static_cast<int>(i) + 1, von_neumann(sv), len});
  }
  profile.s_max = 0.0;
  profile.argmax_cut = profile.per_cut.empty() ? 0 : 1;
  for (const auto& c : profile.per_cut) {
    if (c.entropy_bits > profile.s_max) {
      profile.s_max = c.entropy_bits;
      profile.argmax_cut = c.cut;
    }
  }
  return profile;
}

}  // namespace

double EntropyProfile::entropy_at(int cut) const {
  for (const auto& c : per_cut) {
    if (c.cut == cut) return c.entropy_bits;
  }
  throw Error(ErrorCode::InvalidCut, "profile has no cut " + std::to_string(cut));
}

double von_neumann(const Eigen::VectorXd& spectrum) {
  const double total = spectrum.squaredNorm();
  if (std::abs(total - 1.0) > 1e-8) {
    throw Error(ErrorCode::NotNormalized,
                "squared Schmidt spectrum sums to " + std::to_string(total));
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum[i] * spectrum[i];
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

EntropyProfile entropy_profile(const DiscretizedState& state, int dense_cap) {
  if (state.n_qubits > dense_cap) {
    throw Error(ErrorCode::CapExceeded,
                "dense entropy profile capped at " + std::to_string(dense_cap) + " qubits");
  }
  std::vector<Eigen::VectorXd> spectra;
  spectra.reserve(static_cast<std::size_t>(std::max(state.n_qubits - 1, 0)));
  for (int k = 1; k <= state.n_qubits - 1; ++k) {
    spectra.push_back(schmidt_spectrum(state, k));
  }
  return profile_from_spectra(spectra);
}

EntropyProfile entropy_profile(const MatrixProductState& mps) {
  return profile_from_spectra(schmidt_spectra(mps));
}

double trace_distance_from_overlap(double overlap) {
  const double clamped = std::min(std::abs(overlap), 1.0);
  return std::sqrt(std::max(1.0 - clamped * clamped, 0.0));
}

double trace_distance_pure(const DiscretizedState& f, const DiscretizedState& g) {
  return trace_distance_from_overlap(inner(f, g));
}

double reduced_trace_distance(const Eigen::VectorXd& f, const Eigen::VectorXd& g, int cut) {
  if (f.size() != g.size()) {
    throw Error(ErrorCode::DimensionMismatch, "states have different lengths");
  }
  int n = 0;
  for (Eigen::Index v = f.size(); v > 1; v >>= 1) ++n;
  if (cut < 1 || cut > n - 1) {
    throw Error(ErrorCode::InvalidCut, "cut must be in [1, N-1]");
  }
  const Eigen::Index rows = Eigen::Index{1} << cut;
  const Eigen::Index cols = f.size() / rows;
  const Eigen::Map<const RMatrix> mf(f.data(), rows, cols);
  const Eigen::Map<const RMatrix> mg(g.data(), rows, cols);

  Eigen::MatrixXd diff;
  if (rows <= cols) {
    diff = mf * mf.transpose() - mg * mg.transpose();
  } else {
    diff = mf.transpose() * mf - mg.transpose() * mg;
  }
  const Eigen::VectorXd eig =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(diff, Eigen::EigenvaluesOnly).eigenvalues();
  return 0.5 * eig.cwiseAbs().sum();
}

double binary_entropy(double t) {
  if (t < 0.0 || t > 1.0) {
    throw Error(ErrorCode::OutOfRange, "binary entropy argument must be in [0, 1]");
  }
  if (t == 0.0 || t == 1.0) return 0.0;
  return -(t * std::log2(t) + (1.0 - t) * std::log2(1.0 - t));
}

double fannes_audenaert_rhs(double t, int m_qubits) {
  if (t < 0.0 || t > 1.0 || m_qubits < 1) {
    throw Error(ErrorCode::OutOfRange, "need 0 <= T <= 1 and at least one qubit");
  }
  const double dim_minus_one = std::pow(2.0, m_qubits) - 1.0;
  return t * std::log2(dim_minus_one) + binary_entropy(t);
}

FannesCheck check_fannes(const EntropyProfile& f_profile, const EntropyProfile& g_profile,
                         double t, int n_qubits, int cut) {
  const double sf = f_profile.entropy_at(cut);
  const double sg = g_profile.entropy_at(cut);
  const int smaller_side = std::min(cut, n_qubits - cut);

  FannesCheck check;
  check.signed_diff = sf - sg;
  check.lhs = std::abs(check.signed_diff);
  check.rhs = fannes_audenaert_rhs(t, smaller_side);
  check.rhs_full_system = fannes_audenaert_rhs(t, n_qubits);
  check.slack = check.rhs - check.lhs;
  check.pass = check.lhs <= check.rhs + 1e-9;
  return check;
}

}  // namespace fmps
