#include "fmps/mps.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace fmps {

namespace {

using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ThinSvd {
  Eigen::MatrixXd u;
  Eigen::VectorXd s;
  Eigen::MatrixXd v;
};

ThinSvd thin_svd(const Eigen::MatrixXd& m) {
  // Jacobi is exact enough and fast at small sizes; BDC wins on the larger
  // unfoldings that appear in dense factorizations.
  if (m.rows() <= 16 || m.cols() <= 16) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "SVD did not converge");
  }
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Eigen::VectorXd singular_values_only(const Eigen::MatrixXd& m) {
  if (m.rows() <= 16 || m.cols() <= 16) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::NonFinite, "SVD did not converge");
  }
  return svd.singularValues();
}

Eigen::Index rank_above(const Eigen::VectorXd& sv, double threshold) {
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > threshold) ++r;
  return std::max<Eigen::Index>(r, 1);
}

int qubits_for_length(Eigen::Index len) {
  if (len < 2 || (len & (len - 1)) != 0) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector length must be a power of two >= 2, got " + std::to_string(len));
  }
  int n = 0;
  for (Eigen::Index v = len; v > 1; v >>= 1) ++n;
  return n;
}

/// Horizontal unfolding (l x 2r) of a core whose right bond was already
/// contracted with `carry`; column index is (s, c) with c fastest.
Eigen::MatrixXd unfold_with_carry(const MPSCore& core, const Eigen::MatrixXd& carry) {
  const Eigen::Index l = core.left();
  const Eigen::Index rho = carry.cols();
  Eigen::MatrixXd m(l, 2 * rho);
  m.leftCols(rho) = core[0] * carry;
  m.rightCols(rho) = core[1] * carry;
  return m;
}

}  // namespace

std::vector<Eigen::Index> MatrixProductState::bond_dims() const {
  std::vector<Eigen::Index> dims;
  dims.reserve(cores.size() + 1);
  dims.push_back(cores.empty() ? 1 : cores.front().left());
  for (const auto& core : cores) dims.push_back(core.right());
  return dims;
}

Eigen::Index MatrixProductState::max_bond() const {
  Eigen::Index chi = 1;
  for (const auto& d : bond_dims()) chi = std::max(chi, d);
  return chi;
}

void MatrixProductState::validate() const {
  if (cores.empty()) throw Error(ErrorCode::DimensionMismatch, "empty MPS");
  if (cores.front().left() != 1 || cores.back().right() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "boundary bonds must have dimension 1");
  }
  for (std::size_t j = 0; j < cores.size(); ++j) {
    const auto& c = cores[j];
    if (c[0].rows() != c[1].rows() || c[0].cols() != c[1].cols()) {
      throw Error(ErrorCode::DimensionMismatch, "physical slices disagree at site " + std::to_string(j));
    }
    if (j + 1 < cores.size() && c.right() != cores[j + 1].left()) {
      throw Error(ErrorCode::DimensionMismatch, "bond mismatch at site " + std::to_string(j));
    }
    if (!c[0].allFinite() || !c[1].allFinite()) {
      throw Error(ErrorCode::NonFinite, "core entries not finite at site " + std::to_string(j));
    }
  }
}

MatrixProductState mps_from_vector(const Eigen::VectorXd& v, double rel_threshold) {
  const int n = qubits_for_length(v.size());
  if (!v.allFinite()) throw Error(ErrorCode::NonFinite, "state vector not finite");

  MatrixProductState mps;
  mps.cores.resize(static_cast<std::size_t>(n));

  RMatrix carry = Eigen::Map<const RMatrix>(v.data(), 1, v.size());
  for (int j = 0; j < n - 1; ++j) {
    // (l x cols) row-major buffer re-read as (2l x cols/2): the physical bit
    // of site j becomes the slowest column bit, i.e. rows (a, b_j).
    const Eigen::Index rows = carry.rows() * 2;
    const Eigen::Index cols = carry.cols() / 2;
    Eigen::MatrixXd m = Eigen::Map<const RMatrix>(carry.data(), rows, cols);

    ThinSvd svd = thin_svd(m);
    const Eigen::Index r = rank_above(svd.s, rel_threshold * svd.s[0]);

    MPSCore& core = mps.cores[static_cast<std::size_t>(j)];
    const Eigen::Index l = rows / 2;
    core[0].resize(l, r);
    core[1].resize(l, r);
    for (Eigen::Index a = 0; a < l; ++a) {
      core[0].row(a) = svd.u.row(2 * a).head(r);
      core[1].row(a) = svd.u.row(2 * a + 1).head(r);
    }
    carry = svd.s.head(r).asDiagonal() * svd.v.leftCols(r).transpose();
  }

  MPSCore& last = mps.cores.back();
  last[0] = carry.col(0);
  last[1] = carry.col(1);
  mps.canonical = Canonical::Left;
  return mps;
}

MatrixProductState from_state_vector(const DiscretizedState& state, double rel_threshold) {
  return mps_from_vector(state.values, rel_threshold);
}

Eigen::VectorXd to_state_vector(const MatrixProductState& mps, int cap) {
  mps.validate();
  const int n = mps.n_qubits();
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded,
                "contraction of " + std::to_string(n) + " qubits exceeds cap " + std::to_string(cap));
  }
  RMatrix acc = RMatrix::Ones(1, 1);
  for (const auto& core : mps.cores) {
    const RMatrix p0 = acc * core[0];
    const RMatrix p1 = acc * core[1];
    RMatrix next(2 * acc.rows(), core.right());
    for (Eigen::Index q = 0; q < acc.rows(); ++q) {
      next.row(2 * q) = p0.row(q);
      next.row(2 * q + 1) = p1.row(q);
    }
    acc = std::move(next);
  }
  return Eigen::VectorXd(acc.col(0));
}

MatrixProductState left_canonicalize(const MatrixProductState& mps) {
  mps.validate();
  const int n = mps.n_qubits();
  MatrixProductState out;
  out.cores.resize(static_cast<std::size_t>(n));

  Eigen::MatrixXd r_factor = Eigen::MatrixXd::Ones(1, 1);
  for (int j = 0; j < n; ++j) {
    const auto& core = mps.cores[static_cast<std::size_t>(j)];
    const Eigen::MatrixXd b0 = r_factor * core[0];
    const Eigen::MatrixXd b1 = r_factor * core[1];
    auto& dst = out.cores[static_cast<std::size_t>(j)];
    if (j == n - 1) {
      dst[0] = b0;
      dst[1] = b1;
      break;
    }
    const Eigen::Index l = b0.rows();
    const Eigen::Index r = b0.cols();
    Eigen::MatrixXd m(2 * l, r);
    for (Eigen::Index a = 0; a < l; ++a) {
      m.row(2 * a) = b0.row(a);
      m.row(2 * a + 1) = b1.row(a);
    }
    const Eigen::Index k = std::min(m.rows(), m.cols());
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * l, k);
    r_factor = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    dst[0].resize(l, k);
    dst[1].resize(l, k);
    for (Eigen::Index a = 0; a < l; ++a) {
      dst[0].row(a) = q.row(2 * a);
      dst[1].row(a) = q.row(2 * a + 1);
    }
  }
  out.canonical = Canonical::Left;
  return out;
}

bool is_left_canonical(const MatrixProductState& mps, double tol) {
  for (const auto& core : mps.cores) {
    const Eigen::MatrixXd gram =
        core[0].transpose() * core[0] + core[1].transpose() * core[1];
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    if ((gram - eye).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

std::vector<Eigen::VectorXd> schmidt_spectra(const MatrixProductState& mps) {
  const MatrixProductState work =
      mps.canonical == Canonical::Left ? mps : left_canonicalize(mps);
  const int n = work.n_qubits();
  std::vector<Eigen::VectorXd> spectra(static_cast<std::size_t>(std::max(n - 1, 0)));

  Eigen::MatrixXd carry = Eigen::MatrixXd::Ones(1, 1);
  for (int j = n - 1; j >= 1; --j) {
    const Eigen::MatrixXd m = unfold_with_carry(work.cores[static_cast<std::size_t>(j)], carry);
    ThinSvd svd = thin_svd(m);
    spectra[static_cast<std::size_t>(j - 1)] = svd.s;
    carry = svd.u * svd.s.asDiagonal();
  }
  return spectra;
}

Eigen::VectorXd schmidt_spectrum(const MatrixProductState& mps, int cut) {
  const int n = mps.n_qubits();
  if (cut < 1 || cut > n - 1) {
    throw Error(ErrorCode::InvalidCut, "cut must be in [1, N-1], got " + std::to_string(cut));
  }
  return schmidt_spectra(mps)[static_cast<std::size_t>(cut - 1)];
}

Eigen::VectorXd schmidt_spectrum(const Eigen::VectorXd& v, int cut) {
  const int n = qubits_for_length(v.size());
  if (cut < 1 || cut > n - 1) {
    throw Error(ErrorCode::InvalidCut, "cut must be in [1, N-1], got " + std::to_string(cut));
  }
  const Eigen::Index rows = Eigen::Index{1} << cut;
  const Eigen::Index cols = v.size() / rows;
  const Eigen::MatrixXd m = Eigen::Map<const RMatrix>(v.data(), rows, cols);
  return singular_values_only(m);
}

Eigen::VectorXd schmidt_spectrum(const DiscretizedState& state, int cut) {
  return schmidt_spectrum(state.values, cut);
}

TruncationResult truncate(const MatrixProductState& mps, const TruncationPolicy& policy) {
  if (policy.chi_max < 1) throw Error(ErrorCode::OutOfRange, "chi_max must be >= 1");
  if (policy.sv_threshold < 0) throw Error(ErrorCode::OutOfRange, "sv_threshold must be >= 0");

  const MatrixProductState src =
      mps.canonical == Canonical::Left ? mps : left_canonicalize(mps);
  const int n = src.n_qubits();

  TruncationResult result;
  result.mps.cores.resize(static_cast<std::size_t>(n));

  Eigen::MatrixXd carry = Eigen::MatrixXd::Ones(1, 1);
  for (int j = n - 1; j >= 1; --j) {
    const auto& core = src.cores[static_cast<std::size_t>(j)];
    const Eigen::Index rho = carry.cols();
    const Eigen::MatrixXd m = unfold_with_carry(core, carry);
    ThinSvd svd = thin_svd(m);

    Eigen::Index keep = 0;
    while (keep < svd.s.size() && svd.s[keep] >= policy.sv_threshold) ++keep;
    keep = std::max<Eigen::Index>(std::min(keep, policy.chi_max), 1);
    result.discarded_weight += svd.s.tail(svd.s.size() - keep).squaredNorm();

    auto& dst = result.mps.cores[static_cast<std::size_t>(j)];
    dst[0].resize(keep, rho);
    dst[1].resize(keep, rho);
    for (Eigen::Index q = 0; q < keep; ++q) {
      dst[0].row(q) = svd.v.col(q).head(rho).transpose();
      dst[1].row(q) = svd.v.col(q).tail(rho).transpose();
    }
    carry = svd.u.leftCols(keep) * svd.s.head(keep).asDiagonal();
  }

  auto& first = result.mps.cores.front();
  first[0] = src.cores.front()[0] * carry;
  first[1] = src.cores.front()[1] * carry;
  const double norm = std::sqrt(first[0].squaredNorm() + first[1].squaredNorm());
  if (norm == 0.0) throw Error(ErrorCode::ZeroFunction, "truncation produced the zero state");
  first[0] /= norm;
  first[1] /= norm;
  result.mps.canonical = Canonical::Right;
  return result;
}

MatrixProductState poly_to_mps(const ChebyshevPoly& poly, int n_qubits, int degree_cap) {
  const int p = poly.degree();
  if (p > degree_cap) {
    throw Error(ErrorCode::DegreeCapExceeded,
                "degree " + std::to_string(p) + " exceeds cap " + std::to_string(degree_cap));
  }
  if (n_qubits < 1 || n_qubits > 30) {
    throw Error(ErrorCode::OutOfRange, "n_qubits must be in [1, 30]");
  }

  const Eigen::VectorXd mono = poly.monomial_in_unit_interval();
  const int width = p + 1;

  // binomial table, exact for p <= 64 at double precision scale
  Eigen::MatrixXd binom = Eigen::MatrixXd::Zero(width, width);
  for (int m = 0; m < width; ++m) {
    binom(0, m) = 1.0;
    for (int q = 1; q <= m; ++q) {
      binom(q, m) = (q == m) ? 1.0 : binom(q - 1, m - 1) + binom(q, m - 1);
    }
  }

  const double denom = static_cast<double>((std::int64_t{1} << n_qubits) - 1);
  const auto tau = [&](int j) {
    return static_cast<double>(std::int64_t{1} << (n_qubits - 1 - j)) / denom;
  };
  const auto powers = [&](double base) {
    Eigen::VectorXd pw(width);
    pw[0] = 1.0;
    for (int m = 1; m < width; ++m) pw[m] = pw[m - 1] * base;
    return pw;
  };

  MatrixProductState mps;
  mps.cores.resize(static_cast<std::size_t>(n_qubits));

  if (n_qubits == 1) {
    auto& core = mps.cores[0];
    for (int s = 0; s < 2; ++s) {
      const Eigen::VectorXd pw = powers(tau(0) * s);
      core[s] = Eigen::MatrixXd::Constant(1, 1, mono.dot(pw));
    }
  } else {
    auto& head = mps.cores.front();
    for (int s = 0; s < 2; ++s) {
      head[s] = powers(tau(0) * s).transpose();  // 1 x (p+1)
    }
    for (int j = 1; j < n_qubits - 1; ++j) {
      auto& core = mps.cores[static_cast<std::size_t>(j)];
      for (int s = 0; s < 2; ++s) {
        const Eigen::VectorXd pw = powers(tau(j) * s);
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(width, width);
        for (int q = 0; q < width; ++q) {
          for (int mm = q; mm < width; ++mm) {
            m(q, mm) = binom(q, mm) * pw[mm - q];
          }
        }
        core[s] = std::move(m);
      }
    }
    auto& tail = mps.cores.back();
    for (int s = 0; s < 2; ++s) {
      const Eigen::VectorXd pw = powers(tau(n_qubits - 1) * s);
      Eigen::VectorXd col = Eigen::VectorXd::Zero(width);
      for (int q = 0; q < width; ++q) {
        for (int mm = q; mm < width; ++mm) {
          col[q] += mono[mm] * binom(q, mm) * pw[mm - q];
        }
      }
      tail[s] = col;
    }
  }

  mps.validate();
  const double norm = mps_norm(mps);
  if (!std::isfinite(norm)) {
    throw Error(ErrorCode::NonFinite, "polynomial norm overflows on this grid");
  }
  if (!(norm > 1e-154)) {
    throw Error(ErrorCode::ZeroFunction, "polynomial vanishes on the grid");
  }
  auto& last = mps.cores.back();
  last[0] /= norm;
  last[1] /= norm;
  mps.canonical = Canonical::None;
  return mps;
}

double mps_inner(const MatrixProductState& a, const MatrixProductState& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw Error(ErrorCode::DimensionMismatch,
                "inner product of " + std::to_string(a.n_qubits()) + " and " +
                    std::to_string(b.n_qubits()) + " qubit states");
  }
  Eigen::MatrixXd env = Eigen::MatrixXd::Ones(1, 1);
  for (int j = 0; j < a.n_qubits(); ++j) {
    const auto& ca = a.cores[static_cast<std::size_t>(j)];
    const auto& cb = b.cores[static_cast<std::size_t>(j)];
    env = ca[0].transpose() * env * cb[0] + ca[1].transpose() * env * cb[1];
  }
  return env(0, 0);
}

double mps_norm(const MatrixProductState& mps) {
  return std::sqrt(std::max(mps_inner(mps, mps), 0.0));
}

}  // namespace fmps
