#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

#include "fmps/mps.hpp"
#include "fmps/rng.hpp"

using namespace fmps;

namespace {

const Domain kUnit{0.0, 1.0};
const Domain kSym{-4.0, 4.0};

// reference bond profiles from an independent dense-SVD script
const std::vector<Eigen::Index> kGauss10Bonds = {2, 4, 8, 9, 8, 7, 6, 4, 2};
constexpr double kGauss12Chi2Fidelity = 0.999347077595122;

// test-local unfolding + rank oracle, independent of the library's TT path
Eigen::MatrixXd unfold(const Eigen::VectorXd& v, int cut) {
  const Eigen::Index rows = Eigen::Index{1} << cut;
  const Eigen::Index cols = v.size() / rows;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = v[r * cols + c];
  }
  return m;
}

Eigen::Index dense_rank(const Eigen::VectorXd& v, int cut) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(unfold(v, cut)).singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > 1e-12 * sv[0]) ++rank;
  return rank;
}

MatrixProductState product_state(int n, int bit) {
  MatrixProductState mps;
  mps.cores.resize(static_cast<std::size_t>(n));
  for (auto& core : mps.cores) {
    core[0] = Eigen::MatrixXd::Constant(1, 1, bit == 0 ? 1.0 : 0.0);
    core[1] = Eigen::MatrixXd::Constant(1, 1, bit == 0 ? 0.0 : 1.0);
  }
  return mps;
}

MatrixProductState random_mps(int n, Eigen::Index chi, Rng& rng) {
  MatrixProductState mps;
  mps.cores.resize(static_cast<std::size_t>(n));
  Eigen::Index left = 1;
  for (int j = 0; j < n; ++j) {
    const Eigen::Index full_left = Eigen::Index{1} << std::min(j, 30);
    const Eigen::Index full_right = Eigen::Index{1} << std::min(n - j - 1, 30);
    const Eigen::Index right = j == n - 1 ? 1 : std::min({chi, 2 * left, full_right});
    (void)full_left;
    auto& core = mps.cores[static_cast<std::size_t>(j)];
    for (int s = 0; s < 2; ++s) {
      core[s].resize(left, right);
      for (Eigen::Index a = 0; a < left; ++a) {
        for (Eigen::Index c = 0; c < right; ++c) core[s](a, c) = rng.normal();
      }
    }
    left = right;
  }
  const double norm = mps_norm(mps);
  mps.cores.back()[0] /= norm;
  mps.cores.back()[1] /= norm;
  return mps;
}

double cheb_eval_reference(const ChebyshevPoly& poly, double x) {
  // direct cos(m acos u) evaluation, independent of Clenshaw
  const double u = (2.0 * x - (poly.domain.lo + poly.domain.hi)) / poly.domain.width();
  const double theta = std::acos(std::min(1.0, std::max(-1.0, u)));
  double acc = 0.0;
  for (int m = 0; m < static_cast<int>(poly.coeffs.size()); ++m) {
    acc += poly.coeffs[m] * std::cos(m * theta);
  }
  return acc;
}

}  // namespace

TEST_CASE("uniform state factorizes with every bond equal to 1") {
  const auto state = discretize(FunctionSpec::parse("constant"), kUnit, 3);
  const auto mps = from_state_vector(state);
  for (const auto d : mps.bond_dims()) CHECK(d == 1);
  CHECK(is_left_canonical(mps));
}

TEST_CASE("linear ramp has exact Schmidt rank 2 at every cut") {
  const auto state = discretize(FunctionSpec::parse("linear-ramp"), kUnit, 6);
  const auto mps = from_state_vector(state);
  const auto dims = mps.bond_dims();
  for (int k = 1; k <= 5; ++k) {
    CHECK(dims[static_cast<std::size_t>(k)] == 2);
    CHECK(dense_rank(state.values, k) == 2);
  }
}

TEST_CASE("gaussian N=10 bond profile matches the dense rank oracle") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 10);
  const auto mps = from_state_vector(state);
  const auto dims = mps.bond_dims();
  REQUIRE(dims.size() == 11);
  for (int k = 1; k <= 9; ++k) {
    CHECK(dims[static_cast<std::size_t>(k)] == kGauss10Bonds[static_cast<std::size_t>(k - 1)]);
    CHECK(dims[static_cast<std::size_t>(k)] == dense_rank(state.values, k));
  }
  CHECK(mps.max_bond() < 32);
}

TEST_CASE("factorization round-trips every family at N=8") {
  const std::vector<std::pair<std::string, Domain>> cases = {
      {"gaussian:mu=0,sigma=1", kSym},
      {"sine:omega=2", Domain{0.0, 3.0}},
      {"exponential:lambda=1", kUnit},
      {"lognormal:mu=0,sigma=1", Domain{0.05, 6.0}},
      {"polynomial:c0=1,c1=-2,c3=0.5", kUnit},
      {"linear-ramp", kUnit},
      {"constant", kUnit},
      {"step", kUnit},
  };
  for (const auto& [text, domain] : cases) {
    const auto state = discretize(FunctionSpec::parse(text), domain, 8);
    const auto mps = from_state_vector(state);
    CHECK(is_left_canonical(mps));
    const Eigen::VectorXd back = to_state_vector(mps);
    CHECK((back - state.values).norm() <= 1e-10);
  }
}

TEST_CASE("to_state_vector of hand-built product cores gives the uniform state") {
  MatrixProductState mps;
  mps.cores.resize(3);
  const double isq2 = 1.0 / std::sqrt(2.0);
  for (auto& core : mps.cores) {
    core[0] = Eigen::MatrixXd::Constant(1, 1, isq2);
    core[1] = Eigen::MatrixXd::Constant(1, 1, isq2);
  }
  const Eigen::VectorXd v = to_state_vector(mps);
  for (int i = 0; i < 8; ++i) {
    CHECK(v[i] == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
  }
}

TEST_CASE("to_state_vector respects its qubit cap") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 6);
  const auto mps = from_state_vector(state);
  CHECK_THROWS_AS(to_state_vector(mps, 4), Error);
}

TEST_CASE("truncation: exact rank-2 states survive chi=2 unchanged") {
  const auto state = discretize(FunctionSpec::parse("linear-ramp"), kUnit, 6);
  const auto mps = from_state_vector(state);
  const auto result = truncate(mps, TruncationPolicy{2, 0.0});
  CHECK(std::abs(mps_inner(mps, result.mps) - 1.0) <= 1e-10);
  CHECK(result.discarded_weight <= 1e-20);
}

TEST_CASE("truncation at or above the current rank is a no-op") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto mps = from_state_vector(state);
  const auto result = truncate(mps, TruncationPolicy{mps.max_bond(), 0.0});
  CHECK(std::abs(mps_inner(mps, result.mps) - 1.0) <= 1e-10);
}

TEST_CASE("rank-2 truncation of the gaussian matches the reference fidelity") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 12);
  const auto mps = from_state_vector(state);
  const auto result = truncate(mps, TruncationPolicy{2, 0.0});
  const double fidelity = mps_inner(mps, result.mps);
  CHECK(fidelity > 0.9);
  CHECK(fidelity <= 1.0 + 1e-12);
  CHECK(fidelity == doctest::Approx(kGauss12Chi2Fidelity).epsilon(1e-8));
  CHECK(result.discarded_weight > 0.0);
}

TEST_CASE("truncation fidelity is never below sqrt(1 - discarded weight)") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 10);
  const auto exact = from_state_vector(state);
  for (const Eigen::Index chi : {1, 2, 4}) {
    const auto result = truncate(exact, TruncationPolicy{chi, 0.0});
    CHECK(std::abs(mps_norm(result.mps) - 1.0) <= 1e-12);
    const double fidelity = mps_inner(exact, result.mps);
    CHECK(fidelity >= std::sqrt(std::max(0.0, 1.0 - result.discarded_weight)) - 1e-12);
  }
}

TEST_CASE("from_state_vector honors the numerical-rank threshold") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto coarse = mps_from_vector(state.values, 0.5);  // keep only dominant directions
  CHECK(coarse.max_bond() < from_state_vector(state).max_bond());
  // still a sensible approximation after renormalizing the contraction
  Eigen::VectorXd v = to_state_vector(coarse);
  v /= v.norm();
  CHECK(std::abs(v.dot(state.values)) > 0.85);
}

TEST_CASE("chi=1 truncation yields a product state") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto result = truncate(from_state_vector(state), TruncationPolicy{1, 0.0});
  for (const auto d : result.mps.bond_dims()) CHECK(d == 1);
  CHECK(std::abs(mps_norm(result.mps) - 1.0) <= 1e-12);
}

TEST_CASE("poly_to_mps: degree 0 gives bond dimension 1 everywhere") {
  const auto poly = fit_chebyshev(FunctionSpec::parse("constant:c=2"), kUnit, 0);
  const auto mps = poly_to_mps(poly, 5);
  for (const auto d : mps.bond_dims()) CHECK(d == 1);
  const Eigen::VectorXd v = to_state_vector(mps);
  for (int i = 0; i < 32; ++i) {
    CHECK(v[i] == doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-12));
  }
}

TEST_CASE("poly_to_mps: the linear ramp is reproduced with bonds <= 2") {
  const auto poly = fit_chebyshev(FunctionSpec::parse("linear-ramp"), kUnit, 1);
  const auto mps = poly_to_mps(poly, 5);
  const auto dims = mps.bond_dims();
  for (int k = 1; k < 5; ++k) CHECK(dims[static_cast<std::size_t>(k)] <= 2);
  const auto direct = discretize(FunctionSpec::parse("linear-ramp"), kUnit, 5);
  CHECK((to_state_vector(mps) - direct.values).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("poly_to_mps: cubic contraction matches direct grid evaluation") {
  const auto spec = FunctionSpec::parse("polynomial:c0=1,c1=-2,c3=0.5");
  const auto poly = fit_chebyshev(spec, Domain{-1.0, 2.0}, 3);
  const auto mps = poly_to_mps(poly, 8);
  const auto dims = mps.bond_dims();
  for (int k = 1; k < 8; ++k) CHECK(dims[static_cast<std::size_t>(k)] <= 4);

  Eigen::VectorXd direct(256);
  for (int i = 0; i < 256; ++i) {
    direct[i] = cheb_eval_reference(poly, grid_point(Domain{-1.0, 2.0}, 8, i));
  }
  direct /= direct.norm();
  CHECK((to_state_vector(mps) - direct).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("poly encoding never exceeds degree+1 and TT-SVD never beats it") {
  const auto exp_spec = FunctionSpec::parse("exponential");
  for (const int p : {0, 2, 4, 6}) {
    for (const int n : {4, 8, 12}) {
      const auto poly = fit_chebyshev(exp_spec, kUnit, p);
      const auto mps = poly_to_mps(poly, n);
      const auto dims = mps.bond_dims();
      const Eigen::VectorXd v = to_state_vector(mps);
      for (int k = 1; k < n; ++k) {
        CHECK(dims[static_cast<std::size_t>(k)] <= p + 1);
        CHECK(dense_rank(v, k) <= dims[static_cast<std::size_t>(k)]);
      }
    }
  }
}

TEST_CASE("poly_to_mps rejects degrees past the cap and zero polynomials") {
  ChebyshevPoly poly;
  poly.domain = kUnit;
  poly.coeffs = Eigen::VectorXd::Zero(66);
  poly.coeffs[65] = 1.0;
  CHECK_THROWS_AS(poly_to_mps(poly, 6), Error);

  ChebyshevPoly zero;
  zero.domain = kUnit;
  zero.coeffs = Eigen::VectorXd::Zero(3);
  try {
    poly_to_mps(zero, 6);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroFunction);
  }
}

TEST_CASE("mps_inner basics") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto mps = from_state_vector(state);
  CHECK(std::abs(mps_inner(mps, mps) - 1.0) <= 1e-12);

  CHECK(mps_inner(product_state(4, 0), product_state(4, 1)) == 0.0);

  CHECK_THROWS_AS(mps_inner(product_state(3, 0), product_state(4, 0)), Error);
}

TEST_CASE("mps_inner agrees with the dense inner product") {
  for (const int n : {10, 14}) {
    const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, n);
    const auto exact = from_state_vector(state);
    const auto trunc = truncate(exact, TruncationPolicy{2, 0.0}).mps;
    const double fast = mps_inner(exact, trunc);
    const double dense = to_state_vector(exact).dot(to_state_vector(trunc));
    CHECK(std::abs(fast - dense) <= 1e-10);
  }
}

TEST_CASE("schmidt spectra: product, Bell, and rank-2 states") {
  const auto uniform = discretize(FunctionSpec::parse("constant"), kUnit, 4);
  for (int k = 1; k <= 3; ++k) {
    const Eigen::VectorXd sv = schmidt_spectrum(uniform, k);
    CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-12));
    if (sv.size() > 1) CHECK(sv[1] <= 1e-12);
  }

  Eigen::VectorXd bell = Eigen::VectorXd::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const Eigen::VectorXd sv = schmidt_spectrum(bell, 1);
  REQUIRE(sv.size() == 2);
  CHECK(sv[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sv[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  const auto ramp = discretize(FunctionSpec::parse("linear-ramp"), kUnit, 6);
  const auto mps = from_state_vector(ramp);
  for (int k = 1; k <= 5; ++k) {
    for (const Eigen::VectorXd& spec :
         {schmidt_spectrum(ramp, k), schmidt_spectrum(mps, k)}) {
      int above = 0;
      for (Eigen::Index i = 0; i < spec.size(); ++i) {
        if (spec[i] > 1e-10) ++above;
      }
      CHECK(above == 2);
    }
  }
}

TEST_CASE("schmidt spectra square-sum to one and agree between paths") {
  const std::vector<std::pair<std::string, Domain>> cases = {
      {"gaussian", kSym},
      {"sine:omega=3", Domain{0.0, 2.0}},
      {"step", kUnit},
  };
  for (const auto& [text, domain] : cases) {
    const auto state = discretize(FunctionSpec::parse(text), domain, 8);
    const auto mps = from_state_vector(state);
    for (int k = 1; k <= 7; ++k) {
      const Eigen::VectorXd dense = schmidt_spectrum(state, k);
      const Eigen::VectorXd via_mps = schmidt_spectrum(mps, k);
      CHECK(std::abs(dense.squaredNorm() - 1.0) <= 1e-10);
      CHECK(std::abs(via_mps.squaredNorm() - 1.0) <= 1e-10);
      const Eigen::Index common = std::min(dense.size(), via_mps.size());
      for (Eigen::Index i = 0; i < common; ++i) {
        CHECK(std::abs(dense[i] - via_mps[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("schmidt_spectrum rejects out-of-range cuts") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 4);
  CHECK_THROWS_AS(schmidt_spectrum(state, 0), Error);
  CHECK_THROWS_AS(schmidt_spectrum(state, 4), Error);
}

TEST_CASE("greedy truncation beats random MPS of the same rank") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto exact = from_state_vector(state);
  const double best = mps_inner(exact, truncate(exact, TruncationPolicy{2, 0.0}).mps);
  Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const auto candidate = random_mps(8, 2, rng);
    CHECK(std::abs(mps_inner(exact, candidate)) <= best + 1e-12);
  }
}

TEST_CASE("left_canonicalize preserves the state and the identity holds") {
  const auto spec = FunctionSpec::parse("gaussian");
  const auto poly = fit_chebyshev(spec, kSym, 5);
  const auto encoded = poly_to_mps(poly, 8);
  CHECK(!is_left_canonical(encoded));
  const auto canon = left_canonicalize(encoded);
  CHECK(is_left_canonical(canon));
  CHECK((to_state_vector(canon) - to_state_vector(encoded)).norm() <= 1e-10);

  const auto trunc = truncate(from_state_vector(discretize(spec, kSym, 8)),
                              TruncationPolicy{3, 0.0});
  const auto canon2 = left_canonicalize(trunc.mps);
  CHECK(is_left_canonical(canon2));
  CHECK((to_state_vector(canon2) - to_state_vector(trunc.mps)).norm() <= 1e-10);
}

TEST_CASE("mps_from_vector validates input") {
  Eigen::VectorXd bad(4);
  bad << 1.0, 0.0, std::nan(""), 0.0;
  CHECK_THROWS_AS(mps_from_vector(bad), Error);
  Eigen::VectorXd odd(3);
  odd << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(mps_from_vector(odd), Error);
}
