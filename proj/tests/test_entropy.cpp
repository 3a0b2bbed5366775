#include <doctest.h>

#include <cmath>

#include "fmps/entropy.hpp"

using namespace fmps;

namespace {

const Domain kUnit{0.0, 1.0};
const Domain kSym{-4.0, 4.0};

// reference values from an independent dense-evaluation script
constexpr double kSkewedPairEntropy = 0.4689955935892812;  // spectrum (sqrt .9, sqrt .1)
constexpr double kGauss12SMax = 0.9990446032823904;

Eigen::VectorXd make_spectrum(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("von_neumann on closed-form spectra") {
  CHECK(von_neumann(make_spectrum({1.0})) == 0.0);
  const double isq2 = 1.0 / std::sqrt(2.0);
  CHECK(von_neumann(make_spectrum({isq2, isq2})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(von_neumann(make_spectrum({std::sqrt(0.9), std::sqrt(0.1)})) ==
        doctest::Approx(kSkewedPairEntropy).epsilon(1e-12));
  CHECK_THROWS_AS(von_neumann(make_spectrum({1.0, 0.5})), Error);
}

TEST_CASE("entropy profile of flat and rank-2 states") {
  const auto uniform = discretize(FunctionSpec::parse("constant"), kUnit, 6);
  const auto up = entropy_profile(uniform);
  CHECK(up.s_max <= 1e-12);  // zero up to the rounding of the top Schmidt value
  for (const auto& c : up.per_cut) CHECK(c.entropy_bits <= 1e-12);

  const auto ramp = discretize(FunctionSpec::parse("linear-ramp"), kUnit, 8);
  const auto rp = entropy_profile(ramp);
  CHECK(rp.per_cut.size() == 7);
  for (const auto& c : rp.per_cut) CHECK(c.entropy_bits <= 1.0 + 1e-12);
}

TEST_CASE("gaussian profile: dense and MPS paths agree, bond bound holds") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 12);
  const auto dense = entropy_profile(state);
  const auto mps = from_state_vector(state);
  const auto via_mps = entropy_profile(mps);

  CHECK(dense.s_max == doctest::Approx(kGauss12SMax).epsilon(1e-9));
  CHECK(dense.argmax_cut == 1);
  CHECK(via_mps.s_max == doctest::Approx(dense.s_max).epsilon(1e-9));

  const auto dims = mps.bond_dims();
  for (const auto& c : dense.per_cut) {
    const double cap = std::log2(static_cast<double>(dims[static_cast<std::size_t>(c.cut)]));
    CHECK(c.entropy_bits <= cap + 1e-9);
  }
  CHECK(dense.s_max <= std::log2(static_cast<double>(mps.max_bond())) + 1e-9);
}

TEST_CASE("entropy respects the dimension bound min(k, N-k)") {
  for (const char* text : {"gaussian:lo=-4,hi=4", "sine:omega=5,lo=0,hi=3", "step"}) {
    const auto spec = FunctionSpec::parse(text);
    const Domain domain = spec.preferred_domain().value_or(kUnit);
    const auto profile = entropy_profile(discretize(spec, domain, 10));
    for (const auto& c : profile.per_cut) {
      CHECK(c.entropy_bits >= 0.0);
      CHECK(c.entropy_bits <= std::min(c.cut, 10 - c.cut) + 1e-9);
    }
  }
}

TEST_CASE("entropy profile dense cap") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  CHECK_THROWS_AS(entropy_profile(state, 6), Error);
}

TEST_CASE("entropy is invariant under a global sign flip") {
  const auto state = discretize(FunctionSpec::parse("sine:omega=2"), Domain{0.0, 3.0}, 8);
  const auto flipped = state_from_values(state.domain, Eigen::VectorXd(-state.values));
  const auto a = entropy_profile(state);
  const auto b = entropy_profile(flipped);
  REQUIRE(a.per_cut.size() == b.per_cut.size());
  for (std::size_t i = 0; i < a.per_cut.size(); ++i) {
    CHECK(a.per_cut[i].entropy_bits == doctest::Approx(b.per_cut[i].entropy_bits).epsilon(1e-12));
  }
}

TEST_CASE("pure-state trace distance") {
  const auto f = discretize(FunctionSpec::parse("gaussian"), kSym, 6);
  CHECK(trace_distance_pure(f, f) <= 1e-9);

  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(4);
  e0[0] = 1.0;
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(4);
  e1[1] = 1.0;
  const auto a = state_from_values(kUnit, e0);
  const auto b = state_from_values(kUnit, e1);
  CHECK(trace_distance_pure(a, b) == doctest::Approx(1.0).epsilon(1e-14));

  // overlap 0.8 by construction: g = 0.8 f + 0.6 f_perp
  Eigen::VectorXd g = 0.8 * e0 + 0.6 * e1;
  const auto mixed = state_from_values(kUnit, g);
  CHECK(trace_distance_pure(a, mixed) == doctest::Approx(0.6).epsilon(1e-12));

  CHECK_THROWS_AS(trace_distance_pure(a, discretize(FunctionSpec::parse("gaussian"), kSym, 3)),
                  Error);
}

TEST_CASE("trace distance and overlap are complementary") {
  const auto f = discretize(FunctionSpec::parse("gaussian"), kSym, 10);
  const auto g = discretize(FunctionSpec::parse("sine:omega=1,phase=1.2"), kSym, 10);
  const double ov = inner(f, g);
  const double t = trace_distance_pure(f, g);
  CHECK(t * t + ov * ov == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fannes_audenaert_rhs closed form") {
  CHECK(fannes_audenaert_rhs(0.0, 5) == 0.0);
  CHECK(fannes_audenaert_rhs(0.5, 1) == doctest::Approx(1.0).epsilon(1e-14));
  for (const int n : {1, 3, 8}) {
    CHECK(fannes_audenaert_rhs(1.0, n) ==
          doctest::Approx(std::log2(std::pow(2.0, n) - 1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(fannes_audenaert_rhs(-0.1, 2), Error);
  CHECK_THROWS_AS(fannes_audenaert_rhs(1.1, 2), Error);
  CHECK_THROWS_AS(fannes_audenaert_rhs(0.5, 0), Error);
}

TEST_CASE("check_fannes on identical states is exactly tight at zero") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto profile = entropy_profile(state);
  const auto check = check_fannes(profile, profile, 0.0, 8, 4);
  CHECK(check.lhs == 0.0);
  CHECK(check.rhs == 0.0);
  CHECK(check.pass);
}

TEST_CASE("check_fannes holds for a rank-2 truncation pair") {
  const auto state = discretize(FunctionSpec::parse("gaussian"), kSym, 10);
  const auto exact = from_state_vector(state);
  const auto trunc = truncate(exact, TruncationPolicy{2, 0.0}).mps;
  const auto pf = entropy_profile(exact);
  const auto pg = entropy_profile(trunc);
  const Eigen::VectorXd dense_g = to_state_vector(trunc);
  const double t_reduced = reduced_trace_distance(state.values, dense_g, 5);
  const auto check = check_fannes(pf, pg, t_reduced, 10, 5);
  CHECK(check.pass);
  CHECK(check.slack > 0.0);
  CHECK(check.rhs_full_system >= check.rhs);
}

TEST_CASE("check_fannes synthetic pair: uniform vs basis state") {
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(4);
  e0[0] = 1.0;
  const auto basis = state_from_values(kUnit, e0);
  const auto uniform = discretize(FunctionSpec::parse("constant"), kUnit, 2);
  const auto pf = entropy_profile(uniform);
  const auto pg = entropy_profile(basis);
  const double t = trace_distance_pure(uniform, basis);
  const auto check = check_fannes(pf, pg, t, 2, 1);
  CHECK(check.lhs <= 1e-12);
  CHECK(check.rhs > 0.0);
  CHECK(check.pass);
}

TEST_CASE("reduced trace distance is bounded by the full-state distance") {
  const auto f = discretize(FunctionSpec::parse("gaussian"), kSym, 8);
  const auto exact = from_state_vector(f);
  for (const Eigen::Index chi : {1, 2, 4}) {
    const Eigen::VectorXd g = to_state_vector(truncate(exact, TruncationPolicy{chi, 0.0}).mps);
    const double t_full = trace_distance_from_overlap(f.values.dot(g));
    for (int k = 1; k <= 7; ++k) {
      const double t_red = reduced_trace_distance(f.values, g, k);
      CHECK(t_red <= t_full + 1e-10);
      CHECK(t_red >= -1e-12);
    }
  }
}
