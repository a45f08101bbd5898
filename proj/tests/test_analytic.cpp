#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qwalk/analytic.hpp"
#include "qwalk/evolution.hpp"

using namespace qwalk;
constexpr double kPi = std::numbers::pi;

namespace {

double residual(const Unitary4& u, const Vec4& v, cplx lambda) {
  const Vec4 uv = mat_apply(u, v);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += std::norm(uv[i] - lambda * v[i]);
  return std::sqrt(acc);
}

}  // namespace

TEST_CASE("momentum operator") {
  const CoinSpec spec = CoinSpec::rotation(kPi / 3, kPi / 7);
  const Unitary4 at_zero = momentum_operator(spec, 0.0);
  const Unitary4 plain = make_coin(spec);
  for (int i = 0; i < 16; ++i) CHECK(std::abs(at_zero.m[i] - plain.m[i]) < 1e-15);

  // theta = gamma = 0: diag(e^{ik}, -1, -1, e^{-ik})
  const double k = 1.234;
  const Unitary4 d = momentum_operator(CoinSpec::rotation(0, 0), k);
  CHECK(std::abs(d.at(0, 0) - std::polar(1.0, k)) < 1e-14);
  CHECK(std::abs(d.at(1, 1) + 1.0) < 1e-14);
  CHECK(std::abs(d.at(2, 2) + 1.0) < 1e-14);
  CHECK(std::abs(d.at(3, 3) - std::polar(1.0, -k)) < 1e-14);

  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int i = 0; i < 64; ++i)
    CHECK(is_unitary(momentum_operator(spec, u(rng))));
}

TEST_CASE("sub-coin spectrum") {
  // k = 0: lambda = +-1
  const SubCoinSpectrum s0 = sub_coin_spectrum(0.7, 0.0);
  CHECK(std::abs(s0.lambda_plus - 1.0) < 1e-14);
  CHECK(std::abs(s0.lambda_minus + 1.0) < 1e-14);

  // k = pi: lambda = +-sin(theta) + i cos(theta)
  const double theta = 0.9;
  const SubCoinSpectrum spi = sub_coin_spectrum(theta, kPi);
  CHECK(std::abs(spi.lambda_plus - cplx{std::sin(theta), std::cos(theta)}) <
        1e-14);
  CHECK(std::abs(spi.lambda_minus - cplx{-std::sin(theta), std::cos(theta)}) <
        1e-14);

  // theta = pi/2: lambda = +-1 for all k
  for (double k : {0.3, 1.7, 4.4}) {
    const SubCoinSpectrum sx = sub_coin_spectrum(kPi / 2, k);
    CHECK(std::abs(sx.lambda_plus - 1.0) < 1e-13);
    CHECK(std::abs(sx.lambda_minus + 1.0) < 1e-13);
  }

  // lambda_plus * lambda_minus = -1 (det of the half operator)
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int i = 0; i < 50; ++i) {
    const SubCoinSpectrum s = sub_coin_spectrum(u(rng) / 4.0, u(rng));
    CHECK(std::abs(s.lambda_plus * s.lambda_minus + 1.0) < 1e-13);
    CHECK(std::abs(std::abs(s.lambda_plus) - 1.0) < 1e-13);
  }
}

TEST_CASE("walk spectrum residuals on a grid") {
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const double theta = kPi / 2 * (i + 0.5) / 32.0;
      const double k = 2 * kPi * j / 32.0;
      const CoinSpec spec = CoinSpec::rotation(theta, theta * 0.7);
      const LimitSpectrum spec_k = walk_spectrum(spec, k);
      const Unitary4 u = momentum_operator(spec, k);
      for (int z = 0; z < 4; ++z) {
        CHECK(std::abs(std::abs(spec_k.Lambda[z]) - 1.0) < 1e-12);
        CHECK(residual(u, spec_k.V[z], spec_k.Lambda[z]) < 1e-11);
      }
      CHECK(std::abs(spec_k.Lambda[0] - spec_k.lambda1[0] * spec_k.lambda2[0]) <
            1e-14);
      // identical sub-coins: the mixed products form the degenerate pair
      const LimitSpectrum ident =
          walk_spectrum(CoinSpec::rotation(theta, theta), k);
      CHECK(std::abs(ident.Lambda[1] - ident.Lambda[2]) < 1e-13);
      CHECK(std::abs(std::abs(ident.Lambda[1]) - 1.0) < 1e-12);
    }
  CHECK_THROWS_AS((void)walk_spectrum({{0.3, 0.1, 0.0}, {0.3, 0.0, 0.0}}, 1.0),
                  std::domain_error);
}

TEST_CASE("Fourier evolution equals position-space evolution") {
  // T = 0 recovers the initial distribution
  const WalkParams p0{CoinSpec::rotation(kPi / 4, kPi / 4),
                      InitialStateSpec::psi1(kPi / 4), 0};
  const PddSnapshot f0 = evolve_fourier(p0, 8);
  CHECK(f0.at(0) == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<WalkParams> cases = {
      {CoinSpec::rotation(kPi / 4, kPi / 4), InitialStateSpec::psi1(kPi / 4), 10},
      {CoinSpec::rotation(kPi / 3, kPi / 5), InitialStateSpec::psi2(kPi / 8, kPi / 2), 50},
      {CoinSpec::rotation(0.3, 1.2), InitialStateSpec::psi3(0.4, 0.9, 0.7, 1.1), 33},
      {{{0.8, 0.5, 0.3}, {1.1, 0.2, 0.9}}, InitialStateSpec::psi1(0.6, 0.2), 25},
      {CoinSpec::rotation(1.4, 1.4), InitialStateSpec::psi2(0.2, 0.0), 40},
  };
  for (const auto& params : cases) {
    const PddSnapshot sim = run(params).final_pdd();
    const PddSnapshot fou = evolve_fourier(params, default_num_k(params.steps));
    double worst = 0.0;
    for (int x = -params.steps; x <= params.steps; ++x)
      worst = std::max(worst, std::abs(sim.at(x) - fou.at(x)));
    CHECK(worst < 1e-10);
  }

  CHECK_THROWS_AS((void)evolve_fourier(p0, 2), std::invalid_argument);
  const WalkParams p10{CoinSpec::rotation(0.5, 0.5),
                       InitialStateSpec::psi1(0.5), 10};
  CHECK_THROWS_AS((void)evolve_fourier(p10, 20), std::invalid_argument);
}

TEST_CASE("beta adapter") {
  // psi1: (beta1, 0, 0, beta4); psi2: (0, beta2, beta3, 0) with
  // beta2 = cos(alpha), beta3 = e^{i phi} sin(alpha).
  const BetaVector b1 = BetaVector::from_coin_vector(
      initial_coin_vector(InitialStateSpec::psi1(0.4, 0.3)));
  CHECK(std::abs(b1.beta[0] - std::cos(0.4)) < 1e-15);
  CHECK(std::abs(b1.beta[3] - std::polar(1.0, 0.3) * std::sin(0.4)) < 1e-15);
  CHECK(std::abs(b1.beta[1]) < 1e-15);
  CHECK(std::abs(b1.beta[2]) < 1e-15);

  const BetaVector b2 = BetaVector::from_coin_vector(
      initial_coin_vector(InitialStateSpec::psi2(0.7, 1.1)));
  CHECK(std::abs(b2.beta[1] - std::cos(0.7)) < 1e-15);
  CHECK(std::abs(b2.beta[2] - std::polar(1.0, 1.1) * std::sin(0.7)) < 1e-15);
  CHECK(std::abs(b2.beta[0]) < 1e-15);
  CHECK(std::abs(b2.beta[3]) < 1e-15);
}

TEST_CASE("limiting distribution closed form") {
  // Bell psi1: p(0) = 3 - 2 sqrt(2)
  const BetaVector bell = BetaVector::from_coin_vector(
      initial_coin_vector(InitialStateSpec::psi1(kPi / 4)));
  const LimitingDistribution d = limiting_pdd(kPi / 4, bell);
  CHECK(d.at(0) == doctest::Approx(3.0 - 2.0 * std::numbers::sqrt2).epsilon(1e-12));
  CHECK(d.mu1 * d.mu2 == doctest::Approx(1.0).epsilon(1e-14));

  // mu1 monotone decreasing on (0, pi/2)
  double prev = 2.0;
  for (int i = 1; i < 40; ++i) {
    const double theta = kPi / 2 * i / 40.0;
    const double mu1 = (1.0 - std::sin(theta)) / std::cos(theta);
    CHECK(mu1 < prev);
    prev = mu1;
  }

  // beta2 = beta3 = 0 with |beta1| = |beta4|: symmetric tails
  for (int x = 1; x <= 6; ++x)
    CHECK(d.at(x) == doctest::Approx(d.at(-x)).epsilon(1e-12));

  // beta1 = beta4 = 0: brackets coincide for any (beta2, beta3)
  const BetaVector mid = BetaVector::from_coin_vector(
      initial_coin_vector(InitialStateSpec::psi2(0.53, 0.91)));
  const LimitingDistribution dm = limiting_pdd(0.8, mid);
  for (int x = 1; x <= 6; ++x)
    CHECK(dm.at(x) == doctest::Approx(dm.at(-x)).epsilon(1e-12));

  // geometric decay with ratio mu1^4 on both sides
  for (int x = 1; x <= 5; ++x) {
    CHECK(d.at(x + 1) / d.at(x) ==
          doctest::Approx(std::pow(d.mu1, 4.0)).epsilon(1e-10));
    CHECK(dm.at(-x - 1) / dm.at(-x) ==
          doctest::Approx(std::pow(dm.mu1, 4.0)).epsilon(1e-10));
  }

  CHECK_THROWS_AS((void)limiting_pdd(0.0, bell), std::domain_error);
  CHECK_THROWS_AS((void)limiting_pdd(kPi / 2, bell), std::domain_error);

  // small-theta qualitative limits: p(0) vanishes for beta2=beta3=0 and
  // dominates for beta1=beta4=0
  const LimitingDistribution near0_psi1 = limiting_pdd(0.05, bell);
  const LimitingDistribution near0_psi2 = limiting_pdd(0.05, mid);
  CHECK(near0_psi1.at(0) < 0.01);
  CHECK(near0_psi2.at(0) > 0.9);
}

TEST_CASE("limit matches the long-time average") {
  const WalkParams params{CoinSpec::rotation(kPi / 4, kPi / 4),
                          InitialStateSpec::psi1(kPi / 4), 200};
  const Trajectory traj = run(params);
  const BetaVector beta = BetaVector::from_coin_vector(
      initial_coin_vector(params.init));
  const LimitingDistribution d = limiting_pdd(kPi / 4, beta);
  for (int x : {0, 1, 2}) {
    double avg = 0.0;
    for (int t = 190; t <= 200; ++t)
      avg += traj.snapshots[static_cast<size_t>(t)].at(x);
    avg /= 11.0;
    CHECK(avg == doctest::Approx(d.at(x)).epsilon(x == 0 ? 1e-2 : 5e-2));
  }
}
