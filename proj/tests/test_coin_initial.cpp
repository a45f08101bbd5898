#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "qwalk/coin.hpp"
#include "qwalk/initial_state.hpp"

using namespace qwalk;
constexpr double kPi = std::numbers::pi;

namespace {

cplx det2(const Unitary2& u) {
  return u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
}

}  // namespace

TEST_CASE("rotation sub-coin limits") {
  const Unitary2 z = make_sub_coin({0.0, 0.0, 0.0});
  CHECK(std::abs(z.at(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(z.at(1, 1) + 1.0) < 1e-15);
  CHECK(std::abs(z.at(0, 1)) < 1e-15);

  const Unitary2 x = make_sub_coin({kPi / 2, 0.0, 0.0});
  CHECK(std::abs(x.at(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(x.at(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(x.at(0, 0)) < 1e-15);

  const Unitary2 h = make_sub_coin({kPi / 4, 0.0, 0.0});
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(h.at(0, 0) - s) < 1e-15);
  CHECK(std::abs(h.at(0, 1) - s) < 1e-15);
  CHECK(std::abs(h.at(1, 0) - s) < 1e-15);
  CHECK(std::abs(h.at(1, 1) + s) < 1e-15);
}

TEST_CASE("Pauli decomposition cos(theta) sigma_Z + sin(theta) sigma_X") {
  for (int i = 0; i < 100; ++i) {
    const double theta = kPi / 2 * i / 99.0;
    const Unitary2 u = make_sub_coin({theta, 0.0, 0.0});
    const double c = std::cos(theta), s = std::sin(theta);
    CHECK(std::abs(u.at(0, 0) - c) < 1e-15);
    CHECK(std::abs(u.at(0, 1) - s) < 1e-15);
    CHECK(std::abs(u.at(1, 0) - s) < 1e-15);
    CHECK(std::abs(u.at(1, 1) + c) < 1e-15);
  }
}

TEST_CASE("sub-coin is unitary with det -1 over random angles") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> a(0.0, 2 * kPi);
  for (int i = 0; i < 50; ++i) {
    const Unitary2 u = make_sub_coin({a(rng), a(rng), a(rng)});
    CHECK(is_unitary(u));
    CHECK(std::abs(det2(u) + 1.0) < 1e-14);
  }
}

TEST_CASE("composite coin") {
  const Unitary4 zz = make_coin(CoinSpec::rotation(0.0, 0.0));
  const double diag[4] = {1.0, -1.0, -1.0, 1.0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(std::abs(zz.at(r, c) - (r == c ? diag[r] : 0.0)) < 1e-15);

  const Unitary4 hh = make_coin(CoinSpec::rotation(kPi / 4, kPi / 4));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(std::abs(hh.at(r, c)) == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> a(0.0, kPi / 2);
  for (int i = 0; i < 20; ++i) {
    const double theta = a(rng), gamma = a(rng);
    const CoinSpec spec = CoinSpec::rotation(theta, gamma);
    const Unitary4 c = make_coin(spec);
    // <00|C|00> = cos(theta) cos(gamma), <01|C|00> = cos(theta) sin(gamma)
    CHECK(std::abs(c.at(kC00, kC00) - std::cos(theta) * std::cos(gamma)) <
          1e-14);
    CHECK(std::abs(c.at(kC01, kC00) - std::cos(theta) * std::sin(gamma)) <
          1e-14);
    // exact tensor consistency
    const Unitary4 t = tensor2(make_sub_coin(spec.sub1), make_sub_coin(spec.sub2));
    for (int j = 0; j < 16; ++j) CHECK(c.m[j] == t.m[j]);
  }
}

TEST_CASE("initial families") {
  const WalkerState sep = build_initial(InitialStateSpec::psi1(0.0));
  CHECK(sep.step == 0);
  CHECK(std::abs(sep.site(0)[kC00] - 1.0) < 1e-15);

  const WalkerState bell = build_initial(InitialStateSpec::psi1(kPi / 4));
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(bell.site(0)[kC00] - s) < 1e-15);
  CHECK(std::abs(bell.site(0)[kC11] - s) < 1e-15);
  CHECK(std::abs(bell.site(0)[kC01]) < 1e-15);

  // psi3 at beta = 0 collapses to psi1(eta, 0): the relative phase only
  // multiplies the sin(beta) components, which vanish.
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> a(0.0, kPi / 2);
  for (int i = 0; i < 10; ++i) {
    const double eta = a(rng);
    const Vec4 v1 = initial_coin_vector(InitialStateSpec::psi1(eta, 0.0));
    const Vec4 v3 =
        initial_coin_vector(InitialStateSpec::psi3(a(rng), eta, 0.0, a(rng)));
    for (int z = 0; z < 4; ++z) CHECK(std::abs(v1[z] - v3[z]) < 1e-15);
  }

  // normalization over a random grid
  for (int i = 0; i < 50; ++i) {
    const InitialStateSpec spec =
        InitialStateSpec::psi3(a(rng), a(rng), a(rng), a(rng));
    CHECK(std::abs(build_initial(spec).norm_sq() - 1.0) < 1e-15);
  }
}

TEST_CASE("initial entanglement") {
  CHECK(initial_entanglement(InitialStateSpec::psi1(0.0)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  for (double phi : {0.0, kPi}) {
    CHECK(initial_entanglement(InitialStateSpec::psi1(kPi / 4, phi)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(initial_entanglement(InitialStateSpec::psi2(kPi / 4, phi)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  // psi2(pi/8): lambda = cos^2(pi/8)
  const double lambda = std::cos(kPi / 8) * std::cos(kPi / 8);
  const double expect =
      -lambda * std::log2(lambda) - (1 - lambda) * std::log2(1 - lambda);
  CHECK(initial_entanglement(InitialStateSpec::psi2(kPi / 8)) ==
        doctest::Approx(expect).epsilon(1e-12));

  // symmetry under eta -> pi/2 - eta
  for (double eta : {0.1, 0.3, 0.6, 1.2}) {
    CHECK(initial_entanglement(InitialStateSpec::psi1(eta)) ==
          doctest::Approx(
              initial_entanglement(InitialStateSpec::psi1(kPi / 2 - eta)))
              .epsilon(1e-12));
  }
}
