#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/core.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

// Initial coin amplitudes in the convention the closed-form limit formulas
// use: beta[0] <-> |00>, beta[1] <-> |10>, beta[2] <-> |01>, beta[3] <-> |11>.
// The printed convention in the source material is internally inconsistent;
// this is the assignment under which the formulas agree with simulation
// (beta1 = cos eta / beta4 = e^{i phi} sin eta for the psi1 family and
// beta2 = cos alpha / beta3 = e^{i phi} sin alpha for psi2).
struct BetaVector {
  std::array<cplx, 4> beta{};

  static BetaVector from_coin_vector(const Vec4& canonical) {
    BetaVector b;
    b.beta = {canonical[kC00], canonical[kC10], canonical[kC01],
              canonical[kC11]};
    return b;
  }

  double norm_sq() const {
    double acc = 0.0;
    for (const auto& z : beta) acc += std::norm(z);
    return acc;
  }
};

inline cplx pow_int(cplx base, int n) {
  cplx acc = 1.0;
  cplx b = base;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) acc *= b;
    b *= b;
  }
  return acc;
}

inline Unitary4 mat_pow(Unitary4 base, int n) {
  Unitary4 acc = Unitary4::identity();
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) acc = mat_mul(acc, base);
    base = mat_mul(base, base);
  }
  return acc;
}

// U(k) = [diag(e^{ik/2}, e^{-ik/2}) C1] x [diag(e^{ik/2}, e^{-ik/2}) C2]
inline Unitary4 momentum_operator(const CoinSpec& coin, double k) {
  const cplx up = std::polar(1.0, k / 2.0);
  const cplx dn = std::conj(up);
  auto half = [&](const SubCoinSpec& s) {
    Unitary2 u = make_sub_coin(s);
    u.at(0, 0) *= up;
    u.at(0, 1) *= up;
    u.at(1, 0) *= dn;
    u.at(1, 1) *= dn;
    return u;
  };
  return tensor2(half(coin.sub1), half(coin.sub2));
}

struct SubCoinSpectrum {
  cplx lambda_plus, lambda_minus;
  Vec2 v_plus, v_minus;
};

namespace detail {
inline Vec2 eigvec2(const Unitary2& u, cplx lambda, int preferred) {
  const Vec2 a = {u.at(0, 1), lambda - u.at(0, 0)};
  const Vec2 b = {lambda - u.at(1, 1), u.at(1, 0)};
  const double na = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
  const double nb = std::sqrt(std::norm(b[0]) + std::norm(b[1]));
  if (na < 1e-12 && nb < 1e-12) {
    // (Near-)scalar block: any basis vector is an eigenvector.
    return preferred == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  }
  const Vec2& v = (na >= nb) ? a : b;
  const double n = (na >= nb) ? na : nb;
  return {v[0] / n, v[1] / n};
}
}  // namespace detail

// Eigensystem of the momentum-space half operator diag(e^{ik/2}, e^{-ik/2}) C
// for a rotation sub-coin with angle theta.
inline SubCoinSpectrum sub_coin_spectrum(double theta, double k) {
  const double ct = std::cos(theta);
  const double sk = std::sin(k / 2.0);
  const double root = std::sqrt(std::max(0.0, 1.0 - ct * ct * sk * sk));
  SubCoinSpectrum spec;
  spec.lambda_plus = cplx{root, ct * sk};
  spec.lambda_minus = cplx{-root, ct * sk};
  Unitary2 u = make_sub_coin({theta, 0.0, 0.0});
  const cplx up = std::polar(1.0, k / 2.0);
  u.at(0, 0) *= up;
  u.at(0, 1) *= up;
  u.at(1, 0) *= std::conj(up);
  u.at(1, 1) *= std::conj(up);
  spec.v_plus = detail::eigvec2(u, spec.lambda_plus, 0);
  spec.v_minus = detail::eigvec2(u, spec.lambda_minus, 1);
  return spec;
}

// Full 4-dimensional eigensystem of U(k), ordered (+,+), (+,-), (-,+), (-,-).
struct LimitSpectrum {
  double k = 0.0;
  std::array<cplx, 2> lambda1;  // (+, -) of sub-coin 1
  std::array<cplx, 2> lambda2;  // (+, -) of sub-coin 2
  std::array<cplx, 4> Lambda;
  std::array<Vec4, 4> V;
};

inline LimitSpectrum walk_spectrum(const CoinSpec& coin, double k) {
  if (!coin.rotation_only())
    throw std::domain_error("walk_spectrum: requires rotation sub-coins");
  const SubCoinSpectrum s1 = sub_coin_spectrum(coin.sub1.theta, k);
  const SubCoinSpectrum s2 = sub_coin_spectrum(coin.sub2.theta, k);
  LimitSpectrum out;
  out.k = k;
  out.lambda1 = {s1.lambda_plus, s1.lambda_minus};
  out.lambda2 = {s2.lambda_plus, s2.lambda_minus};
  out.Lambda = {s1.lambda_plus * s2.lambda_plus,
                s1.lambda_plus * s2.lambda_minus,
                s1.lambda_minus * s2.lambda_plus,
                s1.lambda_minus * s2.lambda_minus};
  out.V = {tensor(s1.v_plus, s2.v_plus), tensor(s1.v_plus, s2.v_minus),
           tensor(s1.v_minus, s2.v_plus), tensor(s1.v_minus, s2.v_minus)};
  return out;
}

namespace detail {
inline Vec4 momentum_amplitude(const CoinSpec& coin, double k, int steps,
                               const Vec4& psi0) {
  if (coin.rotation_only()) {
    // Spectral sum with projectors V_z V_z^dagger; eigenvector phase
    // conventions cancel.
    const LimitSpectrum spec = walk_spectrum(coin, k);
    Vec4 out{};
    for (int z = 0; z < 4; ++z) {
      cplx overlap = 0.0;
      for (int i = 0; i < 4; ++i) overlap += std::conj(spec.V[z][i]) * psi0[i];
      const cplx w = pow_int(spec.Lambda[z], steps) * overlap;
      for (int i = 0; i < 4; ++i) out[i] += w * spec.V[z][i];
    }
    return out;
  }
  return mat_apply(mat_pow(momentum_operator(coin, k), steps), psi0);
}
}  // namespace detail

// Exact momentum-space evolution: Psi_T(k) is a trigonometric polynomial of
// degree <= T, so a uniform k grid with num_k >= 2T+3 points reconstructs
// the position amplitudes exactly.
inline WalkerState evolve_fourier_state(const WalkParams& params, int num_k) {
  const int t = params.steps;
  if (num_k < 2 * t + 3)
    throw std::invalid_argument("evolve_fourier: num_k must be >= 2T+3");
  const Vec4 psi0 = initial_coin_vector(params.init);

  std::vector<Vec4> psik(static_cast<size_t>(num_k));
  for (int j = 0; j < num_k; ++j) {
    const double k = 2.0 * std::numbers::pi * j / num_k;
    psik[static_cast<size_t>(j)] =
        detail::momentum_amplitude(params.coin, k, t, psi0);
  }

  WalkerState out;
  out.step = t;
  out.amps.assign(static_cast<size_t>(2 * t + 1), Vec4{});
  for (int x = -t; x <= t; ++x) {
    Vec4 acc{};
    for (int j = 0; j < num_k; ++j) {
      const double k = 2.0 * std::numbers::pi * j / num_k;
      const cplx phase = std::polar(1.0, -k * x);
      for (int i = 0; i < 4; ++i) acc[i] += phase * psik[static_cast<size_t>(j)][i];
    }
    for (int i = 0; i < 4; ++i) out.site(x)[i] = acc[i] / static_cast<double>(num_k);
  }
  return out;
}

inline int default_num_k(int steps) {
  int n = 1;
  while (n < 4 * (steps + 1)) n <<= 1;
  return n;
}

inline PddSnapshot evolve_fourier(const WalkParams& params, int num_k) {
  return pdd(evolve_fourier_state(params, num_k));
}

// Closed-form stationary (localized) part of the large-T distribution for
// identical rotation sub-coins with angle theta in (0, pi/2).
struct LimitingDistribution {
  double theta = 0.0;
  double mu1 = 0.0;  // sec(theta) (1 - sin(theta))
  double mu2 = 0.0;  // sec(theta) (1 + sin(theta))
  BetaVector beta;
  double p_zero = 0.0;
  double bracket_right = 0.0;
  double bracket_left = 0.0;
  double tan2 = 0.0;

  double at(int x) const {
    if (x == 0) return p_zero;
    if (x >= 1) return std::pow(mu1, 4.0 * x) * tan2 * bracket_right;
    return std::pow(mu1, -4.0 * x) * tan2 * bracket_left;
  }
};

inline LimitingDistribution limiting_pdd(double theta, const BetaVector& bv) {
  if (!(theta > 0.0) || !(theta < std::numbers::pi / 2.0))
    throw std::domain_error(
        "limiting_pdd: theta must lie strictly inside (0, pi/2); the "
        "stationary-phase premise degenerates at the endpoints");
  LimitingDistribution d;
  d.theta = theta;
  const double sec = 1.0 / std::cos(theta);
  const double tan = std::tan(theta);
  d.mu1 = sec * (1.0 - std::sin(theta));
  d.mu2 = sec * (1.0 + std::sin(theta));
  d.beta = bv;
  d.tan2 = tan * tan;

  const cplx b1 = bv.beta[0], b2 = bv.beta[1], b3 = bv.beta[2],
             b4 = bv.beta[3];
  auto re = [](cplx z) { return z.real(); };
  const double m1 = d.mu1, m2 = d.mu2;

  d.p_zero = d.tan2 * m1 * m1 * (std::norm(b1) + std::norm(b4)) +
             sec * m1 * (std::norm(b2) + std::norm(b3)) +
             tan * m1 * m1 *
                 re(b2 * std::conj(b4) + b3 * std::conj(b4) -
                    b1 * std::conj(b2) - b1 * std::conj(b3)) -
             2.0 * tan * m1 * re(b2 * std::conj(b3));

  d.bracket_right =
      m2 * m2 * std::norm(b1) + std::norm(b2) + std::norm(b3) +
      m1 * m1 * std::norm(b4) -
      2.0 * m2 * re(b1 * std::conj(b2) + b1 * std::conj(b3)) +
      2.0 * re(b1 * std::conj(b4) + b2 * std::conj(b3)) -
      2.0 * m1 * re(b2 * std::conj(b4) + b3 * std::conj(b4));

  d.bracket_left =
      m1 * m1 * std::norm(b1) + std::norm(b2) + std::norm(b3) +
      m2 * m2 * std::norm(b4) +
      2.0 * m1 * re(b1 * std::conj(b2) + b1 * std::conj(b3)) +
      2.0 * re(b1 * std::conj(b4) + b2 * std::conj(b3)) +
      2.0 * m2 * re(b2 * std::conj(b4) + b3 * std::conj(b4));

  return d;
}

}  // namespace qwalk
