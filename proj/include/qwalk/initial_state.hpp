#pragma once

#include <cmath>
#include <stdexcept>

#include "qwalk/core.hpp"

namespace qwalk {

enum class InitialFamily { kPsi1, kPsi2, kPsi3 };

// Parameters of the three initial-state families. psi1 uses (eta, phi),
// psi2 uses (alpha, phi), psi3 uses all four angles; unused fields are
// ignored. Every parameter choice yields a normalized state.
struct InitialStateSpec {
  InitialFamily family = InitialFamily::kPsi1;
  double eta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;

  static InitialStateSpec psi1(double eta, double phi = 0.0) {
    return {InitialFamily::kPsi1, eta, 0.0, 0.0, phi};
  }
  static InitialStateSpec psi2(double alpha, double phi = 0.0) {
    return {InitialFamily::kPsi2, 0.0, alpha, 0.0, phi};
  }
  static InitialStateSpec psi3(double alpha, double eta, double beta,
                               double phi = 0.0) {
    return {InitialFamily::kPsi3, eta, alpha, beta, phi};
  }
};

// Two-qubit coin vector at the origin, in the |00>,|01>,|10>,|11> ordering.
inline Vec4 initial_coin_vector(const InitialStateSpec& s) {
  const cplx ephi = std::polar(1.0, s.phi);
  switch (s.family) {
    case InitialFamily::kPsi1:
      return {std::cos(s.eta), 0.0, 0.0, ephi * std::sin(s.eta)};
    case InitialFamily::kPsi2:
      return {0.0, ephi * std::sin(s.alpha), std::cos(s.alpha), 0.0};
    case InitialFamily::kPsi3: {
      const double cb = std::cos(s.beta);
      const double sb = std::sin(s.beta);
      return {cb * std::cos(s.eta), ephi * sb * std::sin(s.alpha),
              ephi * sb * std::cos(s.alpha), cb * std::sin(s.eta)};
    }
  }
  throw std::invalid_argument("initial_coin_vector: unknown family");
}

inline WalkerState build_initial(const InitialStateSpec& s) {
  return WalkerState::at_origin(initial_coin_vector(s));
}

namespace detail {
inline double binary_entropy(double lambda) {
  double acc = 0.0;
  for (double p : {lambda, 1.0 - lambda})
    if (p > 1e-15) acc -= p * std::log2(p);
  return acc;
}
}  // namespace detail

// Entanglement entropy (bits) between the two coin qubits of the initial
// state: von Neumann entropy of one qubit's reduced density matrix.
inline double initial_entanglement(const InitialStateSpec& s) {
  const Vec4 v = initial_coin_vector(s);
  // rho1 = Tr_2 |v><v|, a 2x2 Hermitian with unit trace.
  const cplx r00 = std::conj(v[0]) * v[0] + std::conj(v[1]) * v[1];
  const cplx r01 = std::conj(v[2]) * v[0] + std::conj(v[3]) * v[1];
  const cplx r11 = std::conj(v[2]) * v[2] + std::conj(v[3]) * v[3];
  const double a = r00.real();
  const double d = r11.real();
  const double disc =
      std::sqrt((a - d) * (a - d) / 4.0 + std::norm(r01));
  const double lambda = (a + d) / 2.0 + disc;
  return detail::binary_entropy(std::min(1.0, std::max(0.0, lambda)));
}

}  // namespace qwalk
