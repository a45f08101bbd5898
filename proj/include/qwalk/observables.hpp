#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/eig.hpp"

namespace qwalk {

inline constexpr double kEigFloor = 1e-12;

// Probability density over positions [-step, step] at a given step.
struct PddSnapshot {
  int step = 0;
  std::vector<double> probs;  // probs[step + x] = p(x)

  int x_min() const { return -step; }
  int x_max() const { return step; }
  double at(int x) const {
    if (x < -step || x > step) return 0.0;
    return probs[static_cast<size_t>(step + x)];
  }

  double total() const {
    double acc = 0.0;
    for (double p : probs) acc += p;
    return acc;
  }
};

inline PddSnapshot pdd(const WalkerState& s) {
  PddSnapshot snap;
  snap.step = s.step;
  snap.probs.reserve(s.amps.size());
  for (const auto& v : s.amps) {
    double p = 0.0;
    for (const auto& a : v) p += std::norm(a);
    snap.probs.push_back(p);
  }
  return snap;
}

inline std::pair<double, double> mean_and_variance(const PddSnapshot& p) {
  double mean = 0.0, second = 0.0;
  for (int x = p.x_min(); x <= p.x_max(); ++x) {
    mean += x * p.at(x);
    second += static_cast<double>(x) * x * p.at(x);
  }
  return {mean, std::max(0.0, second - mean * mean)};
}

// Shannon entropy of the position distribution, in bits.
inline double shannon_entropy(const PddSnapshot& p) {
  double acc = 0.0;
  for (double v : p.probs)
    if (v > 0.0) acc -= v * std::log2(v);
  return std::max(0.0, acc);
}

enum class Subsystem { kPosition, kCoin, kQubit1, kQubit2 };

struct ReducedDensity {
  Subsystem label = Subsystem::kCoin;
  HermitianMatrix rho;
};

// Partial trace of |s><s| keeping one factor of position x (qubit1 x qubit2).
inline ReducedDensity reduce(const WalkerState& s, Subsystem keep) {
  const int sites = 2 * s.step + 1;
  switch (keep) {
    case Subsystem::kPosition: {
      HermitianMatrix rho(sites);
      for (int i = 0; i < sites; ++i)
        for (int j = 0; j < sites; ++j) {
          cplx acc = 0.0;
          for (int z = 0; z < 4; ++z)
            acc += s.amps[static_cast<size_t>(i)][z] *
                   std::conj(s.amps[static_cast<size_t>(j)][z]);
          rho.at(i, j) = acc;
        }
      return {keep, std::move(rho)};
    }
    case Subsystem::kCoin: {
      HermitianMatrix rho(4);
      for (int z = 0; z < 4; ++z)
        for (int w = 0; w < 4; ++w) {
          cplx acc = 0.0;
          for (const auto& v : s.amps) acc += v[z] * std::conj(v[w]);
          rho.at(z, w) = acc;
        }
      return {keep, std::move(rho)};
    }
    case Subsystem::kQubit1:
    case Subsystem::kQubit2: {
      HermitianMatrix rho(2);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          cplx acc = 0.0;
          for (const auto& v : s.amps)
            for (int c = 0; c < 2; ++c) {
              const int za = (keep == Subsystem::kQubit1) ? 2 * a + c : 2 * c + a;
              const int zb = (keep == Subsystem::kQubit1) ? 2 * b + c : 2 * c + b;
              acc += v[za] * std::conj(v[zb]);
            }
          rho.at(a, b) = acc;
        }
      return {keep, std::move(rho)};
    }
  }
  throw std::invalid_argument("reduce: unknown subsystem label");
}

inline double von_neumann_entropy(const ReducedDensity& rd) {
  const auto eig = hermitian_eigenvalues(rd.rho);
  double acc = 0.0;
  for (double lambda : eig) {
    if (lambda < -1e-9)
      throw std::domain_error("von_neumann_entropy: negative eigenvalue");
    if (lambda > kEigFloor) acc -= lambda * std::log2(lambda);
  }
  return std::max(0.0, acc);
}

// Entanglement entropy between position and coin, computed through the 4x4
// Gram matrix of the amplitude array. The position reduction has rank <= 4,
// so its nonzero spectrum equals that of the Gram matrix; this stays cheap
// at any step count.
inline double position_entropy(const WalkerState& s) {
  HermitianMatrix gram(4);
  for (int z = 0; z < 4; ++z)
    for (int w = 0; w < 4; ++w) {
      cplx acc = 0.0;
      for (const auto& v : s.amps) acc += std::conj(v[z]) * v[w];
      gram.at(z, w) = acc;
    }
  double acc = 0.0;
  for (double lambda : hermitian_eigenvalues(gram))
    if (lambda > kEigFloor) acc -= lambda * std::log2(lambda);
  return std::max(0.0, acc);
}

}  // namespace qwalk
