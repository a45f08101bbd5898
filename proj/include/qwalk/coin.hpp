#pragma once

#include <cmath>

#include "qwalk/core.hpp"

namespace qwalk {

// One single-qubit sub-coin. With xi = zeta = 0 this is the plain rotation
// coin cos(theta) sigma_Z + sin(theta) sigma_X; nonzero phases give the
// general SU(2)-form coin.
struct SubCoinSpec {
  double theta = 0.0;
  double xi = 0.0;
  double zeta = 0.0;

  bool operator==(const SubCoinSpec&) const = default;
};

struct CoinSpec {
  SubCoinSpec sub1;  // angle theta
  SubCoinSpec sub2;  // angle gamma

  bool identical() const { return sub1 == sub2; }
  bool rotation_only() const {
    return sub1.xi == 0.0 && sub1.zeta == 0.0 && sub2.xi == 0.0 &&
           sub2.zeta == 0.0;
  }

  static CoinSpec rotation(double theta, double gamma) {
    return {{theta, 0.0, 0.0}, {gamma, 0.0, 0.0}};
  }
};

inline Unitary2 make_sub_coin(const SubCoinSpec& spec) {
  const double c = std::cos(spec.theta);
  const double s = std::sin(spec.theta);
  const cplx exi = std::polar(1.0, spec.xi);
  const cplx ezeta = std::polar(1.0, spec.zeta);
  Unitary2 u;
  u.at(0, 0) = exi * c;
  u.at(0, 1) = ezeta * s;
  u.at(1, 0) = std::conj(ezeta) * s;
  u.at(1, 1) = -std::conj(exi) * c;
  return u;
}

inline Unitary4 make_coin(const CoinSpec& spec) {
  return tensor2(make_sub_coin(spec.sub1), make_sub_coin(spec.sub2));
}

}  // namespace qwalk
