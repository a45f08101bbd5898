#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

using cplx = std::complex<double>;

// Tolerances shared across the library.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kCompareTol = 1e-10;

// Coin basis ordering used everywhere: index = 2*q1 + q2.
//   0 <-> |00>, 1 <-> |01>, 2 <-> |10>, 3 <-> |11>
enum CoinBasis : int { kC00 = 0, kC01 = 1, kC10 = 2, kC11 = 3 };

using Vec2 = std::array<cplx, 2>;
using Vec4 = std::array<cplx, 4>;

// Thrown when a computation would exceed a configured resource cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Row-major 2x2 complex matrix.
struct Unitary2 {
  std::array<cplx, 4> m{};

  cplx& at(int r, int c) { return m[2 * r + c]; }
  cplx at(int r, int c) const { return m[2 * r + c]; }

  static Unitary2 identity() {
    Unitary2 u;
    u.at(0, 0) = 1.0;
    u.at(1, 1) = 1.0;
    return u;
  }
};

// Row-major 4x4 complex matrix.
struct Unitary4 {
  std::array<cplx, 16> m{};

  cplx& at(int r, int c) { return m[4 * r + c]; }
  cplx at(int r, int c) const { return m[4 * r + c]; }

  static Unitary4 identity() {
    Unitary4 u;
    for (int i = 0; i < 4; ++i) u.at(i, i) = 1.0;
    return u;
  }
};

inline Vec2 mat_apply(const Unitary2& u, const Vec2& v) {
  return {u.at(0, 0) * v[0] + u.at(0, 1) * v[1],
          u.at(1, 0) * v[0] + u.at(1, 1) * v[1]};
}

inline Vec4 mat_apply(const Unitary4& u, const Vec4& v) {
  Vec4 out{};
  for (int r = 0; r < 4; ++r) {
    cplx acc = 0.0;
    for (int c = 0; c < 4; ++c) acc += u.at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

// Kronecker product consistent with the 2*q1+q2 basis ordering.
inline Unitary4 tensor2(const Unitary2& a, const Unitary2& b) {
  Unitary4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
  return out;
}

inline Vec4 tensor(const Vec2& a, const Vec2& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

inline Unitary4 mat_mul(const Unitary4& a, const Unitary4& b) {
  Unitary4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a.at(r, k) * b.at(k, c);
      out.at(r, c) = acc;
    }
  return out;
}

inline Unitary2 mat_mul(const Unitary2& a, const Unitary2& b) {
  Unitary2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.at(r, c) = a.at(r, 0) * b.at(0, c) + a.at(r, 1) * b.at(1, c);
  return out;
}

inline Unitary4 adjoint(const Unitary4& u) {
  Unitary4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.at(r, c) = std::conj(u.at(c, r));
  return out;
}

inline Unitary2 adjoint(const Unitary2& u) {
  Unitary2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.at(r, c) = std::conj(u.at(c, r));
  return out;
}

namespace detail {
template <typename Mat>
bool unitary_check(const Mat& u, int n, double tol) {
  const auto gram = mat_mul(adjoint(u), u);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const cplx expect = (r == c) ? cplx{1.0} : cplx{0.0};
      if (std::abs(gram.at(r, c) - expect) > tol) return false;
    }
  return true;
}
}  // namespace detail

inline bool is_unitary(const Unitary2& u, double tol = kUnitaryTol) {
  return detail::unitary_check(u, 2, tol);
}

inline bool is_unitary(const Unitary4& u, double tol = kUnitaryTol) {
  return detail::unitary_check(u, 4, tol);
}

// Wave function of the walker: a dense 4-vector of amplitudes per lattice
// site x in [-step, step]. Sites outside the light cone are never stored.
struct WalkerState {
  int step = 0;
  std::vector<Vec4> amps;  // amps[step + x] holds site x

  static WalkerState at_origin(const Vec4& coin) {
    WalkerState s;
    s.step = 0;
    s.amps = {coin};
    return s;
  }

  int x_min() const { return -step; }
  int x_max() const { return step; }

  const Vec4& site(int x) const { return amps[static_cast<size_t>(step + x)]; }
  Vec4& site(int x) { return amps[static_cast<size_t>(step + x)]; }

  double norm_sq() const {
    double acc = 0.0;
    for (const auto& v : amps)
      for (const auto& a : v) acc += std::norm(a);
    return acc;
  }
};

inline cplx inner_product(const WalkerState& a, const WalkerState& b) {
  if (a.step != b.step)
    throw std::invalid_argument("inner_product: mismatched step index");
  cplx acc = 0.0;
  for (size_t i = 0; i < a.amps.size(); ++i)
    for (int z = 0; z < 4; ++z) acc += std::conj(a.amps[i][z]) * b.amps[i][z];
  return acc;
}

}  // namespace qwalk
