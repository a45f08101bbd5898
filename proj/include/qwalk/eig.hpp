#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

// Dense Hermitian matrix with row-major storage.
struct HermitianMatrix {
  int dim = 0;
  std::vector<cplx> m;

  explicit HermitianMatrix(int n = 0) : dim(n), m(static_cast<size_t>(n) * n) {}

  cplx& at(int r, int c) { return m[static_cast<size_t>(r) * dim + c]; }
  cplx at(int r, int c) const { return m[static_cast<size_t>(r) * dim + c]; }

  double hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim; ++r)
      for (int c = r; c < dim; ++c)
        worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }
};

// Eigenvalues of a complex Hermitian matrix by cyclic Jacobi rotations.
// Each sweep zeroes every off-diagonal pair (p,q) with a phase rotation that
// makes the pivot real followed by a real Jacobi rotation. Intended for the
// small matrices this project produces (coin reductions are at most 4x4,
// position reductions stay desk-sized).
inline std::vector<double> hermitian_eigenvalues(HermitianMatrix a,
                                                 double off_tol = 1e-13,
                                                 int max_sweeps = 100) {
  const int n = a.dim;
  if (n == 0) return {};
  if (a.hermiticity_defect() > 1e-9)
    throw std::domain_error("hermitian_eigenvalues: input is not Hermitian");
  // Symmetrize away roundoff so the iteration sees an exactly Hermitian matrix.
  for (int r = 0; r < n; ++r) {
    a.at(r, r) = a.at(r, r).real();
    for (int c = r + 1; c < n; ++c) {
      const cplx avg = 0.5 * (a.at(r, c) + std::conj(a.at(c, r)));
      a.at(r, c) = avg;
      a.at(c, r) = std::conj(avg);
    }
  }

  auto off_norm = [&]() {
    double acc = 0.0;
    for (int r = 0; r < n; ++r)
      for (int c = r + 1; c < n; ++c) acc += 2.0 * std::norm(a.at(r, c));
    return std::sqrt(acc);
  };

  for (int sweep = 0; sweep < max_sweeps && off_norm() > off_tol; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a.at(p, q);
        const double b = std::abs(apq);
        if (b <= off_tol * 0.01) continue;
        const cplx phase = apq / b;  // strip the pivot's phase
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Combined rotation R: columns p,q mix with
        //   R[p][p]=c, R[p][q]=s, R[q][p]=-conj(phase)*s, R[q][q]=conj(phase)*c
        const cplx rqp = -std::conj(phase) * s;
        const cplx rqq = std::conj(phase) * c;
        // A <- R^dagger A R, touching only rows/cols p and q.
        for (int i = 0; i < n; ++i) {
          const cplx aip = a.at(i, p);
          const cplx aiq = a.at(i, q);
          a.at(i, p) = aip * c + aiq * rqp;
          a.at(i, q) = aip * s + aiq * rqq;
        }
        for (int i = 0; i < n; ++i) {
          const cplx api = a.at(p, i);
          const cplx aqi = a.at(q, i);
          a.at(p, i) = c * api + std::conj(rqp) * aqi;
          a.at(q, i) = s * api + std::conj(rqq) * aqi;
        }
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = a.at(p, p).real();
        a.at(q, q) = a.at(q, q).real();
      }
    }
  }

  std::vector<double> eig(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = a.at(i, i).real();
  return eig;
}

}  // namespace qwalk
