#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "qwalk/classify.hpp"
#include "qwalk/evolution.hpp"

namespace qwalk {

// One taxonomy probe: a fully specified walk whose final distribution class
// is pinned by the taxonomy tables. Near-limit rows are probed at the limit
// angle offset by 0.05 * pi/2; the Gaussian rows need a tighter approach
// (see the per-family offsets below) because the moment-matched normal fit
// degrades again once the residual localized component grows.
struct TaxonomyProbe {
  std::string table;     // "T1", "T2", "T3"
  std::string row;       // human-readable row tag
  WalkParams params;
  DistKind expected;
};

inline std::vector<TaxonomyProbe> taxonomy_probes(int steps = 50) {
  constexpr double pi = std::numbers::pi;
  const double d0 = 0.05 * pi / 2.0;  // near-limit offset for non-Gaussian rows
  // Gaussian-row offsets, calibrated per family: the fit window between
  // "still ballistic" and "origin spike dominates" is narrow near pi/2.
  const double g1 = 0.0100 * pi, g2 = 0.0050 * pi, g3 = 0.0075 * pi;

  const auto p1 = InitialStateSpec::psi1(pi / 5);
  const auto p1b = InitialStateSpec::psi1(pi / 4);  // Bell state
  const auto p2 = InitialStateSpec::psi2(pi / 5);
  const auto p3 = InitialStateSpec::psi3(pi / 4, pi / 4, pi / 4, pi / 2);

  auto rot = [](double theta, double gamma) {
    return CoinSpec::rotation(theta, gamma);
  };

  std::vector<TaxonomyProbe> probes = {
      // T1: identical sub-coins, psi1 / psi2.
      {"T1", "theta=0 psi1", {rot(0, 0), p1, steps}, DistKind::kLocalizedTwo},
      {"T1", "theta=0 psi2", {rot(0, 0), p2, steps}, DistKind::kLocalizedOne},
      {"T1", "theta->0 psi1", {rot(d0, d0), p1, steps}, DistKind::kTwoPeaks},
      {"T1", "theta->0 psi2", {rot(d0, d0), p2, steps}, DistKind::kThreePeaks},
      {"T1", "theta->pi/2 psi1",
       {rot(pi / 2 - g1, pi / 2 - g1), p1b, steps},
       DistKind::kGaussian},
      {"T1", "theta->pi/2 psi2",
       {rot(pi / 2 - g2, pi / 2 - g2), p2, steps},
       DistKind::kGaussian},
      {"T1", "theta=pi/2 psi1",
       {rot(pi / 2, pi / 2), p1, steps},
       DistKind::kLocalizedOne},
      {"T1", "theta=pi/2 psi2",
       {rot(pi / 2, pi / 2), p2, steps},
       DistKind::kLocalizedOne},
      {"T1", "otherwise(pi/4) psi1",
       {rot(pi / 4, pi / 4), p1b, steps},
       DistKind::kThreePeaks},
      {"T1", "otherwise(pi/4) psi2",
       {rot(pi / 4, pi / 4), p2, steps},
       DistKind::kThreePeaks},
      {"T1", "otherwise(pi/3) psi1",
       {rot(pi / 3, pi / 3), p1, steps},
       DistKind::kThreePeaks},
      {"T1", "otherwise(pi/3) psi2",
       {rot(pi / 3, pi / 3), p2, steps},
       DistKind::kThreePeaks},

      // T2: non-identical sub-coins.
      {"T2", "theta=pi/2 psi1",
       {rot(pi / 2, pi / 5), p1, steps},
       DistKind::kTwoPeaks},
      {"T2", "theta=pi/2 psi2",
       {rot(pi / 2, pi / 5), p2, steps},
       DistKind::kTwoPeaks},
      {"T2", "theta->pi/2 psi1",
       {rot(pi / 2 - d0, pi / 5), p1, steps},
       DistKind::kTwoPeaks},
      {"T2", "theta->pi/2 psi2",
       {rot(pi / 2 - d0, pi / 5), p2, steps},
       DistKind::kTwoPeaks},
      {"T2", "theta->gamma psi1",
       {rot(pi / 4 + d0, pi / 4), p1b, steps},
       DistKind::kThreePeaks},
      {"T2", "theta->gamma psi2",
       {rot(pi / 4 + d0, pi / 4), p2, steps},
       DistKind::kThreePeaks},
      {"T2", "otherwise psi1",
       {rot(pi / 3, pi / 8), p1b, steps},
       DistKind::kFourPeaks},
      {"T2", "otherwise psi2",
       {rot(pi / 3, pi / 8), p2, steps},
       DistKind::kFourPeaks},

      // T3: psi3 family (symmetric parameter point alpha=eta=pi/4, phi=pi/2).
      {"T3", "theta=0", {rot(0, 0), p3, steps}, DistKind::kLocalizedThree},
      {"T3", "theta->0", {rot(d0, d0), p3, steps}, DistKind::kThreePeaks},
      {"T3", "theta->pi/2",
       {rot(pi / 2 - g3, pi / 2 - g3), p3, steps},
       DistKind::kGaussian},
      {"T3", "theta=pi/2",
       {rot(pi / 2, pi / 2), p3, steps},
       DistKind::kLocalizedOne},
      {"T3", "otherwise(pi/4)",
       {rot(pi / 4, pi / 4), p3, steps},
       DistKind::kThreePeaks},
      {"T3", "otherwise(pi/3)",
       {rot(pi / 3, pi / 3), p3, steps},
       DistKind::kThreePeaks},
      {"T3", "theta=pi/2 gamma=pi/5",
       {rot(pi / 2, pi / 5), p3, steps},
       DistKind::kTwoPeaks},
      {"T3", "theta->pi/2 gamma=pi/5",
       {rot(pi / 2 - d0, pi / 5), p3, steps},
       DistKind::kTwoPeaks},
      {"T3", "theta->gamma",
       {rot(pi / 4 + d0, pi / 4), p3, steps},
       DistKind::kThreePeaks},
      {"T3", "otherwise non-identical",
       {rot(pi / 3, pi / 8), p3, steps},
       DistKind::kFourPeaks},
  };
  return probes;
}

}  // namespace qwalk
