#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/evolution.hpp"
#include "qwalk/observables.hpp"

namespace qwalk {

enum class DistKind {
  kLocalizedOne,
  kLocalizedTwo,
  kLocalizedThree,
  kTwoPeaks,
  kThreePeaks,
  kFourPeaks,
  kGaussian,
  kOther,
};

inline const char* to_string(DistKind k) {
  switch (k) {
    case DistKind::kLocalizedOne: return "localized-1";
    case DistKind::kLocalizedTwo: return "localized-2";
    case DistKind::kLocalizedThree: return "localized-3";
    case DistKind::kTwoPeaks: return "two-peaks";
    case DistKind::kThreePeaks: return "three-peaks";
    case DistKind::kFourPeaks: return "four-peaks";
    case DistKind::kGaussian: return "gaussian";
    case DistKind::kOther: return "other";
  }
  return "?";
}

struct ClassifyConfig {
  double loc_mass = 0.999;   // mass on k sites for localized-k
  int r_trap = 2;            // self-trapping radius
  double pt_mass = 0.2;      // per-front mass for perfect transfer
  double gauss_tol = 0.05;   // total-variation cutoff for the Gaussian fit
  double min_frac = 0.10;    // peak height relative to the maximum
  int window = 5;            // peak dominance window
  double edge_floor = 1e-3;  // absolute height that qualifies a light-cone-front site
};

struct Peak {
  int x;
  double p;
};

struct FitResult {
  double mu = 0.0;
  double sigma2 = 0.0;
  double tv_distance = 1.0;
};

struct DistributionClass {
  DistKind kind = DistKind::kOther;
  std::vector<Peak> peaks;
  FitResult fit;
};

inline std::vector<Peak> detect_peaks(const PddSnapshot& p, double min_frac,
                                      int window, double edge_floor = 1e-3) {
  if (!(min_frac > 0.0 && min_frac < 1.0))
    throw std::invalid_argument("detect_peaks: min_frac must be in (0,1)");
  double pmax = 0.0;
  for (double v : p.probs) pmax = std::max(pmax, v);
  if (pmax <= 0.0) return {};

  std::vector<Peak> peaks;
  for (int x = p.x_min(); x <= p.x_max(); ++x) {
    const double v = p.at(x);
    // Ballistic fronts sit at |x| ~ x_max and can be tiny next to a dominant
    // central spike; an absolute floor keeps them visible to the taxonomy.
    const bool edge =
        std::abs(x) >= p.x_max() - window && v >= edge_floor;
    if (v < min_frac * pmax && !edge) continue;
    bool dominant = true;
    for (int d = -window; d <= window && dominant; ++d)
      if (d != 0 && p.at(x + d) > v) dominant = false;
    if (!dominant) continue;
    if (!peaks.empty() && x - peaks.back().x <= window) {
      if (v > peaks.back().p) peaks.back() = {x, v};
      continue;
    }
    peaks.push_back({x, v});
  }
  return peaks;
}

inline FitResult gaussian_fit(const PddSnapshot& p) {
  const auto [mean, var] = mean_and_variance(p);
  if (var <= 0.0)
    throw std::domain_error("gaussian_fit: distribution has zero variance");
  const double sigma = std::sqrt(var);
  auto cdf = [&](double x) {
    return 0.5 * (1.0 + std::erf((x - mean) / (sigma * std::numbers::sqrt2)));
  };
  double tv = 0.0;
  double covered = 0.0;
  for (int x = p.x_min(); x <= p.x_max(); ++x) {
    const double g = cdf(x + 0.5) - cdf(x - 0.5);
    covered += g;
    tv += std::abs(p.at(x) - g);
  }
  tv += 1.0 - covered;  // normal mass outside the support counts against the fit
  return {mean, var, 0.5 * tv};
}

inline double symmetry_defect(const PddSnapshot& p) {
  double worst = 0.0;
  for (int x = 1; x <= p.x_max(); ++x)
    worst = std::max(worst, std::abs(p.at(x) - p.at(-x)));
  return worst;
}

namespace detail {
// Smallest k <= 3 such that k sites carry at least loc_mass, or 0.
inline int localization_order(const PddSnapshot& p, double loc_mass) {
  std::vector<double> probs = p.probs;
  std::partial_sort(probs.begin(),
                    probs.begin() + std::min<size_t>(3, probs.size()),
                    probs.end(), std::greater<>());
  double acc = 0.0;
  for (size_t i = 0; i < std::min<size_t>(3, probs.size()); ++i) {
    acc += probs[i];
    if (acc >= loc_mass) return static_cast<int>(i) + 1;
  }
  return 0;
}
}  // namespace detail

// Decision tree: localization first, then the Gaussian fit, then peak count.
inline DistributionClass classify_snapshot(const PddSnapshot& p,
                                           const ClassifyConfig& cfg = {}) {
  DistributionClass out;
  out.peaks = detect_peaks(p, cfg.min_frac, cfg.window, cfg.edge_floor);

  switch (detail::localization_order(p, cfg.loc_mass)) {
    case 1: out.kind = DistKind::kLocalizedOne; return out;
    case 2: out.kind = DistKind::kLocalizedTwo; return out;
    case 3: out.kind = DistKind::kLocalizedThree; return out;
    default: break;
  }

  const auto [mean, var] = mean_and_variance(p);
  if (var > 0.0) {
    out.fit = gaussian_fit(p);
    if (out.fit.tv_distance < cfg.gauss_tol) {
      out.kind = DistKind::kGaussian;
      return out;
    }
  }

  switch (out.peaks.size()) {
    case 2: out.kind = DistKind::kTwoPeaks; break;
    case 3: out.kind = DistKind::kThreePeaks; break;
    case 4: out.kind = DistKind::kFourPeaks; break;
    default: out.kind = DistKind::kOther; break;
  }
  return out;
}

inline DistributionClass classify_distribution(const Trajectory& traj,
                                               const ClassifyConfig& cfg = {}) {
  if (traj.snapshots.size() < 2)
    throw std::invalid_argument(
        "classify_distribution: trajectory must cover at least 2 steps");
  return classify_snapshot(traj.snapshots.back(), cfg);
}

// Trapped versus mobile mass components over a whole trajectory.
struct TransportReport {
  double min_trapped_mass = 1.0;  // min over steps of mass within r_trap
  double min_edge_mass = 1.0;     // min over steps >= 1 of max(p(t), p(-t))
  bool self_trapped = false;      // trapped mass >= loc_mass at every step
  bool partially_trapped = false; // trapped mass >= pt_mass at every step
  bool perfect_transfer = false;  // a front carries >= pt_mass at every step
};

inline TransportReport analyze_transport(const Trajectory& traj,
                                         const ClassifyConfig& cfg = {}) {
  if (traj.snapshots.empty() || traj.snapshots.front().step != 0)
    throw std::invalid_argument(
        "analyze_transport: trajectory must be recorded from step 0");
  TransportReport rep;
  for (const auto& snap : traj.snapshots) {
    double trapped = 0.0;
    for (int x = -cfg.r_trap; x <= cfg.r_trap; ++x) trapped += snap.at(x);
    rep.min_trapped_mass = std::min(rep.min_trapped_mass, trapped);
    if (snap.step >= 1) {
      const double edge = std::max(snap.at(snap.step), snap.at(-snap.step));
      rep.min_edge_mass = std::min(rep.min_edge_mass, edge);
    }
  }
  rep.self_trapped = rep.min_trapped_mass >= cfg.loc_mass;
  rep.partially_trapped = rep.min_trapped_mass >= cfg.pt_mass;
  rep.perfect_transfer =
      traj.snapshots.size() > 1 && rep.min_edge_mass >= cfg.pt_mass;
  return rep;
}

inline bool detect_self_trapping(const Trajectory& traj,
                                 const ClassifyConfig& cfg = {}) {
  return analyze_transport(traj, cfg).self_trapped;
}

inline bool detect_perfect_transfer(const Trajectory& traj,
                                    const ClassifyConfig& cfg = {}) {
  return analyze_transport(traj, cfg).perfect_transfer;
}

}  // namespace qwalk
