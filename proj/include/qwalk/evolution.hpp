#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/core.hpp"
#include "qwalk/initial_state.hpp"
#include "qwalk/observables.hpp"

namespace qwalk {

inline constexpr int kMaxSteps = 10000;

struct WalkParams {
  CoinSpec coin;
  InitialStateSpec init;
  int steps = 0;
};

struct Trajectory {
  std::vector<PddSnapshot> snapshots;          // t = 0..T
  std::vector<WalkerState> states;             // only when recording states
  WalkerState final_state;

  const PddSnapshot& final_pdd() const { return snapshots.back(); }
};

inline WalkerState apply_coin(const WalkerState& s, const Unitary4& c) {
  WalkerState out = s;
  for (auto& v : out.amps) v = mat_apply(c, v);
  return out;
}

// Conditional shift: |00> moves right, |11> moves left, |01> and |10> stay.
// The support grows by exactly one site per side.
inline WalkerState apply_shift(const WalkerState& s) {
  WalkerState out;
  out.step = s.step + 1;
  out.amps.assign(static_cast<size_t>(2 * out.step + 1), Vec4{});
  for (int x = s.x_min(); x <= s.x_max(); ++x) {
    const Vec4& v = s.site(x);
    out.site(x + 1)[kC00] += v[kC00];
    out.site(x)[kC01] += v[kC01];
    out.site(x)[kC10] += v[kC10];
    out.site(x - 1)[kC11] += v[kC11];
  }
  return out;
}

inline WalkerState walk_step(const WalkerState& s, const Unitary4& c) {
  return apply_shift(apply_coin(s, c));
}

// Inverse of walk_step: undo the shift, then apply the coin adjoint.
inline WalkerState walk_step_adjoint(const WalkerState& s, const Unitary4& c) {
  if (s.step == 0)
    throw std::invalid_argument("walk_step_adjoint: state is at step 0");
  WalkerState mid;
  mid.step = s.step - 1;
  mid.amps.assign(static_cast<size_t>(2 * mid.step + 1), Vec4{});
  for (int x = mid.x_min(); x <= mid.x_max(); ++x) {
    mid.site(x)[kC00] = s.site(x + 1)[kC00];
    mid.site(x)[kC01] = s.site(x)[kC01];
    mid.site(x)[kC10] = s.site(x)[kC10];
    mid.site(x)[kC11] = s.site(x - 1)[kC11];
  }
  return apply_coin(mid, adjoint(c));
}

struct RunOptions {
  bool record_pdds = true;
  bool record_states = false;
};

inline Trajectory run(const WalkParams& params, RunOptions opt = {}) {
  if (params.steps < 0)
    throw std::invalid_argument("run: steps must be non-negative");
  if (params.steps > kMaxSteps)
    throw ResourceError("run: steps exceed the configured cap");
  const Unitary4 c = make_coin(params.coin);
  WalkerState state = build_initial(params.init);

  Trajectory traj;
  if (opt.record_pdds) traj.snapshots.push_back(pdd(state));
  if (opt.record_states) traj.states.push_back(state);
  for (int t = 0; t < params.steps; ++t) {
    state = walk_step(state, c);
    if (opt.record_pdds) traj.snapshots.push_back(pdd(state));
    if (opt.record_states) traj.states.push_back(state);
  }
  traj.final_state = std::move(state);
  return traj;
}

inline WalkerState run_final(const WalkParams& params) {
  RunOptions opt;
  opt.record_pdds = false;
  return run(params, opt).final_state;
}

}  // namespace qwalk
