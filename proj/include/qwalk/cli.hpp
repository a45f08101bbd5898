#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/analytic.hpp"
#include "qwalk/classify.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/io.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/probes.hpp"

namespace qwalk::cli {

inline constexpr int kLimitXMax = 25;       // site range emitted by `limit`
inline constexpr long long kMaxGrid = 1000000;  // sweep grid cap
inline constexpr double kAngleSlack = 1e-12;

// An axis value: a single number "0.5", a comma list "0,0.25,0.5", or a
// linspace "lo:hi:n" (n evenly spaced points, endpoints included).
inline std::vector<double> parse_axis(const std::string& text, bool pi_units) {
  auto number = [&](const std::string& tok) {
    size_t used = 0;
    double v;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid numeric value: '" + tok + "'");
    }
    if (used != tok.size())
      throw std::invalid_argument("invalid numeric value: '" + tok + "'");
    return pi_units ? v * std::numbers::pi : v;
  };

  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string lo_s, hi_s, n_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, n_s) || n_s.empty())
      throw std::invalid_argument("linspace axis must be lo:hi:n: '" + text +
                                  "'");
    const double lo = number(lo_s), hi = number(hi_s);
    const long n = std::strtol(n_s.c_str(), nullptr, 10);
    if (n < 1) throw std::invalid_argument("linspace needs n >= 1");
    if (n == 1) return {lo};
    for (long i = 0; i < n; ++i)
      out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(n - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(number(tok));
  if (out.empty()) throw std::invalid_argument("empty axis: '" + text + "'");
  return out;
}

struct Options {
  std::string init = "psi1";
  // Axis strings; empty means "use the default below".
  std::string eta, alpha, beta, phi, theta, gamma, xi1, zeta1, xi2, zeta2;
  std::string steps = "50";
  int num_k = 0;  // 0 -> default_num_k(T)
  std::string output;
  std::string format = "csv";
  bool pi_units = false;
  int workers = 0;
  bool allow_any_angle = false;
  bool record_states = false;
  std::string suite;  // classify only
  ClassifyConfig classify_cfg;

  std::vector<double> axis(const std::string& text, double fallback) const {
    if (text.empty()) return {fallback};
    return parse_axis(text, pi_units);
  }
};

namespace detail {

constexpr double kPi = std::numbers::pi;

inline void check_angle(const char* name, double v, bool allow_any) {
  if (allow_any) return;
  if (v < -kAngleSlack || v > kPi / 2 + kAngleSlack)
    throw std::invalid_argument(std::string(name) +
                                " outside [0, pi/2]; pass --allow-any-angle "
                                "to lift the restriction");
}

struct PointParams {
  double eta, alpha, beta, phi, theta, gamma, xi1, zeta1, xi2, zeta2;
};

inline InitialStateSpec make_init(const std::string& family,
                                  const PointParams& p) {
  if (family == "psi1") return InitialStateSpec::psi1(p.eta, p.phi);
  if (family == "psi2") return InitialStateSpec::psi2(p.alpha, p.phi);
  if (family == "psi3")
    return InitialStateSpec::psi3(p.alpha, p.eta, p.beta, p.phi);
  throw std::invalid_argument("unknown init family: " + family);
}

inline CoinSpec make_coin_spec(const PointParams& p) {
  return {{p.theta, p.xi1, p.zeta1}, {p.gamma, p.xi2, p.zeta2}};
}

inline std::string family_name(InitialFamily f) {
  switch (f) {
    case InitialFamily::kPsi1: return "psi1";
    case InitialFamily::kPsi2: return "psi2";
    case InitialFamily::kPsi3: return "psi3";
  }
  return "?";
}

// Single-valued axes for the scalar subcommands.
inline PointParams scalar_point(const Options& o) {
  auto one = [&](const char* name, const std::string& s, double fb) {
    const auto v = o.axis(s, fb);
    if (v.size() != 1)
      throw std::invalid_argument(std::string(name) +
                                  ": this subcommand takes a single value");
    check_angle(name, v[0], o.allow_any_angle);
    return v[0];
  };
  PointParams p{};
  p.eta = one("--eta", o.eta, kPi / 4);
  p.alpha = one("--alpha", o.alpha, kPi / 4);
  p.beta = one("--beta", o.beta, kPi / 4);
  p.phi = one("--phi", o.phi, 0.0);
  p.theta = one("--theta", o.theta, kPi / 4);
  p.gamma = one("--gamma", o.gamma, kPi / 4);
  p.xi1 = one("--xi1", o.xi1, 0.0);
  p.zeta1 = one("--zeta1", o.zeta1, 0.0);
  p.xi2 = one("--xi2", o.xi2, 0.0);
  p.zeta2 = one("--zeta2", o.zeta2, 0.0);
  return p;
}

inline int scalar_steps(const Options& o) {
  const long v = std::strtol(o.steps.c_str(), nullptr, 10);
  if (v < 1 || o.steps.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("--steps must be a positive integer");
  return static_cast<int>(v);
}

inline nlohmann::ordered_json effective_config(const Options& o,
                                               const std::string& command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["init"] = o.init;
  auto put = [&](const char* k, const std::string& s) {
    j[k] = s.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(s);
  };
  put("eta", o.eta);
  put("alpha", o.alpha);
  put("beta", o.beta);
  put("phi", o.phi);
  put("theta", o.theta);
  put("gamma", o.gamma);
  put("xi1", o.xi1);
  put("zeta1", o.zeta1);
  put("xi2", o.xi2);
  put("zeta2", o.zeta2);
  j["steps"] = o.steps;
  j["num_k"] = o.num_k;
  j["format"] = o.format;
  j["pi_units"] = o.pi_units;
  j["workers"] = o.workers;
  j["allow_any_angle"] = o.allow_any_angle;
  j["record_states"] = o.record_states;
  if (!o.suite.empty()) j["suite"] = o.suite;
  j["classify"] = {{"loc_mass", o.classify_cfg.loc_mass},
                   {"r_trap", o.classify_cfg.r_trap},
                   {"pt_mass", o.classify_cfg.pt_mass},
                   {"gauss_tol", o.classify_cfg.gauss_tol},
                   {"min_frac", o.classify_cfg.min_frac},
                   {"window", o.classify_cfg.window},
                   {"edge_floor", o.classify_cfg.edge_floor}};
  return j;
}

// Writes the table to --output (or stdout) and, for file output, echoes the
// effective configuration into a sidecar next to it.
inline void emit(const io::Table& table, const Options& o,
                 const std::string& command) {
  if (o.output.empty()) {
    table.write(std::cout, o.format);
    return;
  }
  std::ofstream os(o.output, std::ios::binary);
  if (!os) throw ResourceError("cannot open output file: " + o.output);
  table.write(os, o.format);
  std::ofstream sidecar(o.output + ".config.json", std::ios::binary);
  if (!sidecar)
    throw ResourceError("cannot open sidecar file: " + o.output +
                        ".config.json");
  sidecar << effective_config(o, command).dump(2) << '\n';
}

inline std::string states_path(const std::string& output) {
  const size_t dot = output.find_last_of('.');
  if (dot == std::string::npos || output.find('/', dot) != std::string::npos)
    return output + ".states";
  return output.substr(0, dot) + ".states" + output.substr(dot);
}

inline int cmd_run(const Options& o) {
  const PointParams p = scalar_point(o);
  const int steps = scalar_steps(o);
  if (o.record_states && o.output.empty())
    throw std::invalid_argument("--record-states requires --output");

  RunOptions ro;
  ro.record_states = true;  // needed for the per-step von Neumann entropy
  const Trajectory traj = run({make_coin_spec(p), make_init(o.init, p), steps}, ro);

  io::Table table;
  table.columns = {"step", "variance", "shannon_entropy",
                   "von_neumann_entropy"};
  for (int x = -steps; x <= steps; ++x)
    table.columns.push_back("p[" + std::to_string(x) + "]");
  for (size_t t = 0; t < traj.snapshots.size(); ++t) {
    const auto& snap = traj.snapshots[t];
    std::vector<io::Cell> row;
    row.emplace_back(static_cast<long long>(snap.step));
    row.emplace_back(mean_and_variance(snap).second);
    row.emplace_back(shannon_entropy(snap));
    row.emplace_back(position_entropy(traj.states[t]));
    for (int x = -steps; x <= steps; ++x) row.emplace_back(snap.at(x));
    table.add_row(std::move(row));
  }
  emit(table, o, "run");

  if (o.record_states) {
    io::Table st;
    st.columns = {"step", "x"};
    for (const char* z : {"00", "01", "10", "11"}) {
      st.columns.push_back(std::string("re_") + z);
      st.columns.push_back(std::string("im_") + z);
    }
    for (const auto& state : traj.states)
      for (int x = state.x_min(); x <= state.x_max(); ++x) {
        std::vector<io::Cell> row;
        row.emplace_back(static_cast<long long>(state.step));
        row.emplace_back(static_cast<long long>(x));
        for (int z = 0; z < 4; ++z) {
          row.emplace_back(state.site(x)[z].real());
          row.emplace_back(state.site(x)[z].imag());
        }
        st.add_row(std::move(row));
      }
    Options so = o;
    so.output = states_path(o.output);
    emit(st, so, "run-states");
  }
  return 0;
}

inline std::vector<int> parse_steps_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const long v = std::strtol(tok.c_str(), nullptr, 10);
    if (v < 1 || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("--steps entries must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw std::invalid_argument("--steps list is empty");
  return out;
}

struct SweepRow {
  PointParams p;
  int step;
  double variance, shannon, von_neumann;
  std::string kind;
};

inline int cmd_sweep(const Options& o, bool entropy_only) {
  struct Axis {
    const char* name;
    std::vector<double> values;
  };
  std::vector<Axis> axes = {
      {"--eta", o.axis(o.eta, kPi / 4)},
      {"--alpha", o.axis(o.alpha, kPi / 4)},
      {"--beta", o.axis(o.beta, kPi / 4)},
      {"--phi", o.axis(o.phi, 0.0)},
      {"--theta", o.axis(o.theta, kPi / 4)},
      {"--gamma", o.axis(o.gamma, kPi / 4)},
      {"--xi1", o.axis(o.xi1, 0.0)},
      {"--zeta1", o.axis(o.zeta1, 0.0)},
      {"--xi2", o.axis(o.xi2, 0.0)},
      {"--zeta2", o.axis(o.zeta2, 0.0)},
  };
  long long total = 1;
  for (const auto& ax : axes) {
    for (double v : ax.values) check_angle(ax.name, v, o.allow_any_angle);
    total *= static_cast<long long>(ax.values.size());
    if (total > kMaxGrid)
      throw ResourceError("sweep grid exceeds the configured point cap");
  }
  const std::vector<int> steps = parse_steps_list(o.steps);
  const int max_step = *std::max_element(steps.begin(), steps.end());

  // Grid points in lexicographic axis order; index decodes rightmost-fastest.
  std::vector<PointParams> points(static_cast<size_t>(total));
  for (long long i = 0; i < total; ++i) {
    long long rem = i;
    double vals[10];
    for (int a = 9; a >= 0; --a) {
      const auto& vs = axes[static_cast<size_t>(a)].values;
      vals[a] = vs[static_cast<size_t>(rem % static_cast<long long>(vs.size()))];
      rem /= static_cast<long long>(vs.size());
    }
    points[static_cast<size_t>(i)] = {vals[0], vals[1], vals[2], vals[3],
                                      vals[4], vals[5], vals[6], vals[7],
                                      vals[8], vals[9]};
  }

  std::vector<std::vector<SweepRow>> results(points.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= points.size() || failed.load()) return;
      try {
        const PointParams& p = points[i];
        RunOptions ro;
        ro.record_states = true;
        const Trajectory traj =
            run({make_coin_spec(p), make_init(o.init, p), max_step}, ro);
        for (int s : steps) {
          const auto& snap = traj.snapshots[static_cast<size_t>(s)];
          SweepRow row;
          row.p = p;
          row.step = s;
          row.variance = mean_and_variance(snap).second;
          row.shannon = shannon_entropy(snap);
          row.von_neumann =
              position_entropy(traj.states[static_cast<size_t>(s)]);
          row.kind = entropy_only
                         ? std::string()
                         : to_string(classify_snapshot(snap, o.classify_cfg).kind);
          results[i].push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        error = e.what();
        failed.store(true);
        return;
      }
    }
  };

  unsigned n_workers = o.workers > 0
                           ? static_cast<unsigned>(o.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers,
                                 static_cast<unsigned>(points.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failed.load()) throw std::domain_error("sweep point failed: " + error);

  io::Table table;
  table.columns = {"init", "eta",  "alpha", "beta", "phi",  "theta",
                   "gamma", "xi1", "zeta1", "xi2",  "zeta2", "step"};
  if (entropy_only) {
    table.columns.push_back("shannon_entropy");
    table.columns.push_back("von_neumann_entropy");
  } else {
    table.columns.push_back("variance");
    table.columns.push_back("shannon_entropy");
    table.columns.push_back("von_neumann_entropy");
    table.columns.push_back("class");
  }
  for (const auto& group : results)
    for (const auto& r : group) {
      std::vector<io::Cell> row = {o.init,    r.p.eta, r.p.alpha, r.p.beta,
                                   r.p.phi,   r.p.theta, r.p.gamma, r.p.xi1,
                                   r.p.zeta1, r.p.xi2, r.p.zeta2,
                                   static_cast<long long>(r.step)};
      if (!entropy_only) row.emplace_back(r.variance);
      row.emplace_back(r.shannon);
      row.emplace_back(r.von_neumann);
      if (!entropy_only) row.emplace_back(r.kind);
      table.add_row(std::move(row));
    }
  emit(table, o, entropy_only ? "entropy" : "sweep");
  return 0;
}

inline LimitingDistribution limit_for(const Options& o, const PointParams& p) {
  if (p.xi1 != 0.0 || p.zeta1 != 0.0 || p.xi2 != 0.0 || p.zeta2 != 0.0)
    throw std::domain_error(
        "limit: closed form requires plain rotation sub-coins");
  if (p.theta != p.gamma)
    throw std::domain_error("limit: closed form requires theta == gamma");
  const auto beta = BetaVector::from_coin_vector(
      initial_coin_vector(make_init(o.init, p)));
  return limiting_pdd(p.theta, beta);
}

inline int cmd_limit(const Options& o) {
  const PointParams p = scalar_point(o);
  const LimitingDistribution dist = limit_for(o, p);
  io::Table table;
  table.columns = {"x", "p"};
  for (int x = -kLimitXMax; x <= kLimitXMax; ++x)
    table.add_row({static_cast<long long>(x), dist.at(x)});
  emit(table, o, "limit");
  return 0;
}

inline int cmd_compare(const Options& o) {
  const PointParams p = scalar_point(o);
  const int steps = scalar_steps(o);
  const LimitingDistribution dist = limit_for(o, p);
  const WalkParams wp{make_coin_spec(p), make_init(o.init, p), steps};

  const Trajectory traj = run(wp);
  const int window = std::min(steps, 10);
  PddSnapshot avg = traj.snapshots.back();
  for (int t = steps - window; t < steps; ++t) {
    const auto& snap = traj.snapshots[static_cast<size_t>(t)];
    for (int x = avg.x_min(); x <= avg.x_max(); ++x)
      avg.probs[static_cast<size_t>(avg.step + x)] += snap.at(x);
  }
  for (auto& v : avg.probs) v /= window + 1;

  const int num_k = o.num_k > 0 ? o.num_k : default_num_k(steps);
  const PddSnapshot fourier = evolve_fourier(wp, num_k);
  const PddSnapshot& last = traj.snapshots.back();

  io::Table table;
  table.columns = {"x",       "p_time_avg",    "p_fourier",
                   "p_final", "p_limit",       "dev_avg_limit",
                   "dev_fourier_final"};
  const int xmax = std::min(kLimitXMax, steps);
  for (int x = -xmax; x <= xmax; ++x) {
    const double pl = dist.at(x);
    table.add_row({static_cast<long long>(x), avg.at(x), fourier.at(x),
                   last.at(x), pl, std::abs(avg.at(x) - pl),
                   std::abs(fourier.at(x) - last.at(x))});
  }
  emit(table, o, "compare");
  return 0;
}

inline int cmd_classify(const Options& o) {
  io::Table table;
  if (!o.suite.empty()) {
    if (o.suite != "tables")
      throw std::invalid_argument("unknown suite: " + o.suite);
    table.columns = {"table",  "row",   "init",     "theta", "gamma",
                     "steps",  "expected", "observed", "match"};
    for (const auto& probe : taxonomy_probes()) {
      const auto cls =
          classify_distribution(run(probe.params), o.classify_cfg);
      table.add_row({probe.table, probe.row,
                     family_name(probe.params.init.family),
                     probe.params.coin.sub1.theta,
                     probe.params.coin.sub2.theta,
                     static_cast<long long>(probe.params.steps),
                     std::string(to_string(probe.expected)),
                     std::string(to_string(cls.kind)),
                     static_cast<long long>(cls.kind == probe.expected)});
    }
    emit(table, o, "classify");
    return 0;
  }

  const PointParams p = scalar_point(o);
  const int steps = scalar_steps(o);
  const Trajectory traj =
      run({make_coin_spec(p), make_init(o.init, p), steps});
  const auto cls = classify_distribution(traj, o.classify_cfg);
  const auto transport = analyze_transport(traj, o.classify_cfg);

  std::string peaks;
  for (const auto& pk : cls.peaks) {
    if (!peaks.empty()) peaks += ' ';
    peaks += std::to_string(pk.x) + ":" + io::format_double(pk.p);
  }
  table.columns = {"init",        "theta",        "gamma",
                   "steps",       "class",        "tv_distance",
                   "peaks",       "symmetry_defect", "self_trapped",
                   "perfect_transfer"};
  table.add_row({o.init, p.theta, p.gamma, static_cast<long long>(steps),
                 std::string(to_string(cls.kind)), cls.fit.tv_distance, peaks,
                 symmetry_defect(traj.snapshots.back()),
                 static_cast<long long>(transport.self_trapped),
                 static_cast<long long>(transport.perfect_transfer)});
  emit(table, o, "classify");
  return 0;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"1-D discrete-time quantum walk with a two-qubit coin"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub, bool multi_steps) {
    sub->add_option("--init", o.init, "initial-state family")
        ->check(CLI::IsMember({"psi1", "psi2", "psi3"}));
    sub->add_option("--eta", o.eta, "psi1/psi3 angle eta");
    sub->add_option("--alpha", o.alpha, "psi2/psi3 angle alpha");
    sub->add_option("--beta", o.beta, "psi3 mixing angle beta");
    sub->add_option("--phi", o.phi, "relative phase phi");
    sub->add_option("--theta", o.theta, "sub-coin 1 rotation angle");
    sub->add_option("--gamma", o.gamma, "sub-coin 2 rotation angle");
    sub->add_option("--xi1", o.xi1, "sub-coin 1 SU(2) phase xi");
    sub->add_option("--zeta1", o.zeta1, "sub-coin 1 SU(2) phase zeta");
    sub->add_option("--xi2", o.xi2, "sub-coin 2 SU(2) phase xi");
    sub->add_option("--zeta2", o.zeta2, "sub-coin 2 SU(2) phase zeta");
    sub->add_option("--steps", o.steps,
                    multi_steps ? "step list, e.g. 8,10" : "number of steps");
    sub->add_option("--output", o.output, "output file (default: stdout)");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--pi-units", o.pi_units,
                  "interpret angle values as multiples of pi");
    sub->add_option("--workers", o.workers, "worker thread count");
    sub->add_flag("--allow-any-angle", o.allow_any_angle,
                  "accept angles outside [0, pi/2]");
    sub->add_flag("--record-states", o.record_states,
                  "also write per-site amplitudes");
    sub->add_option("--loc-mass", o.classify_cfg.loc_mass,
                    "localization mass threshold");
    sub->add_option("--gauss-tol", o.classify_cfg.gauss_tol,
                    "total-variation cutoff for the Gaussian class");
    sub->add_option("--min-frac", o.classify_cfg.min_frac,
                    "relative peak height threshold");
    sub->add_option("--window", o.classify_cfg.window,
                    "peak dominance window");
    sub->add_option("--edge-floor", o.classify_cfg.edge_floor,
                    "absolute qualifying height at the light-cone front");
  };

  auto* c_run = app.add_subcommand("run", "single walk; per-step series");
  add_common(c_run, false);
  auto* c_sweep = app.add_subcommand("sweep", "parameter grid sweep");
  add_common(c_sweep, true);
  auto* c_limit =
      app.add_subcommand("limit", "closed-form limiting distribution");
  add_common(c_limit, false);
  auto* c_compare = app.add_subcommand(
      "compare", "simulation vs Fourier evolution vs closed form");
  add_common(c_compare, false);
  c_compare->add_option("--num-k", o.num_k, "momentum grid size (>= 2T+3)");
  auto* c_classify =
      app.add_subcommand("classify", "distribution taxonomy");
  add_common(c_classify, false);
  c_classify->add_option("--suite", o.suite, "probe suite name ('tables')");
  auto* c_entropy =
      app.add_subcommand("entropy", "sweep emitting entropy columns only");
  add_common(c_entropy, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_run->parsed()) return detail::cmd_run(o);
    if (c_sweep->parsed()) return detail::cmd_sweep(o, false);
    if (c_entropy->parsed()) return detail::cmd_sweep(o, true);
    if (c_limit->parsed()) return detail::cmd_limit(o);
    if (c_compare->parsed()) return detail::cmd_compare(o);
    if (c_classify->parsed()) return detail::cmd_classify(o);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource error: out of memory\n";
    return 4;
  }
}

}  // namespace qwalk::cli
