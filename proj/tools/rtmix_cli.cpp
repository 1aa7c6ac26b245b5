#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "config.hpp"
#include "report.hpp"
#include "rtmix/energetics.hpp"
#include "rtmix/extensions.hpp"
#include "rtmix/hull.hpp"
#include "rtmix/selection.hpp"
#include "rtmix/subsolution.hpp"
#include "rtmix/verify.hpp"

namespace {

using namespace rtmix;
using namespace rtmix::cli;

constexpr int kPass = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Globals {
  std::string config_path;
  std::optional<double> g, A, L;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

RunConfig resolve(const Globals& gl) {
  RunConfig cfg;
  if (!gl.config_path.empty()) cfg = config_from_map(load_key_values(gl.config_path));
  if (gl.g) cfg.params.g = *gl.g;
  if (gl.A) cfg.params.A = *gl.A;
  if (gl.L) cfg.params.L = *gl.L;
  if (gl.n) cfg.params.n = *gl.n;
  if (gl.seed) cfg.seed = *gl.seed;
  if (gl.out) cfg.out_dir = *gl.out;
  cfg.params.validate();
  return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void emit(const RunConfig& cfg, const std::string& name, json body) {
  body["config"] = config_json(cfg);
  const std::string text = body.dump(2) + "\n";
  write_atomic(out_path(cfg, name), text);
  std::cout << text;
}

// hull

struct HullArgs {
  std::string state_file;
  double rho = 0.0, p = 0.0, e0 = 1.0, eps = 0.0, xn = 0.0;
  std::vector<double> v, m, sigma;
};

std::vector<double> list_of(const std::map<std::string, std::string>& kv, const std::string& key) {
  std::vector<double> out;
  auto it = kv.find(key);
  if (it == kv.end()) return out;
  std::string item;
  std::istringstream in(it->second);
  while (std::getline(in, item, ',')) out.push_back(to_double(key, item));
  return out;
}

int cmd_hull(const RunConfig& cfg, HullArgs h) {
  const int n = cfg.params.n;
  if (!h.state_file.empty()) {
    const auto kv = load_key_values(h.state_file);
    auto scalar = [&](const std::string& k, double& dst) {
      if (auto it = kv.find(k); it != kv.end()) dst = to_double(k, it->second);
    };
    scalar("rho", h.rho);
    scalar("p", h.p);
    scalar("e0", h.e0);
    scalar("eps", h.eps);
    scalar("xn", h.xn);
    if (kv.count("v")) h.v = list_of(kv, "v");
    if (kv.count("m")) h.m = list_of(kv, "m");
    if (kv.count("sigma")) h.sigma = list_of(kv, "sigma");
  }
  auto vec = [n](const std::vector<double>& x, const char* name) {
    if (x.empty()) return Vec(Vec::Zero(n));
    if (static_cast<int>(x.size()) != n) throw ConfigError(std::string(name) + " needs n entries");
    return Vec(Eigen::Map<const Vec>(x.data(), n));
  };
  Mat sigma = Mat::Zero(n, n);
  if (!h.sigma.empty()) {
    if (static_cast<int>(h.sigma.size()) != n * n) throw ConfigError("sigma needs n*n entries (row-major)");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sigma(i, j) = h.sigma[i * n + j];
    }
  }
  const StateVector z(h.rho, vec(h.v, "v"), vec(h.m, "m"), sigma, h.p);
  validate(z);
  const EnergyAtPoint e{h.e0, 0.0 - h.eps * cfg.params.gA() * h.xn};
  const HullMembership hm = classify(z, e);
  emit(cfg, "hull.json", hull_json(z, e, hm));
  return hm.in_closure() ? kPass : kNegative;
}

// select

struct SelectArgs {
  int K = 6;
  int restarts = 20;
  double step_tol = 1e-12;
};

int cmd_select(const RunConfig& cfg, const SelectArgs& s) {
  SelectionOptions opt;
  opt.basis_size = s.K;
  opt.restarts = s.restarts;
  opt.step_tol = s.step_tol;
  opt.seed = cfg.seed;
  opt.gA = cfg.params.gA();
  opt.n = cfg.params.n;
  const SelectionResult r = minimize(opt);
  emit(cfg, "selection.json", selection_json(r, opt));
  return kPass;
}

// evolve

struct EvolveArgs {
  std::string scenario = "demix";
  std::string t_max = "auto";
  double dt_out = 0.05;
};

int cmd_evolve(const RunConfig& cfg, const EvolveArgs& a) {
  const PhysicalParams& p = cfg.params;
  ExtensionTrajectory tr;
  if (a.scenario == "mix") {
    const double t_max = a.t_max == "auto" ? 10.0 * p.T0() : to_double("t-max", a.t_max);
    tr = mixing_trajectory(p, t_max, a.dt_out);
  } else {
    const RotationSolution rot = solve_rotation(p);
    tr = demixing_trajectory(p, a.dt_out, rot);
    if (a.t_max != "auto") {
      const double t_max = to_double("t-max", a.t_max);
      std::erase_if(tr.samples, [t_max](const TrajectorySample& s) { return s.t > t_max; });
    }
  }
  write_atomic(out_path(cfg, "trajectory.csv"), trajectory_csv(tr));
  write_atomic(out_path(cfg, "schedule.txt"), schedule_text(tr, cfg));
  write_atomic(out_path(cfg, "plot_trajectory.py"), plot_script("trajectory.csv"));
  std::vector<std::pair<double, double>> s;
  for (const auto& x : tr.samples) s.emplace_back(x.t, x.energy);
  const AdmissibilityVerdict v = admissibility({s, p.E0(), a.scenario});
  std::cout << "rows=" << tr.samples.size() << " t_last=" << format_number(tr.samples.back().t)
            << " E_last=" << format_number(tr.samples.back().energy) << " monotone=" << (v.monotone ? "yes" : "no")
            << " config_hash=" << config_hash(cfg) << "\n";
  return v.admissible && v.monotone ? kPass : kNegative;
}

// verify

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& inject) {
  VerifyOptions opt;
  opt.seed = cfg.seed;
  opt.inject_failure = inject;
  const VerifyReport rep = run_suite(suite, opt);
  json body = verify_json(rep);
  body["suite"] = suite;
  body["config"] = config_json(cfg);
  write_atomic(out_path(cfg, "verify_" + suite + ".json"), body.dump(2) + "\n");
  for (const CheckResult& c : rep.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.suite << "." << c.name << " value=" << format_number(c.value)
              << " tol=" << format_number(c.tolerance) << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  }
  std::cout << (rep.passed() ? "suite passed" : "suite failed") << "\n";
  return rep.passed() ? kPass : kNegative;
}

// energy

int cmd_energy(const RunConfig& cfg, const std::vector<double>& times, const std::string& scenario) {
  const PhysicalParams& p = cfg.params;
  const double T0 = p.T0();
  std::optional<RotationSolution> rot;
  if (scenario == "demix") rot = solve_rotation(p);
  json rows = json::array();
  for (double t : times) {
    if (t < 0.0) throw std::invalid_argument("t must be >= 0");
    double E;
    std::string phase;
    if (t <= T0) {
      E = growth_energy(t, p);
      phase = "growth";
    } else if (scenario == "mix") {
      E = mixing_energy(t, p);
      phase = "mixing";
    } else if (scenario == "demix") {
      const double Te = T_end_of(rot->T_tilde, p);
      if (t <= rot->T_tilde) {
        E = rotation_energy(rot->r_at(t, p), p);
        phase = "rotation";
      } else if (t <= Te) {
        E = shrink_energy(t, rot->T_tilde, p);
        phase = "shrink";
      } else {
        E = -p.E0();
        phase = "rest";
      }
    } else {
      throw HorizonError("t > T0 needs --scenario mix or demix");
    }
    rows.push_back({{"t", t}, {"phase", phase}, {"E", E}, {"E_over_gAL2", E / p.E0()}});
  }
  json body{{"scenario", scenario}, {"T0", T0}, {"samples", rows}};
  if (rot) {
    body["T_tilde"] = rot->T_tilde;
    body["T_end"] = T_end_of(rot->T_tilde, p);
  }
  emit(cfg, "energy.json", body);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rtmix: relaxed Rayleigh-Taylor subsolution toolkit"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--config", gl.config_path, "key=value configuration file");
  app.add_option("--g", gl.g, "gravity");
  app.add_option("--A", gl.A, "Atwood number");
  app.add_option("--L", gl.L, "half height of the domain");
  app.add_option("--n", gl.n, "space dimension");
  app.add_option("--seed", gl.seed, "seed for randomized suites and restarts");
  app.add_option("--out", gl.out, "output directory");

  HullArgs ha;
  auto* hull = app.add_subcommand("hull", "classify a state against the hull at a point");
  hull->add_option("--state", ha.state_file, "key=value state file");
  hull->add_option("--rho", ha.rho);
  hull->add_option("--v", ha.v)->delimiter(',');
  hull->add_option("--m", ha.m)->delimiter(',');
  hull->add_option("--sigma", ha.sigma, "row-major, trace free")->delimiter(',');
  hull->add_option("--p", ha.p);
  hull->add_option("--e0", ha.e0);
  hull->add_option("--eps", ha.eps);
  hull->add_option("--xn", ha.xn);

  SelectArgs sa;
  auto* sel = app.add_subcommand("select", "minimize the fourth-order dissipation coefficient");
  sel->add_option("--K", sa.K, "number of sine modes");
  sel->add_option("--restarts", sa.restarts);
  sel->add_option("--step-tol", sa.step_tol);

  EvolveArgs ea;
  auto* evo = app.add_subcommand("evolve", "growth plus mixing or demixing continuation");
  evo->add_option("--scenario", ea.scenario)->check(CLI::IsMember({"mix", "demix"}));
  evo->add_option("--t-max", ea.t_max, "end time or 'auto'");
  evo->add_option("--dt-out", ea.dt_out, "output spacing");

  std::string suite = "all", inject;
  auto* ver = app.add_subcommand("verify", "run property suites");
  ver->add_option("--suite", suite)->check(CLI::IsMember({"hull", "waves", "subsolution", "energetics", "all"}));
  ver->add_option("--inject-failure", inject, "corrupt the tolerance of the named check ('*' for all)");

  std::vector<double> times{0.0};
  std::string escen = "growth";
  auto* en = app.add_subcommand("energy", "total energy of the selected subsolution at given times");
  en->add_option("--t", times, "times")->delimiter(',');
  en->add_option("--scenario", escen)->check(CLI::IsMember({"growth", "mix", "demix"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const RunConfig cfg = resolve(gl);
    if (*hull) return cmd_hull(cfg, ha);
    if (*sel) return cmd_select(cfg, sa);
    if (*evo) return cmd_evolve(cfg, ea);
    if (*ver) return cmd_verify(cfg, suite, inject);
    if (*en) return cmd_energy(cfg, times, escen);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kNegative;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}
