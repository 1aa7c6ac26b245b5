#include "report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace rtmix::cli {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

json config_json(const RunConfig& cfg) {
  return {{"g", cfg.params.g},   {"A", cfg.params.A},         {"L", cfg.params.L},
          {"n", cfg.params.n},   {"seed", cfg.seed},          {"config_hash", config_hash(cfg)},
          {"options", cfg.options}};
}

namespace {

json state_json(const StateVector& z) {
  const int n = z.dim();
  std::vector<double> v(z.v.data(), z.v.data() + n), m(z.m.data(), z.m.data() + n), s;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.push_back(z.sigma(i, j));
  }
  return {{"rho", z.rho}, {"v", v}, {"m", m}, {"sigma", s}, {"p", z.p}};
}

}  // namespace

json hull_json(const StateVector& z, const EnergyAtPoint& e, const HullMembership& hm) {
  json margins = json::object();
  for (const Margin& mg : hm.margins) margins[mg.name] = mg.slack;
  return {{"state", state_json(z)},
          {"e0", e.e0},
          {"e1", e.e1},
          {"class", to_string(hm.cls)},
          {"margins", margins}};
}

json selection_json(const SelectionResult& r, const SelectionOptions& opt) {
  return {{"basis_size", opt.basis_size},
          {"restarts", opt.restarts},
          {"restarts_run", r.restarts_run},
          {"best_restart", r.best_restart},
          {"step_tol", opt.step_tol},
          {"coefficients", r.f_star.coeffs()},
          {"c_star", r.c_star},
          {"epsilon_star", r.epsilon_star},
          {"J4_star", r.J4_star},
          {"iterations", r.iterations},
          {"gradient_norm", r.gradient_norm},
          {"balance_gap", r.balance_gap}};
}

json verify_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const CheckResult& c : rep.checks) {
    checks.push_back({{"suite", c.suite},
                      {"name", c.name},
                      {"passed", c.passed},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  }
  return {{"seed", rep.seed}, {"passed", rep.passed()}, {"checks", checks}};
}

std::string trajectory_csv(const ExtensionTrajectory& tr) {
  std::string s = "t,phase,a_or_r,E\n";
  for (const TrajectorySample& x : tr.samples) {
    s += format_number(x.t) + "," + to_string(x.phase) + "," + format_number(x.a_or_r) + "," +
         format_number(x.energy) + "\n";
  }
  return s;
}

std::string schedule_text(const ExtensionTrajectory& tr, const RunConfig& cfg) {
  std::string s = "[run]\nconfig_hash = " + config_hash(cfg) + "\nseed = " + std::to_string(cfg.seed) + "\n";
  int k = 0;
  for (const PhaseInterval& ph : tr.schedule) {
    s += "\n[phase." + std::to_string(k++) + "]\nname = " + to_string(ph.phase) +
         "\nt_start = " + format_number(ph.t_start) + "\nt_end = " + format_number(ph.t_end) + "\n";
  }
  return s;
}

std::string plot_script(const std::string& csv_name) {
  return R"(import csv
import os

import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = list(csv.DictReader(open(os.path.join(here, ")" +
         csv_name + R"("))))
fig, (ax_e, ax_a) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
for phase in dict.fromkeys(r["phase"] for r in rows):
    sel = [r for r in rows if r["phase"] == phase]
    t = [float(r["t"]) for r in sel]
    ax_e.plot(t, [float(r["E"]) for r in sel], label=phase)
    ax_a.plot(t, [float(r["a_or_r"]) for r in sel], label=phase)
ax_e.set_ylabel("E")
ax_a.set_ylabel("a or r")
ax_a.set_xlabel("t")
ax_e.legend()
fig.tight_layout()
fig.savefig(os.path.join(here, "trajectory.png"), dpi=150)
)";
}

}  // namespace rtmix::cli
