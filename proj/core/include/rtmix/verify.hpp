#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rtmix/hull.hpp"
#include "rtmix/plane_waves.hpp"

namespace rtmix {

using Rng = std::mt19937_64;

// Random fixtures shared by the property suites, tests and benchmarks.

Mat random_trace_free(Rng& rng, int n, double scale);
/// Random state with |rho| <= rho_max and remaining entries of size `scale`.
StateVector random_state(Rng& rng, int n, double rho_max, double scale = 1.0);
/// Random energy at a point with e[+1], e[-1] > 0.
EnergyAtPoint random_energy(Rng& rng, double e1_max = 0.5);

struct KPair {
  StateVector z1, z2;
  EnergyAtPoint e;
};

/// Two K points at the same energy with a common pressure.
/// `signs` = 0 picks both density signs at random, otherwise rho1 = -signs
/// and rho2 = +signs are forced.
KPair random_K_pair(Rng& rng, int n, const EnergyAtPoint& e, int signs = 0);

enum class ClosureKind { interior, boundary_U0, k_prime };
/// State in the closure of U but outside K, of the requested kind.
StateVector random_closure_state(Rng& rng, int n, ClosureKind kind, EnergyAtPoint& e);

/// Reference plane wave with a fixed direction (n = 2 or 3).
WaveField wave_fixture(WaveKind kind, int n, int N, const WaveOptions& base = {});

// Property suites.

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity (error or statistic)
  double tolerance = 0.0;  // pass when value <= tolerance
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Name of a check whose tolerance is corrupted to force a failure
  /// (harness self-test); empty for none.
  std::string inject_failure;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

std::vector<std::string> suite_names();
/// Runs "hull", "waves", "subsolution", "energetics" or "all".
VerifyReport run_suite(const std::string& suite, const VerifyOptions& opt = {});

}  // namespace rtmix
