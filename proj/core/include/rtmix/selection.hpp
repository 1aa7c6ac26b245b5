#pragma once

#include <cstdint>
#include <vector>

#include "rtmix/energetics.hpp"

namespace rtmix {

struct SelectionOptions {
  int basis_size = 6;
  int restarts = 20;
  double step_tol = 1e-12;
  int max_iterations = 500;
  std::uint64_t seed = 1;
  double gA = 1.0;
  int n = 2;
};

struct SelectionResult {
  Profile f_star;
  double c_star = 0.0;
  double epsilon_star = 0.0;
  double J4_star = 0.0;
  int iterations = 0;          // of the winning restart
  double gradient_norm = 0.0;  // of the winning restart
  int restarts_run = 0;
  int best_restart = -1;
  double balance_gap = 0.0;  // max_y |lim G+/t^4 - lim G-/t^4| at epsilon_star
};

/// J_tilde and its gradient with respect to (c_1..c_K, c).
double J_tilde_with_gradient(const std::vector<double>& x, double gA, std::vector<double>* grad);

/// d I1 / d c_k, d I2 / d c_k (k = 1..K) by quadrature of the analytic integrands.
void I_gradients(const Profile& f, std::vector<double>& dI1, std::vector<double>& dI2);

/// Epsilon balancing lim G+/t^4 and lim G-/t^4 in least squares over y,
/// clamped to [0, 2/n], for a(t) = c t^2 / 2.
double balance_epsilon(const Profile& f, double c, double gA, int n, double* gap = nullptr);

/// BFGS over (coefficients, c) from random feasible starts; infeasible trial
/// points are rejected in the line search.
SelectionResult minimize(const SelectionOptions& opt);

struct UniquenessReport {
  long probes = 0;
  long violations = 0;
  double worst_gap = 0.0;          // min over probes of J_tilde - J4_star
  double local_growth_order = 0.0;  // fitted exponent of J_tilde - J4_star vs distance
};

UniquenessReport audit_uniqueness(const SelectionResult& res, long n_probes, int basis_size, double gA,
                                  std::uint64_t seed);

struct CriticalPointReport {
  std::vector<double> lambdas;         // real roots of lambda^3 - 3 lambda + 2 in span{id}
  std::vector<double> S_values;        // S(lambda id)
  std::vector<double> gradient_norms;  // L2(0,1) norm of grad J_hat at lambda id
  double gradient_norm_2id = 0.0;
};

CriticalPointReport critical_point_audit();

}  // namespace rtmix
