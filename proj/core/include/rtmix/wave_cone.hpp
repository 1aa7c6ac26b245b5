#pragma once

#include <optional>
#include <string>

#include "rtmix/hull.hpp"

namespace rtmix {

/// A direction z in the wave cone together with a kernel element (xi, c)
/// of M_Lambda(z). `residual` is |M_Lambda(z) eta| / |eta|.
struct ConeCertificate {
  StateVector direction;
  Vec xi;
  double c = 0.0;
  double residual = 0.0;
};

inline constexpr double kKernelTol = 1e-10;

/// (n+2) x (n+1) block matrix [[sigma + p id, v], [v^T, 0], [m^T, rho]].
Mat m_lambda(const StateVector& z);

/// Right singular vectors of M_Lambda(z) whose singular value is at most
/// tol * (s_max + 1), one per column.
Mat kernel_basis(const StateVector& z, double tol = kKernelTol);

std::optional<ConeCertificate> in_lambda(const StateVector& z, double tol = kKernelTol);

/// Kernel element with c != 0. Among unit vectors of the kernel, the one with
/// the largest |c| is returned.
std::optional<ConeCertificate> in_lambda_prime(const StateVector& z, double tol = kKernelTol);

/// Unit xi with (xi, 0) in the kernel, if any.
std::optional<Vec> spatial_kernel(const StateVector& z, double tol = kKernelTol);

/// z_N = z + (1/N, 0, xi/N^2, (xi(x)v + v(x)xi)/(N^2 rho + N)) with the trace of
/// the stress increment moved to p. Throws std::invalid_argument when z has
/// no spatial kernel element or N^2 rho + N = 0.
StateVector approximate_by_lambda_prime(const StateVector& z, int N, double tol = kKernelTol);

/// Direction along which T_+-, the deviator of M and the direction itself are
/// invariant. Requires |rho| < 1.
StateVector muskat_direction(const StateVector& z);

/// (0, v, lambda v, sigma, p) with p chosen so that the kernel is nontrivial.
ConeCertificate euler_direction(const Vec& v_bar, const Mat& sigma_bar, double lambda);

/// Certificate for z2 - z1 with z1, z2 in K at the same point and p1 = p2.
/// The kernel element is built explicitly (xi orthogonal to v2 - v1,
/// c = -v1.xi); when it fails the residual check, std::domain_error.
ConeCertificate segment_between_K(const StateVector& z1, const StateVector& z2,
                                  const EnergyAtPoint& e, double tol = 1e-9);

enum class PerturbationBranch { muskat, euler_plus, euler_minus, k_prime_euler, none };

std::string to_string(PerturbationBranch b);

struct PerturbationResult {
  StateVector direction;
  double pi_norm = 0.0;
  bool meets_min_norm = false;
  PerturbationBranch branch = PerturbationBranch::none;
};

/// Direction zbar in Lambda with z +- zbar in the closure of U, scaled by
/// bisection (resolution 1e-8) to the longest admissible half-length.
PerturbationResult perturbation_direction(const StateVector& z, const EnergyAtPoint& e,
                                          double min_norm = 0.0);

}  // namespace rtmix
