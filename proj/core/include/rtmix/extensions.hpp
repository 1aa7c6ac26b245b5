#pragma once

#include <string>
#include <vector>

#include "rtmix/hull.hpp"
#include "rtmix/ode.hpp"
#include "rtmix/params.hpp"

namespace rtmix {

enum class Phase { growth, rotation, shrink, mixing };
std::string to_string(Phase p);

/// Raised when a time lies outside the phase an operation belongs to.
class PhaseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A relaxed state together with its energy at the same point.
struct PhaseState {
  StateVector z;
  EnergyAtPoint e;
  bool in_zone = false;
};

// Mixing continuation (t >= T0).

double mixing_epsilon(double t, const PhysicalParams& p);
/// delta0 enters e_tilde only; fields follow the closed forms for t >= T0.
PhaseState mixing_state(double xn, double t, const PhysicalParams& p, double delta0 = 0.0);
/// True when the first branch of the max is active for x_n >= 0 (sufficient condition).
bool mixing_first_branch(double t, const PhysicalParams& p);
double mixing_energy(double t, const PhysicalParams& p);

// Demixing continuation.

/// int_0^L (y^2 - L^2)^2 / (1 + r y)^2 dy for r >= -1/L.
double I_rot(double r, double L);
/// Right-hand side of the rotation ODE.
double rotation_rate(double r, const PhysicalParams& p);

struct RotationSolution {
  OdeSolution ode;
  double T0 = 0.0;
  double T_tilde = 0.0;
  double r_at(double t, const PhysicalParams& p) const;
};

/// Adaptive RK45 from r(T0) = 1/L until r = -1/L; throws std::runtime_error
/// when the event is not reached before 10 T0.
RotationSolution solve_rotation(const PhysicalParams& p, double ode_tol = 1e-10);

double rotation_energy(double r, const PhysicalParams& p);
/// (rdot^2/4) I(r) + (4/9) gA L^3 r + (1/3) gA L^2 with rdot from the ODE.
double rotation_energy_quadrature(double r, const PhysicalParams& p);

double shrink_a(double t, double T_end, const PhysicalParams& p);
double shrink_adot(double t, double T_end, const PhysicalParams& p);
double shrink_energy(double t, double T_tilde, const PhysicalParams& p);
double T_end_of(double T_tilde, const PhysicalParams& p);

/// Growth-phase energy of the selected subsolution, gA L^2 - (gA)^3 t^4 / 81.
double growth_energy(double t, const PhysicalParams& p);

PhaseState demixing_state(double xn, double t, const PhysicalParams& p, const RotationSolution& rot, Phase phase,
                          double delta0 = 0.0);

struct PhaseInterval {
  double t_start, t_end;
  Phase phase;
};

struct TrajectorySample {
  double t;
  Phase phase;
  double a_or_r;
  double energy;
};

struct ExtensionTrajectory {
  PhysicalParams params;
  std::vector<PhaseInterval> schedule;
  std::vector<TrajectorySample> samples;
};

/// Growth on [0, T0] then mixing on [T0, t_max]; samples every dt plus the
/// phase boundaries.
ExtensionTrajectory mixing_trajectory(const PhysicalParams& p, double t_max, double dt);
/// Growth, rotation and shrink on [0, T_end].
ExtensionTrajectory demixing_trajectory(const PhysicalParams& p, double dt, const RotationSolution& rot);
/// `count` samples spread uniformly over [0, T_end], phase boundaries included.
ExtensionTrajectory demixing_trajectory_n(const PhysicalParams& p, int count, const RotationSolution& rot);

}  // namespace rtmix
