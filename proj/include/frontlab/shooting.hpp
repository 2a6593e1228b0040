#pragma once

#include <limits>
#include <string>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/reaction.hpp"

namespace frontlab {

enum class TrajectoryClass { exits_above_one, returns_to_boundary, asymptotic_to_one, degenerate_zero };

std::string to_string(TrajectoryClass c);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Result of integrating phi'' = -f(phi) from (rho * alpha, alpha).
/// L_return is the first zero of phi after the turning point K.
struct ShootingOutcome {
  double alpha = 0.0;
  double s_max = 0.0;
  double K = kInfinity;
  double L_return = kInfinity;
  TrajectoryClass classification = TrajectoryClass::degenerate_zero;
  double start_value = 0.0;
  // Recorded samples (empty unless requested).
  std::vector<double> y, phi, dphi;
};

struct ShootOptions {
  double y_max = 5000.0;
  bool record = false;
};

ShootingOutcome shoot(const Reaction& r, const Boundary& b, double alpha, double h, const ShootOptions& opt = {});

/// max |phi'^2 - alpha^2 + 2 int_{rho alpha}^{phi} f| over recorded samples up to K.
double first_integral_residual(const ShootingOutcome& out, const Reaction& r);

/// Lambda(s) = (2 / s^2) int_s^1 f.
double lambda_function(const Reaction& r, double s);

/// Boundary slope of the half-line steady state.
double critical_slope(const Reaction& r, const Boundary& b);

/// Boundary value of the half-line steady state (0 for Dirichlet).
double critical_boundary_value(const Reaction& r, const Boundary& b);

Profile halfline_steady_state(const Reaction& r, const Boundary& b, double Y, double h = 1e-3);

struct LengthMapEntry {
  double alpha = 0.0;
  double s_max = 0.0;
  double K = 0.0;
  double L_return = 0.0;
  /// Improper-integral evaluation of K, independent of the integrator.
  double K_integral = 0.0;
  TrajectoryClass classification = TrajectoryClass::returns_to_boundary;
};

/// s_max from alpha^2 = 2 int_{rho alpha}^{s} f.
double turning_value(const Reaction& r, const Boundary& b, double alpha);
/// K by quadrature with the square-root endpoint singularity integrated exactly.
double turning_length_integral(const Reaction& r, const Boundary& b, double alpha);

LengthMapEntry length_map(const Reaction& r, const Boundary& b, double alpha, double h = 1e-3);

/// L as a function of the turning value s*: descends from (s*, 0) towards the
/// wall and towards the zero at the top. Well conditioned where alpha -> L is not.
double return_length_at_turn(const Reaction& r, const Boundary& b, double s_star, double h = 1e-3);

struct StripStateReport {
  double L = 0.0;
  Profile phi_L;
  Profile psi_L;
  double alpha_phi = 0.0;
  double alpha_psi = 0.0;
  double alpha_mid = 0.0;
  /// min over alpha of L^alpha; the empirical existence threshold.
  double A_ODE_estimate = 0.0;
  double energy_phi = 0.0;
  double energy_zero = 0.0;
  double energy_psi = 0.0;
};

struct StripStateOptions {
  double h = 1e-3;
  double alpha_tol = 1e-8;
  /// Robin rows at both y = 0 and y = L (ignition only); the states are even about L/2.
  bool symmetric = false;
};

/// Minimiser of alpha -> L^alpha on (0, alpha_bar); returns {alpha_mid, L_min}.
std::pair<double, double> minimal_return_length(const Reaction& r, const Boundary& b, double h = 1e-3,
                                                double tol = 1e-8);

StripStateReport strip_steady_states(const Reaction& r, const Boundary& b, double L,
                                     const StripStateOptions& opt = {});

/// int [(phi')^2 - 2 F(phi)] dy by the trapezoid rule.
double energy(const Profile& p, const Reaction& r);

struct RadialSubsolution {
  Profile profile;
  double R0 = 0.0;
  double K0 = 0.0;
  double plateau = 0.0;
  double c_drift = 0.0;
  double support() const { return R0 + K0; }
  /// min over smooth grid points of v'' + (1/r + c) v' + f(v).
  double min_residual(const Reaction& r) const;
};

RadialSubsolution radial_subsolution(const Reaction& r, double delta, double c_drift, double h = 1e-3);

}  // namespace frontlab
