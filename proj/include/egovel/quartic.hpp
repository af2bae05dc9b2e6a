#pragma once

#include <array>
#include <complex>
#include <vector>

#include "egovel/radar_config.hpp"

namespace egovel {

// Real coefficients of a*v^4 + b*v^3 + c*v^2 + d*v + e = 0 with v in
// meters/second. For the kinematic quartic a = t^2 > 0.
struct QuarticCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;

  double eval(double v) const {
    return (((a * v + b) * v + c) * v + d) * v + e;
  }
};

// Builds the ego-speed quartic for one (static point, chirp) pair from the
// phase-derivative sample Theta at time t since frame start. With
// K = r0*cos(theta - alpha) and c_phase = lambda/(4*pi):
//   a = t^2, b = -2*K*t, c = K^2 - t^2*c_phase^2*Theta^2,
//   d = 2*t*K*c_phase^2*Theta^2, e = -r0^2*c_phase^2*Theta^2.
// Throws for t <= 0 (the frame's first chirp is degenerate) or r0 <= 0.
QuarticCoefficients quartic_coefficients(double t, double theta_point,
                                         double r0, double alpha, double Theta,
                                         const RadarConfig& cfg);

// All four roots of the quartic, closed form (Ferrari with a complex
// resolvent), Newton-polished. Requires a != 0.
std::array<std::complex<double>, 4> quartic_roots(const QuarticCoefficients& q);

// Roots whose imaginary part is within tol_imag * max(1, |real|), as reals.
std::vector<double> solve_quartic(const QuarticCoefficients& q,
                                  double tol_imag);

// solve_quartic filtered to [lo, hi]; may be empty.
std::vector<double> solve_quartic_in_window(const QuarticCoefficients& q,
                                            double tol_imag, double lo,
                                            double hi);

}  // namespace egovel
