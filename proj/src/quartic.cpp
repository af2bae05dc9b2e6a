#include "egovel/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace egovel {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// Roots of the depressed cubic u^3 + P*u + Q = 0 (Cardano, complex branch).
std::array<cplx, 3> depressed_cubic_roots(cplx P, cplx Q) {
  if (std::abs(P) == 0.0 && std::abs(Q) == 0.0) return {cplx(0), cplx(0), cplx(0)};
  const cplx sqrt_disc = std::sqrt(Q * Q / 4.0 + P * P * P / 27.0);
  // Pick the branch that avoids cancellation in -Q/2 +- sqrt_disc.
  cplx w3 = -Q / 2.0 + sqrt_disc;
  if (std::abs(-Q / 2.0 - sqrt_disc) > std::abs(w3)) w3 = -Q / 2.0 - sqrt_disc;
  const cplx w = std::pow(w3, 1.0 / 3.0);
  const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
  std::array<cplx, 3> roots;
  cplx wk = w;
  for (int k = 0; k < 3; ++k) {
    roots[k] = wk - P / (3.0 * wk);
    wk *= omega;
  }
  return roots;
}

// Both roots of y^2 + b*y + c = 0, cancellation-safe.
std::array<cplx, 2> quadratic_roots(cplx b, cplx c) {
  cplx sq = std::sqrt(b * b - 4.0 * c);
  // Choose the sign that grows |b + sq|.
  if (std::real(std::conj(b) * sq) < 0.0) sq = -sq;
  const cplx y1 = -0.5 * (b + sq);
  const cplx y2 = std::abs(y1) > 0.0 ? c / y1 : -0.5 * (b - sq);
  return {y1, y2};
}

cplx eval_monic(double A, double B, double C, double D, cplx x) {
  return (((x + A) * x + B) * x + C) * x + D;
}

cplx eval_monic_deriv(double A, double B, double C, cplx x) {
  return ((4.0 * x + 3.0 * A) * x + 2.0 * B) * x + C;
}

}  // namespace

QuarticCoefficients quartic_coefficients(double t, double theta_point,
                                         double r0, double alpha, double Theta,
                                         const RadarConfig& cfg) {
  if (t <= 0.0)
    throw std::invalid_argument("quartic_coefficients: t must be > 0");
  if (r0 <= 0.0)
    throw std::invalid_argument("quartic_coefficients: r0 must be > 0");

  const double K = r0 * std::cos(theta_point - alpha);
  const double c_phase = cfg.wavelength() / (4.0 * kPi);
  const double ct2 = c_phase * c_phase * Theta * Theta;

  QuarticCoefficients q;
  q.a = t * t;
  q.b = -2.0 * K * t;
  q.c = K * K - t * t * ct2;
  q.d = 2.0 * t * K * ct2;
  q.e = -r0 * r0 * ct2;
  return q;
}

namespace {

// Monic cubic x^3 + ca*x^2 + cb*x + cc.
std::array<cplx, 3> cubic_roots_monic(double ca, double cb, double cc) {
  const cplx P = cplx(cb - ca * ca / 3.0);
  const cplx Q = cplx(cc - ca * cb / 3.0 + 2.0 * ca * ca * ca / 27.0);
  auto roots = depressed_cubic_roots(P, Q);
  for (auto& r : roots) r -= ca / 3.0;
  return roots;
}

}  // namespace

std::array<cplx, 4> quartic_roots(const QuarticCoefficients& q) {
  if (q.a == 0.0) throw std::invalid_argument("quartic_roots: a must be != 0");
  const double A = q.b / q.a;
  const double B = q.c / q.a;
  const double C = q.d / q.a;
  const double D = q.e / q.a;

  // Zero constant terms factor out exact zero roots (the stationary-ego
  // quartic has d = e = 0); peeling them keeps those roots exact.
  if (q.e == 0.0) {
    std::array<cplx, 4> roots{cplx(0), cplx(0), cplx(0), cplx(0)};
    if (q.d == 0.0 && q.c == 0.0) {
      roots[3] = -A;
    } else if (q.d == 0.0) {
      const auto ys = quadratic_roots(cplx(A), cplx(B));
      roots[2] = ys[0];
      roots[3] = ys[1];
    } else {
      const auto ys = cubic_roots_monic(A, B, C);
      roots[1] = ys[0];
      roots[2] = ys[1];
      roots[3] = ys[2];
    }
    for (auto& x : roots) {
      for (int it = 0; it < 2; ++it) {
        const cplx f = eval_monic(A, B, C, D, x);
        const cplx df = eval_monic_deriv(A, B, C, x);
        if (std::abs(df) == 0.0 || std::abs(f) == 0.0) break;
        x -= f / df;
      }
    }
    return roots;
  }

  // Depressed form y^4 + p*y^2 + qq*y + r with x = y - A/4.
  const double A2 = A * A;
  const double p = B - 3.0 * A2 / 8.0;
  const double qq = C - A * B / 2.0 + A2 * A / 8.0;
  const double r = D - A * C / 4.0 + A2 * B / 16.0 - 3.0 * A2 * A2 / 256.0;

  // Resolvent cubic m^3 + p*m^2 + (p^2/4 - r)*m - qq^2/8 = 0; any nonzero
  // root m gives the Ferrari factorization. Shift to depressed form and take
  // the root of largest magnitude for stability.
  const double ca = p;
  const double cb = p * p / 4.0 - r;
  const double cc = -qq * qq / 8.0;
  const cplx P = cplx(cb - ca * ca / 3.0);
  const cplx Q = cplx(cc - ca * cb / 3.0 + 2.0 * ca * ca * ca / 27.0);
  const auto cubic = depressed_cubic_roots(P, Q);
  cplx m = cubic[0] - ca / 3.0;
  for (int k = 1; k < 3; ++k) {
    const cplx cand = cubic[k] - ca / 3.0;
    if (std::abs(cand) > std::abs(m)) m = cand;
  }

  const double scale = std::abs(p) + std::sqrt(std::abs(r)) + std::abs(qq);
  std::array<cplx, 4> ys;
  if (std::abs(m) <= 1e-14 * std::max(1.0, scale)) {
    // p, qq, r all vanish: quadruple root at y = 0.
    ys = {cplx(0), cplx(0), cplx(0), cplx(0)};
  } else {
    const cplx s = std::sqrt(2.0 * m);
    const cplx shift = p / 2.0 + m;
    const cplx offset = qq / (2.0 * s);
    const auto y12 = quadratic_roots(-s, shift + offset);
    const auto y34 = quadratic_roots(s, shift - offset);
    ys = {y12[0], y12[1], y34[0], y34[1]};
  }

  std::array<cplx, 4> roots;
  for (int i = 0; i < 4; ++i) {
    cplx x = ys[i] - A / 4.0;
    // Two Newton steps on the monic quartic sharpen the closed form.
    for (int it = 0; it < 2; ++it) {
      const cplx f = eval_monic(A, B, C, D, x);
      const cplx df = eval_monic_deriv(A, B, C, x);
      if (std::abs(df) == 0.0) break;
      x -= f / df;
    }
    roots[i] = x;
  }
  return roots;
}

std::vector<double> solve_quartic(const QuarticCoefficients& q,
                                  double tol_imag) {
  std::vector<double> out;
  for (const auto& z : quartic_roots(q)) {
    if (std::abs(z.imag()) <= tol_imag * std::max(1.0, std::abs(z.real())))
      out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> solve_quartic_in_window(const QuarticCoefficients& q,
                                            double tol_imag, double lo,
                                            double hi) {
  // A double root sitting exactly on the window edge (the stationary case's
  // v = 0) splits by ~sqrt(eps) under coefficient rounding; keep both halves
  // by clamping a correspondingly small band below the edge.
  const double slack = 1e-5 * std::max(1.0, std::abs(hi));
  std::vector<double> out;
  for (double v : solve_quartic(q, tol_imag)) {
    if (v >= lo - slack && v <= hi) out.push_back(std::max(v, lo));
  }
  return out;
}

}  // namespace egovel
