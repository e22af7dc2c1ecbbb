#include "nonparax/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "nonparax/dispersion.hpp"

namespace nonparax {
namespace {

constexpr double kPi = GridSpec::pi;

std::vector<double> central_velocities(const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  std::vector<double> v(n);
  v[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) v[i] = (x[i + 1] - x[i - 1]) / (2.0 * h);
  v[n - 1] = (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * h);
  return v;
}

double require_nonneg_energy(double E) {
  if (E < 0.0)
    throw DomainError("ModeSolution requires E >= 0 (k = sqrt(2E) is real)");
  return E;
}

ModeSolution make_mode(Complex A, Complex B, Complex C, Complex D, double E,
                       double epsilon) {
  if (epsilon < 0.0) throw DomainError("ModeSolution requires epsilon >= 0");
  ModeSolution m;
  m.A = A;
  m.B = B;
  m.C = C;
  m.D = D;
  m.E = require_nonneg_energy(E);
  m.k = std::sqrt(2.0 * E);
  m.epsilon = epsilon;
  return m;
}

}  // namespace

double euclidean_action(const std::vector<double>& path, double tau_step,
                        double epsilon) {
  if (path.size() < 16)
    throw ConfigError("euclidean_action requires at least 16 samples");
  if (!(tau_step > 0.0)) throw ConfigError("euclidean_action requires tau_step > 0");
  const std::vector<double> v = central_velocities(path, tau_step);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double v2 = v[i] * v[i];
    const double density = 0.5 * v2 + epsilon * v2 * v2 / 8.0;
    const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
    acc += w * density;
  }
  return -acc * tau_step;
}

InstantonResult instanton(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("instanton requires epsilon > 0");
  auto f = [&](Complex v) { return 1.0 + 1.5 * epsilon * v * v; };
  Complex v(0.0, 1.0 / std::sqrt(epsilon));
  bool converged = false;
  for (int it = 0; it < 80; ++it) {
    const Complex fv = f(v);
    if (std::abs(fv) < 1e-14) {
      converged = true;
      break;
    }
    v -= fv / (3.0 * epsilon * v);
  }
  if (!converged)
    throw ConvergenceError("instanton: Newton iteration did not converge");
  // Both +-i sqrt(2/(3 epsilon)) solve the condition; report the + root.
  if (v.imag() < 0.0) v = -v;
  InstantonResult out;
  out.velocity = Complex(0.0, v.imag());
  out.momentum = std::abs(out.velocity);
  out.epsilon = epsilon;
  out.stationarity_residual = std::abs(f(out.velocity));
  const double bound = p_max(epsilon);
  if (!(out.stationarity_residual < 1e-12) ||
      std::abs(out.momentum - bound) > 1e-12 * bound)
    throw ConvergenceError("instanton: root fails the p_max identity");
  return out;
}

std::vector<double> instanton_trajectory(double epsilon,
                                         const std::vector<double>& z_grid) {
  if (!(epsilon > 0.0)) throw DomainError("instanton_trajectory requires epsilon > 0");
  const double slope = p_max(epsilon);
  std::vector<double> out(z_grid.size());
  for (std::size_t i = 0; i < z_grid.size(); ++i) out[i] = slope * z_grid[i];
  return out;
}

ModeSolution ModeSolution::incoming(Complex B, Complex D, double E,
                                    double epsilon) {
  return make_mode(0.0, B, 0.0, D, E, epsilon);
}

ModeSolution ModeSolution::outgoing(Complex A, Complex C, double E,
                                    double epsilon) {
  return make_mode(A, 0.0, C, 0.0, E, epsilon);
}

ModeSolution ModeSolution::constrained(Complex A, Complex B, double E,
                                       double epsilon) {
  return make_mode(A, B, -A, -B, E, epsilon);
}

ModeSolution ModeSolution::with_coefficients(Complex A, Complex B, Complex C,
                                             Complex D, double E,
                                             double epsilon) {
  return make_mode(A, B, C, D, E, epsilon);
}

ComplexField build_mode(const ModeSolution& mode, const GridSpec& grid,
                        ModeForm form, double z) {
  if (!(mode.epsilon > 0.0)) throw DomainError("build_mode requires epsilon > 0");
  Complex mu_osc(0.0, mode.k_eff());
  Complex mu_ev(2.0 / std::sqrt(mode.epsilon), 0.0);
  if (form == ModeForm::ExactRoots) {
    const ModeRoots roots = mode_roots(mode.E, mode.epsilon);
    mu_osc = roots.oscillatory[0];
    mu_ev = roots.evanescent[0];
  }
  const double x_amp = std::max(std::abs(grid.x_min), std::abs(grid.x_max));
  if ((mode.C != Complex(0.0) || mode.D != Complex(0.0)) &&
      std::abs(mu_ev.real()) * x_amp > std::log(1e8))
    throw ConfigError(
        "build_mode: evanescent term exceeds the 1e8 overflow guard on this "
        "grid");
  ComplexField out{grid, std::vector<Complex>(grid.n)};
  const Complex zphase = std::polar(1.0, -mode.E * z);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    Complex v = mode.A * std::exp(mu_osc * x) + mode.B * std::exp(-mu_osc * x);
    if (mode.C != Complex(0.0)) v += mode.C * std::exp(mu_ev * x);
    if (mode.D != Complex(0.0)) v += mode.D * std::exp(-mu_ev * x);
    out.values[i] = v * zphase;
  }
  return out;
}

BerryResult berry_phase_x(const ModeSolution& mode, double L) {
  if (!(L > 0.0)) throw DomainError("berry_phase_x requires L > 0");
  if (mode.C != Complex(0.0) || mode.D != Complex(0.0))
    throw AdmissibilityError(
        "berry_phase_x: evanescent coefficients break the periodic boundary "
        "condition");
  const double keff = mode.k_eff();
  const double winding = keff * L;
  if (std::abs(winding - std::round(winding)) > 1e-9 * (1.0 + std::abs(winding)))
    throw AdmissibilityError(
        "berry_phase_x: k_eff is not quantized to the loop (k_eff L must be "
        "integral)");
  const double coeff_scale = std::abs(mode.A) + std::abs(mode.B);
  const bool real_representable =
      std::abs(mode.B - std::conj(mode.A)) <= 1e-12 * std::max(1.0, coeff_scale);

  const int n = 2048;
  const GridSpec grid(n, 0.0, 2.0 * kPi * L);
  ComplexField psi{grid, std::vector<Complex>(n)};
  for (int i = 0; i < n; ++i) {
    const double x = grid.x(i);
    psi.values[i] = mode.A * std::polar(1.0, keff * x) +
                    mode.B * std::polar(1.0, -keff * x);
  }
  SpectralField spec = to_spectral(psi);
  for (int j = 0; j < n; ++j) spec.values[j] *= Complex(0.0, grid.k(j));
  const ComplexField dpsi = to_physical(spec);
  Complex acc(0.0, 0.0);
  for (int i = 0; i < n; ++i) acc += std::conj(psi.values[i]) * dpsi.values[i];
  acc *= grid.dx();

  BerryResult out;
  out.direction = LoopDirection::XLoop;
  out.phase = std::real(Complex(0.0, -1.0) * acc);
  out.loop = 2.0 * kPi * L;
  out.tolerance = 1e-14 * (1.0 + std::abs(keff)) * std::max(1.0, norm_sq(psi));
  out.nontrivial = !real_representable;
  return out;
}

BerryResult berry_phase_z(const ModeSolution&, double T, double alpha, int n) {
  if (!(T > 0.0)) throw DomainError("berry_phase_z requires T > 0");
  if (n < 0) throw DomainError("berry_phase_z requires n >= 0");
  const double E = n * (2.0 * kPi / T);
  const double theta = alpha * E * T;
  if (alpha != 0.0) {
    const double cycles = theta / (2.0 * kPi * alpha);
    if (std::abs(cycles - n) > 1e-12 * std::max(1.0, std::abs(cycles)))
      throw ConvergenceError("berry_phase_z: phase is not an integer multiple "
                             "of 2 pi alpha");
  }
  BerryResult out;
  out.direction = LoopDirection::ZLoop;
  out.phase = theta;
  out.alpha = alpha;
  out.n = n;
  out.loop = T;
  out.tolerance = 1e-12 * std::max(1.0, std::abs(theta));
  return out;
}

}  // namespace nonparax
