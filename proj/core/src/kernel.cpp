#include "nonparax/kernel.hpp"

#include <cmath>

#include "nonparax/dispersion.hpp"

namespace nonparax {
namespace {

constexpr double kPi = GridSpec::pi;

void require_dt(double dt) {
  if (!(dt > 0.0)) throw DomainError("kernel interval dt must be positive");
}

Complex closed_form_value(double dx, double dt, double epsilon) {
  const double amp = 1.0 / std::sqrt(2.0 * kPi * dt);
  const Complex prefactor = std::polar(amp, dx * dx / (2.0 * dt) - kPi / 4.0);
  const double d2 = dx * dx;
  const Complex bracket(1.0 - 3.0 * epsilon * d2 / (4.0 * dt * dt),
                        3.0 * epsilon / (8.0 * dt) -
                            epsilon * d2 * d2 / (8.0 * dt * dt * dt));
  return prefactor * bracket;
}

}  // namespace

double kernel_validity(double dx, double dt, double epsilon) {
  const double d2 = dx * dx;
  return epsilon * std::max(1.0, d2 * d2) / (dt * dt * dt);
}

Complex fresnel_kernel(double x1, double x2, double dt) {
  require_dt(dt);
  const double dx = x2 - x1;
  return std::polar(1.0 / std::sqrt(2.0 * kPi * dt),
                    dx * dx / (2.0 * dt) - kPi / 4.0);
}

KernelValue kernel_closed_form(const KernelQuery& q) {
  require_dt(q.dt);
  if (q.epsilon < 0.0)
    throw DomainError("kernel_closed_form requires epsilon >= 0");
  const double dx = q.x2 - q.x1;
  KernelValue out;
  out.query = q;
  out.query.method = KernelMethod::ClosedForm;
  out.value = closed_form_value(dx, q.dt, q.epsilon);
  out.validity = kernel_validity(dx, q.dt, q.epsilon);
  return out;
}

KernelValue kernel_quadrature(const KernelQuery& q, double band, int n_quad,
                              std::optional<double> convergence_tol) {
  require_dt(q.dt);
  if (q.epsilon < 0.0)
    throw DomainError("kernel_quadrature requires epsilon >= 0");
  if (n_quad < 256) throw ConfigError("kernel_quadrature requires n_quad >= 256");
  const double dx = q.x2 - q.x1;
  if (band <= 0.0) {
    band = q.epsilon > 0.0
               ? 4.0 * p_max(q.epsilon)
               : std::max(40.0 / std::sqrt(q.dt), 10.0 * std::abs(dx) / q.dt);
  }

  auto rule = [&](int n) {
    if (n % 2 != 0) ++n;
    const double h = 2.0 * band / n;
    const double taper_start = 0.75 * band;
    Complex acc(0.0, 0.0);
    for (int j = 0; j <= n; ++j) {
      const double k = -band + j * h;
      double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
      const double a = std::abs(k);
      if (a > taper_start) {
        const double c = std::cos(0.5 * kPi * (a - taper_start) / (band - taper_start));
        w *= c * c;
      }
      acc += w * std::polar(1.0, k * dx - quartic_omega(k, q.epsilon) * q.dt);
    }
    return acc * (h / 3.0) / (2.0 * kPi);
  };

  KernelValue out;
  out.query = q;
  out.query.method = KernelMethod::Quadrature;
  out.value = rule(n_quad);
  out.validity = kernel_validity(dx, q.dt, q.epsilon);
  if (convergence_tol) {
    const Complex refined = rule(2 * n_quad);
    if (std::abs(refined - out.value) > *convergence_tol)
      throw ConvergenceError(
          "kernel_quadrature: doubling n_quad moved the result beyond the "
          "requested tolerance");
  }
  return out;
}

double intensity_first_order(double x1, double x2, double dz, double epsilon) {
  if (!(dz > 0.0)) throw DomainError("intensity_first_order requires dz > 0");
  if (epsilon < 0.0)
    throw DomainError("intensity_first_order requires epsilon >= 0");
  const double dx = x2 - x1;
  return (1.0 - 3.0 * epsilon * dx * dx / (2.0 * dz * dz)) / (2.0 * kPi * dz);
}

double positivity_radius(double dz, double epsilon) {
  if (!(dz > 0.0)) throw DomainError("positivity_radius requires dz > 0");
  if (!(epsilon > 0.0)) throw DomainError("positivity_radius requires epsilon > 0");
  return dz * p_max(epsilon);
}

double pde_residual(const KernelQuery& q, double h_x, double h_t) {
  require_dt(q.dt);
  if (!(h_x > 0.0) || !(h_t > 0.0))
    throw ConfigError("pde_residual requires positive steps");
  if (!(q.dt > 2.0 * h_t))
    throw ConfigError("pde_residual requires dt > 2 h_t for the time stencil");
  const double dx = q.x2 - q.x1;
  const double eps = q.epsilon;
  auto K = [&](double x, double t) { return closed_form_value(x, t, eps); };

  // 4th-order central differences.
  const Complex dt1 = (-K(dx, q.dt + 2 * h_t) + 8.0 * K(dx, q.dt + h_t) -
                       8.0 * K(dx, q.dt - h_t) + K(dx, q.dt - 2 * h_t)) /
                      (12.0 * h_t);
  const Complex dx2 =
      (-K(dx + 2 * h_x, q.dt) + 16.0 * K(dx + h_x, q.dt) - 30.0 * K(dx, q.dt) +
       16.0 * K(dx - h_x, q.dt) - K(dx - 2 * h_x, q.dt)) /
      (12.0 * h_x * h_x);
  const Complex dx4 =
      (-(K(dx + 3 * h_x, q.dt) + K(dx - 3 * h_x, q.dt)) / 6.0 +
       2.0 * (K(dx + 2 * h_x, q.dt) + K(dx - 2 * h_x, q.dt)) -
       6.5 * (K(dx + h_x, q.dt) + K(dx - h_x, q.dt)) +
       (28.0 / 3.0) * K(dx, q.dt)) /
      (h_x * h_x * h_x * h_x);

  const Complex residual =
      Complex(0.0, 1.0) * dt1 + 0.5 * dx2 - (eps / 8.0) * dx4;
  return std::abs(residual) / std::abs(K(dx, q.dt));
}

}  // namespace nonparax
