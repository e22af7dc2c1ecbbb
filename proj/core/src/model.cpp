#include "nonparax/model.hpp"

#include <cmath>
#include <limits>

#include "fft.hpp"

namespace nonparax {
namespace {

void require_finite_nonneg_epsilon(double epsilon) {
  if (!std::isfinite(epsilon))
    throw DomainError("epsilon must be finite");
  if (epsilon < 0.0)
    throw DomainError(
        "epsilon < 0 is not propagatable (the positivity bound assumes "
        "epsilon > 0); use the conversion functions for bookkeeping only");
}

}  // namespace

PropagationParams PropagationParams::direct(double epsilon, double k0) {
  require_finite_nonneg_epsilon(epsilon);
  if (!(k0 > 0.0)) throw DomainError("k0 must be positive");
  return {epsilon, k0, Origin::Direct};
}

PropagationParams PropagationParams::spatial(double k0, double Zd) {
  double eps = epsilon_from_spatial(k0, Zd);
  require_finite_nonneg_epsilon(eps);
  return {eps, k0, Origin::Spatial};
}

PropagationParams PropagationParams::temporal(double beta2, double beta4,
                                              double T0, double k0) {
  double eps = epsilon_from_temporal(beta2, beta4, T0);
  require_finite_nonneg_epsilon(eps);
  if (!(k0 > 0.0)) throw DomainError("k0 must be positive");
  return {eps, k0, Origin::Temporal};
}

double epsilon_from_spatial(double k0, double Zd) {
  if (!(k0 > 0.0) || !(Zd > 0.0))
    throw DomainError("epsilon_from_spatial requires k0 > 0 and Zd > 0");
  return 1.0 / (k0 * Zd);
}

double epsilon_from_temporal(double beta2, double beta4, double T0) {
  if (beta2 == 0.0) throw DomainError("epsilon_from_temporal requires beta2 != 0");
  if (!(T0 > 0.0)) throw DomainError("epsilon_from_temporal requires T0 > 0");
  return -beta4 / (3.0 * beta2 * T0 * T0);
}

double beta_from_epsilon(const PropagationParams& params) {
  return params.epsilon / 8.0;
}

double minimal_length(double beta) {
  if (beta < 0.0) throw DomainError("minimal_length requires beta >= 0");
  return std::sqrt(beta);
}

GridSpec::GridSpec(int n_, double x_min_, double x_max_)
    : n(n_), x_min(x_min_), x_max(x_max_) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConfigError("grid size must be a power of two >= 8");
  if (!(x_max > x_min)) throw ConfigError("grid requires x_max > x_min");
  if (!std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("grid bounds must be finite");
}

double norm_sq(const ComplexField& field) {
  double s = 0.0;
  for (const Complex& v : field.values) s += std::norm(v);
  return s * field.grid.dx();
}

double norm_sq(const SpectralField& field) {
  double s = 0.0;
  for (const Complex& v : field.values) s += std::norm(v);
  return s * field.grid.dk();
}

SpectralField to_spectral(const ComplexField& field) {
  SpectralField out{field.grid, field.values};
  detail::dft(out.values, -1);
  // The DFT sums against e^{-i k_j (x_m - x_min)}; restore the absolute
  // phase reference and the dx measure of the continuum transform.
  const GridSpec& g = field.grid;
  const double dx = g.dx();
  for (int j = 0; j < g.n; ++j) {
    out.values[j] *= dx * std::polar(1.0, -g.k(j) * g.x_min);
  }
  return out;
}

ComplexField to_physical(const SpectralField& field) {
  ComplexField out{field.grid, field.values};
  const GridSpec& g = field.grid;
  for (int j = 0; j < g.n; ++j) {
    out.values[j] *= std::polar(1.0, g.k(j) * g.x_min);
  }
  detail::dft(out.values, +1);
  const double scale = 1.0 / (g.n * g.dx());
  for (Complex& v : out.values) v *= scale;
  return out;
}

ComplexField gaussian_packet(const GridSpec& grid, double sigma, double x0,
                             double k_carrier) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian_packet requires sigma > 0");
  if (sigma < 3.0 * grid.dx())
    throw ConfigError("gaussian_packet: sigma under-resolved (< 3 dx)");
  if (!(std::abs(k_carrier) < grid.k_nyquist()))
    throw ConfigError("gaussian_packet: carrier at or above Nyquist");
  ComplexField out{grid, std::vector<Complex>(grid.n)};
  const double amp = std::pow(2.0 * GridSpec::pi * sigma * sigma, -0.25);
  for (int i = 0; i < grid.n; ++i) {
    const double u = grid.x(i) - x0;
    out.values[i] =
        amp * std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, k_carrier * u);
  }
  return out;
}

double rms(const ComplexField& field) {
  const double n2 = norm_sq(field);
  if (!(n2 > 0.0)) throw DomainError("rms of a zero-norm field");
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < field.grid.n; ++i) {
    const double w = std::norm(field.values[i]);
    const double x = field.grid.x(i);
    m1 += w * x;
    m2 += w * x * x;
  }
  const double dx = field.grid.dx();
  m1 *= dx / n2;
  m2 *= dx / n2;
  return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

}  // namespace nonparax
