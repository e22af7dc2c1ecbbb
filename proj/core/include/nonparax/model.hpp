#pragma once

#include <complex>
#include <vector>

#include "nonparax/errors.hpp"

namespace nonparax {

using Complex = std::complex<double>;

// Physical parameters in normalized units (hbar = m = c = 1, t == z).
// epsilon is the dimensionless quartic dispersion strength, k0 the carrier
// wave-number kept for physical-unit conversions only.
struct PropagationParams {
  enum class Origin { Spatial, Temporal, Direct };

  double epsilon = 0.0;
  double k0 = 1.0;
  Origin origin = Origin::Direct;

  // Throws DomainError for non-finite or negative epsilon (propagation
  // assumes epsilon >= 0) or non-positive k0.
  static PropagationParams direct(double epsilon, double k0 = 1.0);
  // epsilon = 1/(k0 Zd).
  static PropagationParams spatial(double k0, double Zd);
  // epsilon = -beta4/(3 beta2 T0^2); negative results are rejected here
  // because this type feeds propagation.
  static PropagationParams temporal(double beta2, double beta4, double T0,
                                    double k0 = 1.0);
};

// Conversion formulas alone. These accept sign combinations that yield
// epsilon < 0; PropagationParams does not.
double epsilon_from_spatial(double k0, double Zd);
double epsilon_from_temporal(double beta2, double beta4, double T0);

// GUP deformation parameter beta = epsilon/8 in normalized units.
double beta_from_epsilon(const PropagationParams& params);
// Minimal length sqrt(beta) (hbar = 1).
double minimal_length(double beta);

// Uniform x-grid, n a power of two so the dual grid layout is unambiguous.
struct GridSpec {
  int n = 0;
  double x_min = 0.0;
  double x_max = 0.0;

  GridSpec() = default;
  // Throws ConfigError unless n is a power of two >= 8 and x_max > x_min.
  GridSpec(int n, double x_min, double x_max);

  double dx() const { return (x_max - x_min) / n; }
  double dk() const { return 2.0 * pi / (n * dx()); }
  double k_nyquist() const { return pi / dx(); }
  double x(int i) const { return x_min + i * dx(); }
  // FFT-ordered dual grid: index j maps to j*dk for j < n/2, (j-n)*dk above.
  double k(int j) const { return dk() * (j < n / 2 ? j : j - n); }

  bool operator==(const GridSpec&) const = default;

  static constexpr double pi = 3.141592653589793238462643383279502884;
};

struct ComplexField {
  GridSpec grid;
  std::vector<Complex> values;
};

struct SpectralField {
  GridSpec grid;
  std::vector<Complex> values;
};

struct RealField {
  GridSpec grid;
  std::vector<double> values;
};

// Quadrature norms on the grid: sum |psi|^2 dx resp. sum |psi~|^2 dk.
double norm_sq(const ComplexField& field);
double norm_sq(const SpectralField& field);

// Forward transform psi~(k) = integral psi(x) e^{-ikx} dx discretized on the
// grid; inverse carries 1/(2 pi). Parseval: norm_sq(spectral) =
// 2 pi norm_sq(field).
SpectralField to_spectral(const ComplexField& field);
ComplexField to_physical(const SpectralField& field);

// Normalized Gaussian (2 pi sigma^2)^(-1/4) exp(-(x-x0)^2/(4 sigma^2))
// exp(i k_carrier (x-x0)). Throws ConfigError if sigma < 3 dx or the
// carrier reaches Nyquist.
ComplexField gaussian_packet(const GridSpec& grid, double sigma, double x0 = 0.0,
                             double k_carrier = 0.0);

// RMS width sqrt(<x^2> - <x>^2) under the density |psi|^2 / norm^2.
double rms(const ComplexField& field);

}  // namespace nonparax
