#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonparax/errors.hpp"
#include "nonparax/model.hpp"

namespace nonparax {

enum class PropagationMethod {
  SpectralQuartic,
  AngularSpectrumFPHE,
  KernelConvolution,
  FirstOrderDensity,
};

struct PropagationResult {
  ComplexField field;
  double z = 0.0;
  PropagationMethod method = PropagationMethod::SpectralQuartic;
  // Named scalars: norm_drift, band_occupancy_beyond_pmax, and per-method
  // extras (validity_max, edge_leak, evanescent_power_removed, ...).
  std::map<std::string, double> diagnostics;
};

// Exact evolution under e^{-i(k^2/2 + epsilon k^4/8) z}. Unitary; z-additive.
// Throws ConfigError when more than 1e-8 of the spectral power sits beyond
// 0.9 k_nyquist (aliasing risk).
PropagationResult spectral_step(const ComplexField& psi, double z,
                                const PropagationParams& params);

// Exact one-way Helmholtz (angular spectrum) step e^{+i sqrt(k0^2-k^2) z}.
// Modes with |k| >= k0 are evanescent and removed; more than 1e-8 of the
// power there throws BandLimitError. remove_carrier divides out e^{i k0 z}
// so the result is comparable with envelope propagation.
PropagationResult fphe_step(const ComplexField& psi, double z, double k0,
                            bool remove_carrier = false);

// Trapezoidal convolution with the first-order closed-form kernel; direct
// summation below n = 4096, zero-padded spectral multiplication above.
// Equals spectral_step + O(epsilon^2) in L2 for band-limited fields.
// Emits validity_warning = 1 in the diagnostics when the kernel figure of
// merit exceeds 0.1 anywhere on the grid.
PropagationResult kernel_convolve(const ComplexField& psi, double z,
                                  double epsilon);

// O(epsilon)-truncated density |psi0|^2 + 2 epsilon Re(psi0* psi1): psi0 is
// the Fresnel propagation, epsilon psi1 the kernel difference. Linear in
// epsilon by construction; may be negative.
RealField first_order_density(const ComplexField& psi, double z, double epsilon);

struct NegativityScanRow {
  double epsilon = 0.0;
  double min_density = 0.0;
};

struct NegativityScanResult {
  std::vector<NegativityScanRow> rows;
  // Smallest epsilon with a negative minimum, bisection-refined to 1e-3;
  // absent when no grid entry goes negative.
  std::optional<double> threshold;
  // Minimum density non-increasing along the epsilon grid.
  bool monotone = true;
  double sigma = 0.0;
  double z = 0.0;
};

// Scans min_x first_order_density of a Gaussian of RMS sigma over eps_grid
// (sorted ascending, positive). "Negative" means below -1e-12 times the peak
// density, which sits above the far-tail roundoff floor of the discrete
// convolution.
NegativityScanResult negativity_scan(double sigma, double z,
                                     const std::vector<double>& eps_grid,
                                     const GridSpec& grid);

}  // namespace nonparax
