#pragma once

#include <array>
#include <complex>

#include "nonparax/errors.hpp"
#include "nonparax/model.hpp"

namespace nonparax {

// Forward-branch Helmholtz axial wave-number +sqrt(k0^2 - kx^2).
// Throws BandLimitError for |kx| >= k0 (evanescent regime excluded).
double exact_kz(double kx, double k0);

// Quartic evolution symbol kx^2/2 + epsilon kx^4/8.
double quartic_omega(double kx, double epsilon);

// |exact_kz - (k0 - kx^2/(2 k0) - kx^4/(8 k0^3))|, the residual beyond the
// retained quartic correction; O((kx/k0)^6 k0) as kx -> 0.
double truncation_error(double kx, double k0);

// Behavior of p_max at epsilon == 0, where the bound disappears.
enum class ZeroEpsilonPolicy { Throw, Infinity };

// Momentum bound sqrt(2/(3 epsilon)), strictly decreasing in epsilon.
// epsilon < 0 always throws; epsilon == 0 throws or returns +inf per policy.
double p_max(double epsilon, ZeroEpsilonPolicy policy = ZeroEpsilonPolicy::Throw);

// Minimal pulse wavelength sqrt(6 pi^2/(k0^3 Zd)). With epsilon = 1/(k0 Zd)
// this equals 2 pi/(k0 p_max(epsilon)).
double lambda_min(double k0, double Zd);

// Roots of (epsilon/8) lambda^4 - lambda^2/2 - E = 0, grouped in +- pairs.
// oscillatory holds the branch lambda^2 = -4E/(1 + sqrt(1+2 epsilon E))
// (limit +-i sqrt(2E)), evanescent the branch
// lambda^2 = 2(1 + sqrt(1+2 epsilon E))/epsilon (limit +-2/sqrt(epsilon)).
struct ModeRoots {
  std::array<Complex, 2> oscillatory;
  std::array<Complex, 2> evanescent;
  double energy = 0.0;
  double epsilon = 0.0;
};

// Throws DomainError for epsilon <= 0 or 1 + 2 epsilon E < 0 (no real
// branch of the inner square root).
ModeRoots mode_roots(double E, double epsilon);

}  // namespace nonparax
