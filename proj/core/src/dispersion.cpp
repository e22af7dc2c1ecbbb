#include "nonparax/dispersion.hpp"

#include <cmath>
#include <limits>

namespace nonparax {

double exact_kz(double kx, double k0) {
  if (!(k0 > 0.0)) throw DomainError("exact_kz requires k0 > 0");
  if (!(std::abs(kx) < k0))
    throw BandLimitError("exact_kz: |kx| >= k0 is evanescent and excluded");
  return std::sqrt((k0 - kx) * (k0 + kx));
}

double quartic_omega(double kx, double epsilon) {
  const double k2 = kx * kx;
  return 0.5 * k2 + epsilon * k2 * k2 / 8.0;
}

double truncation_error(double kx, double k0) {
  const double k2 = kx * kx;
  const double truncated = k0 - k2 / (2.0 * k0) - k2 * k2 / (8.0 * k0 * k0 * k0);
  return std::abs(exact_kz(kx, k0) - truncated);
}

double p_max(double epsilon, ZeroEpsilonPolicy policy) {
  if (epsilon < 0.0 || !std::isfinite(epsilon))
    throw DomainError("p_max requires epsilon >= 0");
  if (epsilon == 0.0) {
    if (policy == ZeroEpsilonPolicy::Infinity)
      return std::numeric_limits<double>::infinity();
    throw DomainError("p_max(0) is unbounded");
  }
  return std::sqrt(2.0 / (3.0 * epsilon));
}

double lambda_min(double k0, double Zd) {
  if (!(k0 > 0.0) || !(Zd > 0.0))
    throw DomainError("lambda_min requires k0 > 0 and Zd > 0");
  return std::sqrt(6.0 * GridSpec::pi * GridSpec::pi / (k0 * k0 * k0 * Zd));
}

ModeRoots mode_roots(double E, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("mode_roots requires epsilon > 0");
  const double disc = 1.0 + 2.0 * epsilon * E;
  if (disc < 0.0)
    throw DomainError("mode_roots: 1 + 2 epsilon E < 0, no real inner branch");
  const double root = std::sqrt(disc);
  // The minus branch written cancellation-free: 2(1 - root)/epsilon
  // equals -4E/(1 + root) exactly.
  const double lam2_osc = -4.0 * E / (1.0 + root);
  const double lam2_ev = 2.0 * (1.0 + root) / epsilon;
  ModeRoots out;
  out.energy = E;
  out.epsilon = epsilon;
  const Complex osc = (lam2_osc <= 0.0)
                          ? Complex(0.0, std::sqrt(-lam2_osc))
                          : Complex(std::sqrt(lam2_osc), 0.0);
  const Complex ev = Complex(std::sqrt(lam2_ev), 0.0);
  out.oscillatory = {osc, -osc};
  out.evanescent = {ev, -ev};
  return out;
}

}  // namespace nonparax
