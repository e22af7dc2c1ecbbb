#pragma once

#include <complex>
#include <optional>

#include "nonparax/errors.hpp"
#include "nonparax/model.hpp"

namespace nonparax {

enum class KernelMethod { ClosedForm, Quadrature, Fresnel };

// One propagator evaluation K(x2, t'+dt; x1, t').
struct KernelQuery {
  double x1 = 0.0;
  double x2 = 0.0;
  double dt = 0.0;  // must be > 0
  double epsilon = 0.0;
  KernelMethod method = KernelMethod::ClosedForm;
};

struct KernelValue {
  Complex value;
  KernelQuery query;
  // Perturbative figure of merit epsilon max(1, dx^4)/dt^3; the first-order
  // closed form is untrustworthy above ~0.1 (the bracket stops being a small
  // correction). Reported for every method so tables stay uniform.
  double validity = 0.0;
};

// epsilon max(1, dx^4)/dt^3.
double kernel_validity(double dx, double dt, double epsilon);
constexpr double kKernelValidityWarn = 0.1;

// Free propagator (2 pi i dt)^(-1/2) e^{i dx^2/(2 dt)} on the principal
// branch, i.e. (2 pi dt)^(-1/2) e^{-i pi/4} e^{i dx^2/(2 dt)}.
Complex fresnel_kernel(double x1, double x2, double dt);

// First-order closed form: fresnel_kernel times
// [1 + 3 epsilon i/(8 dt) - 3 epsilon dx^2/(4 dt^2) - i epsilon dx^4/(8 dt^3)].
// At epsilon = 0 the bracket is exactly one and the value equals
// fresnel_kernel bit for bit.
KernelValue kernel_closed_form(const KernelQuery& q);

// Truncated oscillatory integral (1/2 pi) int_{|k|<=band} e^{ik dx}
// e^{-i(k^2/2 + epsilon k^4/8) dt} dk by composite Simpson with a cosine
// taper on the outer quarter of the band. band <= 0 selects the default:
// 4 p_max(epsilon) for epsilon > 0, else max(40/sqrt(dt), 10|dx|/dt).
// If convergence_tol is given the rule is re-run at 2 n_quad and a change
// beyond the tolerance throws ConvergenceError.
KernelValue kernel_quadrature(const KernelQuery& q, double band = 0.0,
                              int n_quad = 1 << 14,
                              std::optional<double> convergence_tol = std::nullopt);

// First-order intensity (1 - 3 epsilon dx^2/(2 dz^2))/(2 pi dz); negative
// beyond the positivity radius, callers inspect the sign.
double intensity_first_order(double x1, double x2, double dz, double epsilon);

// dz sqrt(2/(3 epsilon)): |dx| below it keeps intensity_first_order >= 0.
double positivity_radius(double dz, double epsilon);

// |i d_t K + (1/2) d_x^2 K - (epsilon/8) d_x^4 K| / |K| on the closed form,
// by 4th-order central differences. The residual is O(epsilon^2) plus
// discretization error; subtract an epsilon = 0 evaluation to isolate the
// former. Steps must satisfy dt > 2 h_t.
double pde_residual(const KernelQuery& q, double h_x = 1e-3, double h_t = 1e-3);

}  // namespace nonparax
