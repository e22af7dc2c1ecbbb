#pragma once

#include <complex>
#include <vector>

#include "nonparax/errors.hpp"
#include "nonparax/model.hpp"

namespace nonparax {

// Stationary (instanton) data of the Euclidean action.
struct InstantonResult {
  Complex velocity;              // Euclidean dx/dtau, pure imaginary
  double momentum = 0.0;         // |velocity|, the rotated-back real momentum
  double epsilon = 0.0;
  double stationarity_residual = 0.0;  // |1 + (3 epsilon/2) velocity^2|
};

// S_E = -int (x'^2/2 + (epsilon/8) x'^4) dtau, trapezoidal with
// central-difference velocities (second-order one-sided at the ends, exact
// for linear paths). Sign kept as the source convention prints it.
// Throws ConfigError for fewer than 16 samples or tau_step <= 0.
double euclidean_action(const std::vector<double>& path, double tau_step,
                        double epsilon);

// Solves 1 + (3 epsilon/2) v^2 = 0 by complex Newton iteration (the
// degenerate-Legendre condition dp/dv = 0 of p(v) = v + (epsilon/2) v^3)
// rather than substituting the closed form. The returned momentum equals
// p_max(epsilon); a failed match throws ConvergenceError.
InstantonResult instanton(double epsilon);

// Straight line x(z) = p_max(epsilon) z sampled on z_grid.
std::vector<double> instanton_trajectory(double epsilon,
                                         const std::vector<double>& z_grid);

// Four-term quartic mode psi = A e^{mu_A x} + B e^{mu_B x} + C e^{mu_C x}
// + D e^{mu_D x} (times e^{-iEz}), with k = sqrt(2E) and the first-order
// exponents mu = +-i k(1 - epsilon k^2/8), +-2/sqrt(epsilon).
struct ModeSolution {
  Complex A, B, C, D;
  double E = 0.0;
  double k = 0.0;
  double epsilon = 0.0;

  // Constraint classes enforced at construction.
  static ModeSolution incoming(Complex B, Complex D, double E, double epsilon);
  static ModeSolution outgoing(Complex A, Complex C, double E, double epsilon);
  // A = -C and B = -D.
  static ModeSolution constrained(Complex A, Complex B, double E, double epsilon);
  // Unconstrained coefficients; covers superpositions (such as pure standing
  // waves with no evanescent part) that none of the three classes can express.
  static ModeSolution with_coefficients(Complex A, Complex B, Complex C,
                                        Complex D, double E, double epsilon);

  // k(1 - epsilon k^2/8), the first-order oscillatory wave-number.
  double k_eff() const { return k * (1.0 - epsilon * k * k / 8.0); }
};

enum class ModeForm { FirstOrder, ExactRoots };

// Samples the superposition on the grid (z enters as the global phase
// e^{-iEz}). Evanescent terms with nonzero coefficients are overflow-guarded
// to |e^{mu x}| <= 1e8. Throws DomainError for epsilon <= 0.
ComplexField build_mode(const ModeSolution& mode, const GridSpec& grid,
                        ModeForm form = ModeForm::FirstOrder, double z = 0.0);

enum class LoopDirection { XLoop, ZLoop };

struct BerryResult {
  LoopDirection direction = LoopDirection::XLoop;
  double phase = 0.0;
  double alpha = 0.0;  // ZLoop normalization constant (input)
  int n = 0;           // ZLoop mode number
  double loop = 0.0;   // circumference 2 pi L (XLoop) or period T (ZLoop)
  double tolerance = 0.0;  // numerical tolerance estimate for phase
  // Set when the mode is not real-representable (B != A*): the loop integral
  // then measures the momentum expectation instead of vanishing.
  bool nontrivial = false;
};

// Loop integral Re[-i oint psi* d_x psi dx] over [0, 2 pi L), evaluated by
// spectral differentiation; the sign convention makes a plane wave e^{i k x}
// return +k norm^2 (the momentum expectation). Preconditions checked:
// evanescent coefficients must vanish and k_eff must be quantized to the
// loop (k_eff L integral), else AdmissibilityError. Non-real modes are
// evaluated with the nontrivial flag set.
BerryResult berry_phase_x(const ModeSolution& mode, double L);

// theta = alpha E T with the cyclic quantization E = n (2 pi / T), i.e.
// 2 pi alpha n exactly up to rounding. The mode argument carries metadata
// only; the loop energy is fixed by (n, T).
BerryResult berry_phase_z(const ModeSolution& mode, double T, double alpha,
                          int n);

}  // namespace nonparax
