// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit when
// anything fails. Each block is self-contained and desk-scale.

#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nonparax/analysis.hpp"
#include "nonparax/dispersion.hpp"
#include "nonparax/kernel.hpp"
#include "nonparax/model.hpp"
#include "nonparax/propagate.hpp"

using namespace nonparax;

namespace {

constexpr double kPi = GridSpec::pi;

double l2_rel(const ComplexField& a, const ComplexField& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.grid.n; ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Report {
  int failures = 0;

  void line(int idx, const std::string& name, bool ok,
            const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << " (" << name
              << "): " << detail << "\n";
    if (!ok) ++failures;
  }
};

// ---------------------------------------------------------------- criterion 1
void criterion1(Report& rep) {
  const GridSpec g(2048, -40.0, 40.0);
  const ComplexField psi = gaussian_packet(g, 2.0);
  const ComplexField conv = kernel_convolve(psi, 1.0, 0.0).field;
  const ComplexField spec =
      spectral_step(psi, 1.0, PropagationParams::direct(0.0)).field;
  const double err = l2_rel(conv, spec);

  bool bitwise = true;
  for (int i = 1; i <= 20 && bitwise; ++i) {
    for (int j = 1; j <= 20 && bitwise; ++j) {
      const double dx = 0.1 * i, dt = 0.4 + 0.1 * j;
      const KernelValue v =
          kernel_closed_form({0.0, dx, dt, 0.0, KernelMethod::ClosedForm});
      const Complex f = fresnel_kernel(0.0, dx, dt);
      bitwise = v.value.real() == f.real() && v.value.imag() == f.imag();
    }
  }

  std::ostringstream d;
  d << "L2(conv, spectral) = " << err << " (< 1e-6), eps=0 closed form "
    << (bitwise ? "bit-identical" : "NOT bit-identical") << " to Fresnel";
  rep.line(1, "Fresnel limit", err < 1e-6 && bitwise, d.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion2(Report& rep) {
  const GridSpec g(2048, -40.0, 40.0);
  const ComplexField psi = gaussian_packet(g, 2.0);
  const std::vector<double> eps{1e-3, 2e-3, 4e-3, 8e-3};
  std::vector<double> errs;
  for (const double e : eps) {
    const ComplexField conv = kernel_convolve(psi, 1.0, e).field;
    const ComplexField spec =
        spectral_step(psi, 1.0, PropagationParams::direct(e)).field;
    errs.push_back(l2_rel(conv, spec));
  }
  const double slope = loglog_slope(eps, errs);
  std::ostringstream d;
  d << "log-log slope = " << slope << " (2.0 +- 0.15)";
  rep.line(2, "perturbative order", std::abs(slope - 2.0) <= 0.15, d.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion3(Report& rep) {
  const std::vector<double> eps{1e-3, 1e-2, 1e-1};
  std::vector<double> C;
  for (const double e : eps) {
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      for (int j = 1; j <= 20; ++j) {
        const double dx = 0.1 * i, dt = 0.4 + 0.1 * j;
        const KernelValue v =
            kernel_closed_form({0.0, dx, dt, e, KernelMethod::ClosedForm});
        const double predicted = intensity_first_order(0.0, dx, dt, e);
        const double dev =
            std::abs(std::norm(v.value) - predicted) * 2.0 * kPi * dt / (e * e);
        worst = std::max(worst, dev);
      }
    }
    C.push_back(worst);
  }
  const double mean = (C[0] + C[1] + C[2]) / 3.0;
  double spread = 0.0;
  for (const double c : C) spread = std::max(spread, std::abs(c - mean) / mean);
  std::ostringstream d;
  d << "C(eps) = {" << C[0] << ", " << C[1] << ", " << C[2]
    << "}, spread = " << 100.0 * spread << "% (<= 25%)";
  rep.line(3, "modulus law", spread <= 0.25, d.str());
}

// ---------------------------------------------------------------- criterion 4
void criterion4(Report& rep) {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> ueps(1e-3, 10.0);
  std::uniform_real_distribution<double> uz(0.1, 5.0);
  std::uniform_real_distribution<double> uk(0.2, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eps = ueps(rng);
    const double pm = p_max(eps);
    worst = std::max(worst,
                     std::abs(pm - std::sqrt(2.0 / (3.0 * eps))) / pm);
    const double dz = uz(rng);
    worst =
        std::max(worst, std::abs(positivity_radius(dz, eps) / dz - pm) / pm);
    const double k0 = uk(rng);
    const double Zd = 1.0 / (k0 * eps);  // spatial origin of the same eps
    worst = std::max(
        worst, std::abs(lambda_min(k0, Zd) * k0 * pm - 2.0 * kPi) / (2.0 * kPi));
    worst = std::max(worst, std::abs(instanton(eps).momentum - pm) / pm);
  }
  std::ostringstream d;
  d << "worst relative deviation over 100 draws = " << worst << " (<= 1e-12)";
  rep.line(4, "bound identities", worst <= 1e-12, d.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion5(Report& rep) {
  const double h_x = 1e-2, h_t = 1e-3;
  auto res = [&](double e) {
    return pde_residual({0.0, 0.5, 1.0, e, KernelMethod::ClosedForm}, h_x, h_t);
  };
  const double base = res(0.0);
  const double r1 = res(1e-3) - base;
  const double r2 = res(2e-3) - base;
  const double ratio = r2 / r1;
  std::ostringstream d;
  d << "baseline-subtracted residual ratio under eps doubling = " << ratio
    << " (4 +- 0.5)";
  rep.line(5, "kernel-PDE residual", std::abs(ratio - 4.0) <= 0.5, d.str());
}

// ---------------------------------------------------------------- criterion 6
namespace semigroup {

Complex closed(double dxv, double t, double e) {
  return kernel_closed_form({0.0, dxv, t, e, KernelMethod::ClosedForm}).value;
}

double taper(double x, double X, double frac) {
  const double a = X * (1.0 - frac);
  const double ax = std::abs(x);
  if (ax <= a) return 1.0;
  if (ax >= X) return 0.0;
  const double u = (ax - a) / (X - a);
  return std::exp(-u * u / (1.0 - u * u));
}

// int K(x'', dt; x) K(x, dt; x') w(x) dx - K(x'', 2 dt; x') by composite
// Simpson over [-X, X]
Complex defect(double xp, double xpp, double e, double X, int n, double frac) {
  const double h = 2.0 * X / n;
  Complex acc(0.0, 0.0);
  for (int i = 0; i <= n; ++i) {
    const double x = -X + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * closed(xpp - x, 1.0, e) * closed(x - xp, 1.0, e) *
           taper(x, X, frac);
  }
  acc *= h / 3.0;
  return acc - closed(xpp - xp, 2.0, e);
}

}  // namespace semigroup

void criterion6(Report& rep) {
  const double X = 60.0, frac = 0.3;
  const int n = 1 << 15;
  const Complex d0 = semigroup::defect(0.0, 0.5, 0.0, X, n, frac);
  const std::vector<double> eps{1e-3, 2e-3, 4e-3, 8e-3};
  std::vector<double> devs;
  for (const double e : eps)
    devs.push_back(std::abs(semigroup::defect(0.0, 0.5, e, X, n, frac) - d0));
  const double slope = loglog_slope(eps, devs);
  std::ostringstream d;
  d << "composed-vs-direct defect slope = " << slope << " (2.0 +- 0.2)";
  rep.line(6, "semigroup to first order", std::abs(slope - 2.0) <= 0.2, d.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion7(Report& rep) {
  const double E = 0.5;
  const std::vector<double> eps{1e-3, 2e-3, 4e-3, 8e-3};
  std::vector<double> errs;
  for (const double e : eps) {
    const ModeRoots r = mode_roots(E, e);
    const double k = std::sqrt(2.0 * E);
    const Complex approx(0.0, k * (1.0 - e * k * k / 8.0));
    errs.push_back(std::abs(r.oscillatory[0] - approx));
  }
  const double slope = loglog_slope(eps, errs);

  bool evan_ok = true;
  for (const double e : {1e-3, 1e-2, 0.1}) {
    for (const double En : {0.05, 0.5, 1.0}) {
      if (e * En > 0.1) continue;
      const ModeRoots r = mode_roots(En, e);
      const double base = 2.0 / std::sqrt(e);
      if (std::abs(r.evanescent[0].real() - base) / base >= 2.0 * e * En)
        evan_ok = false;
    }
  }
  std::ostringstream d;
  d << "oscillatory error slope = " << slope
    << " (2.0 +- 0.2), evanescent deviation < 2 eps E: "
    << (evan_ok ? "yes" : "no");
  rep.line(7, "mode roots", std::abs(slope - 2.0) <= 0.2 && evan_ok, d.str());
}

// ---------------------------------------------------------------- criterion 8
void criterion8(Report& rep) {
  const double sigma = 1.0 / std::sqrt(2.0);
  const std::vector<double> grid_eps{0.5, 1.0, 2.0, 4.0, 8.0};
  const GridSpec g(2048, -40.0, 40.0);
  const NegativityScanResult scan = negativity_scan(sigma, 1.0, grid_eps, g);

  double golden = 0.0;
  bool golden_read = false;
  {
    std::ifstream in(std::string(NONPARAX_GOLDEN_DIR) +
                     "/negativity_threshold.txt");
    golden_read = static_cast<bool>(in >> golden);
  }

  bool ok = scan.threshold.has_value() && golden_read;
  std::ostringstream d;
  if (!scan.threshold) {
    d << "no threshold found on the scan grid";
  } else if (!golden_read) {
    d << "golden file missing or unreadable";
  } else {
    const double star = *scan.threshold;
    ok = ok && star > 0.5 && star <= 10.0;
    ok = ok && std::abs(star - golden) <= 1e-3;

    // phenomenon shape: nonnegative below the threshold, negative above
    for (const NegativityScanRow& row : scan.rows) {
      if (row.epsilon < star) ok = ok && row.min_density > -1e-9;
      if (row.epsilon > star) ok = ok && row.min_density < 0.0;
    }

    // stability: an independent rerun and a refined grid agree to 1e-3
    const NegativityScanResult again = negativity_scan(sigma, 1.0, grid_eps, g);
    const NegativityScanResult fine = negativity_scan(
        sigma, 1.0, grid_eps, GridSpec(4096, -40.0, 40.0));
    ok = ok && again.threshold && std::abs(*again.threshold - star) <= 1e-3;
    ok = ok && fine.threshold && std::abs(*fine.threshold - star) <= 1e-3;

    d << "eps* = " << star << " in (0.5, 10], golden " << golden
      << ", rerun/refined within 1e-3";
  }
  rep.line(8, "negativity threshold", ok, d.str());
}

// ---------------------------------------------------------------- criterion 9
double solve_k(double target, double eps) {
  double k = target;
  for (int i = 0; i < 80; ++i) {
    const double f = k * (1.0 - eps * k * k / 8.0) - target;
    const double df = 1.0 - 3.0 * eps * k * k / 8.0;
    k -= f / df;
  }
  return k;
}

void criterion9(Report& rep) {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> ueps(1e-3, 0.05);
  std::uniform_int_distribution<int> um(1, 5);
  std::uniform_real_distribution<double> ua(-1.0, 1.0);

  bool loops_ok = true;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double eps = ueps(rng);
    const int m = um(rng);
    const double k = solve_k(static_cast<double>(m), eps);
    Complex A(ua(rng), ua(rng));
    if (std::abs(A) < 0.05) A = Complex(0.5, -0.5);
    const ModeSolution mode =
        ModeSolution::with_coefficients(A, std::conj(A), 0.0, 0.0, k * k / 2.0,
                                        eps);
    const BerryResult r = berry_phase_x(mode, 1.0);
    const double n2 = 2.0 * std::norm(A) * 2.0 * kPi;
    worst = std::max(worst, std::abs(r.phase) / n2);
    loops_ok = loops_ok && std::abs(r.phase) < 1e-10 * n2;
  }

  const double keps = 0.02;
  const double kc = solve_k(1.0, keps);
  const ModeSolution ctrl =
      ModeSolution::with_coefficients(1.0, 0.0, 0.0, 0.0, kc * kc / 2.0, keps);
  const BerryResult rc = berry_phase_x(ctrl, 2.0);
  const double n2c = 4.0 * kPi;
  const bool control_ok = std::abs(rc.phase - 1.0 * n2c) <= 1e-10;

  bool zloop_ok = true;
  const ModeSolution meta = ModeSolution::constrained(1.0, 0.0, 0.5, 0.01);
  for (int n = 0; n <= 10; ++n) {
    for (const double alpha : {0.5, 1.5}) {
      const BerryResult r = berry_phase_z(meta, 2.0, alpha, n);
      const double want = 2.0 * kPi * alpha * n;
      if (std::abs(r.phase - want) > 1e-12 * std::max(1.0, std::abs(want)))
        zloop_ok = false;
    }
  }

  std::ostringstream d;
  d << "50 admissible loops max |phase|/norm^2 = " << worst
    << " (< 1e-10), control " << (control_ok ? "ok" : "off") << ", z-loop "
    << (zloop_ok ? "2 pi alpha n" : "mismatch");
  rep.line(9, "berry phases", loops_ok && control_ok && zloop_ok, d.str());
}

// --------------------------------------------------------------- criterion 10
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion10(Report& rep) {
  std::mt19937 rng(77);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> ueps(0.0, 1.0);
  const GridSpec g(1024, -80.0, 80.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SpectralField spec{g, std::vector<Complex>(g.n, Complex(0.0, 0.0))};
    for (int j = 0; j < g.n; ++j)
      if (std::abs(g.k(j)) < 0.8) spec.values[j] = {gauss(rng), gauss(rng)};
    const ComplexField psi = to_physical(spec);
    const double before = norm_sq(psi);

    const PropagationResult s =
        spectral_step(psi, 1.0, PropagationParams::direct(ueps(rng)));
    worst = std::max(worst, std::abs(norm_sq(s.field) - before) / before);
    const PropagationResult f = fphe_step(psi, 1.0, 1.0);
    worst = std::max(worst, std::abs(norm_sq(f.field) - before) / before);
  }
  const bool unitary_ok = worst <= 1e-10;

  bool rerun_ok = false;
  std::string rerun_note = "cli binary unavailable";
#ifdef NONPARAX_CLI_PATH
  namespace fs = std::filesystem;
  const fs::path tmp =
      fs::temp_directory_path() / ("nonparax_accept_" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  const std::string prefix = (tmp / "run").string();
  const std::string cmd = std::string(NONPARAX_CLI_PATH) +
                          " propagate --epsilon 0.01 --z 1 --output " + prefix +
                          " > /dev/null 2>&1";
  if (std::system(cmd.c_str()) == 0) {
    const std::string csv1 = slurp(prefix + ".csv");
    const std::string json1 = slurp(prefix + ".json");
    if (std::system(cmd.c_str()) == 0) {
      rerun_ok = !csv1.empty() && csv1 == slurp(prefix + ".csv") &&
                 json1 == slurp(prefix + ".json");
      rerun_note = rerun_ok ? "cli rerun byte-identical"
                            : "cli rerun bytes differ";
    }
  }
  fs::remove_all(tmp);
#endif

  std::ostringstream d;
  d << "worst norm drift over 100 random band-limited fields = " << worst
    << " (<= 1e-10), " << rerun_note;
  rep.line(10, "unitarity and determinism", unitary_ok && rerun_ok, d.str());
}

}  // namespace

int main() {
  Report rep;
  criterion1(rep);
  criterion2(rep);
  criterion3(rep);
  criterion4(rep);
  criterion5(rep);
  criterion6(rep);
  criterion7(rep);
  criterion8(rep);
  criterion9(rep);
  criterion10(rep);
  if (rep.failures == 0) {
    std::cout << "all acceptance criteria satisfied\n";
    return 0;
  }
  std::cout << rep.failures << " criterion(s) failing\n";
  return 1;
}
