#include "nonparax/propagate.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "nonparax/dispersion.hpp"
#include "nonparax/kernel.hpp"

namespace nonparax {
namespace {

constexpr double kNyquistMargin = 0.9;
constexpr double kOccupancyLimit = 1e-8;
constexpr double kEdgeLeakLimit = 1e-8;
// Relative floor below which a negative minimum is indistinguishable from
// convolution roundoff in the Gaussian tails.
constexpr double kNegativityGuard = 1e-12;

double spectral_power_fraction(const SpectralField& spec, double k_cut) {
  double total = 0.0, beyond = 0.0;
  for (int j = 0; j < spec.grid.n; ++j) {
    const double p = std::norm(spec.values[j]);
    total += p;
    if (std::abs(spec.grid.k(j)) > k_cut) beyond += p;
  }
  return total > 0.0 ? beyond / total : 0.0;
}

double band_occupancy_beyond_pmax(const SpectralField& spec, double epsilon) {
  if (epsilon == 0.0) return 0.0;
  return spectral_power_fraction(spec, p_max(epsilon));
}

// Difference-index table K(d dx) for d in [-(n-1), n-1], stored at d + n - 1.
std::vector<Complex> kernel_table(const GridSpec& grid, double z, double epsilon,
                                  bool difference_kernel) {
  const int n = grid.n;
  const double dx = grid.dx();
  std::vector<Complex> table(2 * n - 1);
  for (int d = -(n - 1); d <= n - 1; ++d) {
    const double sep = d * dx;
    KernelQuery q{0.0, sep, z, difference_kernel ? 0.0 : epsilon,
                  KernelMethod::ClosedForm};
    Complex v = kernel_closed_form(q).value;
    if (difference_kernel) {
      // (K_eps - K_0)/epsilon = K_0 (3i/(8z) - 3 sep^2/(4z^2) - i sep^4/(8z^3)),
      // independent of epsilon.
      const double s2 = sep * sep;
      v *= Complex(-3.0 * s2 / (4.0 * z * z),
                   3.0 / (8.0 * z) - s2 * s2 / (8.0 * z * z * z));
    }
    table[d + n - 1] = v;
  }
  return table;
}

int next_pow2(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

// Linear convolution out_i = dx sum_j table[i-j+n-1] w_j psi_j with
// trapezoidal end weights.
std::vector<Complex> convolve_with_table(const ComplexField& psi,
                                         const std::vector<Complex>& table) {
  const int n = psi.grid.n;
  const double dx = psi.grid.dx();
  std::vector<Complex> weighted = psi.values;
  weighted.front() *= 0.5;
  weighted.back() *= 0.5;
  std::vector<Complex> out(n);
  if (n < 4096) {
    for (int i = 0; i < n; ++i) {
      Complex acc(0.0, 0.0);
      const Complex* row = table.data() + i + n - 1;
      for (int j = 0; j < n; ++j) acc += row[-j] * weighted[j];
      out[i] = acc * dx;
    }
    return out;
  }
  const int m = next_pow2(3 * n - 2);
  std::vector<Complex> fa(m, Complex(0.0, 0.0)), fk(m, Complex(0.0, 0.0));
  std::copy(weighted.begin(), weighted.end(), fa.begin());
  std::copy(table.begin(), table.end(), fk.begin());
  detail::dft(fa, -1);
  detail::dft(fk, -1);
  for (int i = 0; i < m; ++i) fa[i] *= fk[i];
  detail::dft(fa, +1);
  const double scale = dx / m;
  for (int i = 0; i < n; ++i) out[i] = fa[i + n - 1] * scale;
  return out;
}

void check_edge_leak(const ComplexField& psi, double z, double epsilon) {
  double peak = 0.0;
  for (const Complex& v : psi.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return;
  const double edge =
      std::max(std::abs(psi.values.front()), std::abs(psi.values.back()));
  const double span = psi.grid.x_max - psi.grid.x_min;
  const double k_center = std::abs(
      kernel_closed_form({0.0, 0.0, z, epsilon, KernelMethod::ClosedForm}).value);
  const double k_far = std::abs(
      kernel_closed_form({0.0, span, z, epsilon, KernelMethod::ClosedForm}).value);
  if (edge * std::max(k_center, k_far) >= kEdgeLeakLimit * peak * k_center)
    throw ConfigError(
        "kernel_convolve: field reaches the domain edge (wrap-around risk); "
        "widen the grid");
}

struct DensitySplit {
  std::vector<double> base;      // |psi0|^2
  std::vector<double> slope;     // 2 Re(psi0* psi1)
};

DensitySplit density_split(const ComplexField& psi, double z) {
  DensitySplit out;
  const std::vector<Complex> psi0 =
      convolve_with_table(psi, kernel_table(psi.grid, z, 0.0, false));
  const std::vector<Complex> psi1 =
      convolve_with_table(psi, kernel_table(psi.grid, z, 0.0, true));
  const int n = psi.grid.n;
  out.base.resize(n);
  out.slope.resize(n);
  for (int i = 0; i < n; ++i) {
    out.base[i] = std::norm(psi0[i]);
    out.slope[i] = 2.0 * std::real(std::conj(psi0[i]) * psi1[i]);
  }
  return out;
}

}  // namespace

PropagationResult spectral_step(const ComplexField& psi, double z,
                                const PropagationParams& params) {
  if (z < 0.0) throw DomainError("spectral_step requires z >= 0");
  SpectralField spec = to_spectral(psi);
  const double aliasing =
      spectral_power_fraction(spec, kNyquistMargin * psi.grid.k_nyquist());
  if (aliasing >= kOccupancyLimit)
    throw ConfigError("spectral_step: spectral power near Nyquist (aliasing risk)");
  PropagationResult out;
  out.z = z;
  out.method = PropagationMethod::SpectralQuartic;
  out.diagnostics["band_occupancy_beyond_pmax"] =
      band_occupancy_beyond_pmax(spec, params.epsilon);
  for (int j = 0; j < spec.grid.n; ++j) {
    spec.values[j] *=
        std::polar(1.0, -quartic_omega(spec.grid.k(j), params.epsilon) * z);
  }
  out.field = to_physical(spec);
  const double n_in = norm_sq(psi);
  out.diagnostics["norm_drift"] =
      n_in > 0.0 ? std::abs(norm_sq(out.field) - n_in) / n_in : 0.0;
  return out;
}

PropagationResult fphe_step(const ComplexField& psi, double z, double k0,
                            bool remove_carrier) {
  if (z < 0.0) throw DomainError("fphe_step requires z >= 0");
  if (!(k0 > 0.0)) throw DomainError("fphe_step requires k0 > 0");
  SpectralField spec = to_spectral(psi);
  const double evanescent = spectral_power_fraction(spec, k0 * (1.0 - 1e-15));
  if (evanescent >= kOccupancyLimit)
    throw BandLimitError(
        "fphe_step: spectral power at |k| >= k0 exceeds the evanescent "
        "occupancy limit");
  PropagationResult out;
  out.z = z;
  out.method = PropagationMethod::AngularSpectrumFPHE;
  out.diagnostics["evanescent_power_removed"] = evanescent;
  for (int j = 0; j < spec.grid.n; ++j) {
    const double k = spec.grid.k(j);
    if (std::abs(k) >= k0) {
      spec.values[j] = 0.0;
      continue;
    }
    double phase = exact_kz(k, k0) * z;
    if (remove_carrier) phase -= k0 * z;
    spec.values[j] *= std::polar(1.0, phase);
  }
  out.field = to_physical(spec);
  const double n_in = norm_sq(psi);
  out.diagnostics["norm_drift"] =
      n_in > 0.0 ? std::abs(norm_sq(out.field) - n_in) / n_in : 0.0;
  return out;
}

PropagationResult kernel_convolve(const ComplexField& psi, double z,
                                  double epsilon) {
  if (!(z > 0.0)) throw DomainError("kernel_convolve requires z > 0");
  if (epsilon < 0.0) throw DomainError("kernel_convolve requires epsilon >= 0");
  check_edge_leak(psi, z, epsilon);
  PropagationResult out;
  out.z = z;
  out.method = PropagationMethod::KernelConvolution;
  out.field.grid = psi.grid;
  out.field.values =
      convolve_with_table(psi, kernel_table(psi.grid, z, epsilon, false));
  const double span = psi.grid.x_max - psi.grid.x_min;
  const double validity_max = kernel_validity(span, z, epsilon);
  out.diagnostics["validity_max"] = validity_max;
  out.diagnostics["validity_warning"] =
      validity_max > kKernelValidityWarn ? 1.0 : 0.0;
  out.diagnostics["band_occupancy_beyond_pmax"] =
      band_occupancy_beyond_pmax(to_spectral(psi), epsilon);
  const double n_in = norm_sq(psi);
  out.diagnostics["norm_drift"] =
      n_in > 0.0 ? std::abs(norm_sq(out.field) - n_in) / n_in : 0.0;
  return out;
}

RealField first_order_density(const ComplexField& psi, double z, double epsilon) {
  if (!(z > 0.0)) throw DomainError("first_order_density requires z > 0");
  if (epsilon < 0.0)
    throw DomainError("first_order_density requires epsilon >= 0");
  check_edge_leak(psi, z, 0.0);
  const DensitySplit split = density_split(psi, z);
  RealField out{psi.grid, std::vector<double>(psi.grid.n)};
  for (int i = 0; i < psi.grid.n; ++i)
    out.values[i] = split.base[i] + epsilon * split.slope[i];
  return out;
}

NegativityScanResult negativity_scan(double sigma, double z,
                                     const std::vector<double>& eps_grid,
                                     const GridSpec& grid) {
  if (eps_grid.empty()) throw ConfigError("negativity_scan: empty epsilon grid");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0))
      throw ConfigError("negativity_scan: epsilon grid must be positive");
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1]))
      throw ConfigError("negativity_scan: epsilon grid must be sorted ascending");
  }
  if (!(z > 0.0)) throw DomainError("negativity_scan requires z > 0");
  const ComplexField psi = gaussian_packet(grid, sigma);
  check_edge_leak(psi, z, 0.0);
  const DensitySplit split = density_split(psi, z);
  const double peak = *std::max_element(split.base.begin(), split.base.end());
  const double guard = kNegativityGuard * peak;

  auto min_density = [&](double eps) {
    double m = split.base[0] + eps * split.slope[0];
    for (int i = 1; i < grid.n; ++i)
      m = std::min(m, split.base[i] + eps * split.slope[i]);
    return m;
  };
  auto negative = [&](double eps) { return min_density(eps) < -guard; };

  NegativityScanResult out;
  out.sigma = sigma;
  out.z = z;
  out.rows.reserve(eps_grid.size());
  for (double eps : eps_grid)
    out.rows.push_back({eps, min_density(eps)});
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].min_density > out.rows[i - 1].min_density + guard)
      out.monotone = false;
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (out.rows[i].min_density < -guard) {
      double lo = i > 0 ? eps_grid[i - 1] : 0.0;
      double hi = eps_grid[i];
      while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (negative(mid) ? hi : lo) = mid;
      }
      out.threshold = 0.5 * (lo + hi);
      break;
    }
  }
  return out;
}

}  // namespace nonparax
