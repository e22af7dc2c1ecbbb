#include "run.hpp"

#include <cmath>
#include <vector>

#include "io.hpp"
#include "nonparax/analysis.hpp"
#include "nonparax/dispersion.hpp"
#include "nonparax/kernel.hpp"
#include "nonparax/propagate.hpp"

namespace nonparax::cli {
namespace {

std::string csv_row(std::initializer_list<double> vs) {
  std::string s;
  for (double v : vs) {
    if (!s.empty()) s += ',';
    s += format_double(v);
  }
  return s + "\n";
}

std::string field_csv(const ComplexField& f) {
  std::string s = "x,re,im,abs2\n";
  for (int i = 0; i < f.grid.n; ++i)
    s += csv_row({f.grid.x(i), f.values[i].real(), f.values[i].imag(),
                  std::norm(f.values[i])});
  return s;
}

std::string density_csv(const RealField& f) {
  std::string s = "x,density\n";
  for (int i = 0; i < f.grid.n; ++i) s += csv_row({f.grid.x(i), f.values[i]});
  return s;
}

Json complex_json(const Complex& c) {
  return Json{{"re", c.real()}, {"im", c.imag()}};
}

Json initial_json(const RunConfig& cfg) {
  return Json{{"shape", "gaussian"},
              {"sigma", cfg.sigma},
              {"x0", cfg.x0},
              {"k_carrier", cfg.k_carrier}};
}

void maybe_gnuplot(const RunConfig& cfg, const std::string& csv,
                   const std::string& plot_expr) {
  if (!cfg.gnuplot) return;
  std::string s = "set datafile separator ','\n";
  s += "plot '" + csv + "' " + plot_expr + "\n";
  s += "pause -1\n";
  atomic_write(cfg.output_prefix + ".gp", s);
}

std::string method_name(PropagationMethod m) {
  switch (m) {
    case PropagationMethod::SpectralQuartic: return "spectral";
    case PropagationMethod::AngularSpectrumFPHE: return "fphe";
    case PropagationMethod::KernelConvolution: return "kernel";
    case PropagationMethod::FirstOrderDensity: return "density";
  }
  return "unknown";
}

double l2_relative(const ComplexField& a, const ComplexField& b) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.grid.n; ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void run_propagate(const RunConfig& cfg, std::ostream& out) {
  const GridSpec grid = cfg.grid();
  const ComplexField psi = gaussian_packet(grid, cfg.sigma, cfg.x0, cfg.k_carrier);
  const bool multi = cfg.z_list.size() > 1;
  for (std::size_t i = 0; i < cfg.z_list.size(); ++i) {
    const double z = cfg.z_list[i];
    const std::string stem =
        multi ? cfg.output_prefix + "_" + std::to_string(i) : cfg.output_prefix;
    Json meta = metadata_base(cfg);
    meta["initial"] = initial_json(cfg);
    meta["z"] = z;
    meta["method"] = cfg.method;
    std::string csv;
    if (cfg.method == "density") {
      const RealField density = first_order_density(psi, z, cfg.epsilon());
      csv = density_csv(density);
      double dmin = density.values[0], total = 0.0;
      for (double v : density.values) {
        dmin = std::min(dmin, v);
        total += v;
      }
      meta["diagnostics"] = {{"min_density", dmin},
                             {"integral", total * grid.dx()}};
    } else {
      PropagationResult result =
          cfg.method == "spectral"
              ? spectral_step(psi, z, PropagationParams::direct(cfg.epsilon(), cfg.k0))
              : cfg.method == "fphe"
                    ? fphe_step(psi, z, cfg.k0, cfg.fphe_carrier == "removed")
                    : kernel_convolve(psi, z, cfg.epsilon());
      csv = field_csv(result.field);
      Json diag;
      for (const auto& [key, value] : result.diagnostics) diag[key] = value;
      meta["diagnostics"] = diag;
      meta["method_resolved"] = method_name(result.method);
    }
    atomic_write(stem + ".csv", csv);
    meta["outputs"] = Json::array({stem + ".csv"});
    write_json(stem + ".json", meta);
    maybe_gnuplot(cfg, stem + ".csv", "using 1:4 with lines title 'abs2'");
    out << "wrote " << stem << ".csv\n";
  }
}

void run_kernel(const RunConfig& cfg, std::ostream& out) {
  std::string csv = "dx,dt,re,im,abs2,validity\n";
  for (double dxv : cfg.dx_list) {
    for (double dt : cfg.dt_list) {
      Complex value;
      double validity;
      const KernelQuery q{0.0, dxv, dt, cfg.epsilon(), KernelMethod::ClosedForm};
      if (cfg.kernel_method == "closed") {
        const KernelValue kv = kernel_closed_form(q);
        value = kv.value;
        validity = kv.validity;
      } else if (cfg.kernel_method == "quadrature") {
        const KernelValue kv = kernel_quadrature(q, cfg.band, cfg.n_quad);
        value = kv.value;
        validity = kv.validity;
      } else {
        value = fresnel_kernel(0.0, dxv, dt);
        validity = 0.0;
      }
      csv += csv_row({dxv, dt, value.real(), value.imag(), std::norm(value),
                      validity});
    }
  }
  atomic_write(cfg.output_prefix + ".csv", csv);
  Json meta = metadata_base(cfg);
  meta["kernel"] = {{"method", cfg.kernel_method},
                    {"band", cfg.band},
                    {"n_quad", cfg.n_quad},
                    {"rows", cfg.dx_list.size() * cfg.dt_list.size()}};
  meta["outputs"] = Json::array({cfg.output_prefix + ".csv"});
  write_json(cfg.output_prefix + ".json", meta);
  maybe_gnuplot(cfg, cfg.output_prefix + ".csv",
                "using 1:5 with lines title 'abs2'");
  out << "wrote " << cfg.output_prefix << ".csv\n";
}

void run_bounds(const RunConfig& cfg, std::ostream& out) {
  const double eps =
      cfg.epsilon() > 0.0 ? cfg.epsilon() : epsilon_from_spatial(cfg.k0, *cfg.Zd);
  Json j = metadata_base(cfg);
  j["params"]["epsilon"] = eps;
  const double pmax = p_max(eps);
  j["bounds"] = {{"p_max", pmax},
                 {"positivity_radius_per_z", positivity_radius(1.0, eps)},
                 {"beta", eps / 8.0},
                 {"minimal_length", minimal_length(eps / 8.0)}};
  if (cfg.Zd) {
    const double lmin = lambda_min(cfg.k0, *cfg.Zd);
    j["bounds"]["lambda_min"] = lmin;
    j["bounds"]["identity_lambda_k0_pmax_over_2pi"] =
        lmin * cfg.k0 * pmax / (2.0 * GridSpec::pi);
  }
  if (cfg.output_prefix.empty()) {
    out << j.dump(2) << "\n";
  } else {
    write_json(cfg.output_prefix + ".json", j);
    out << "wrote " << cfg.output_prefix << ".json\n";
  }
}

ModeSolution mode_from_config(const RunConfig& cfg) {
  if (cfg.constraint == "incoming")
    return ModeSolution::incoming(cfg.B, cfg.D, cfg.E, cfg.epsilon());
  if (cfg.constraint == "outgoing")
    return ModeSolution::outgoing(cfg.A, cfg.C, cfg.E, cfg.epsilon());
  if (cfg.constraint == "constrained")
    return ModeSolution::constrained(cfg.A, cfg.B, cfg.E, cfg.epsilon());
  return ModeSolution::with_coefficients(cfg.A, cfg.B, cfg.C, cfg.D, cfg.E,
                                         cfg.epsilon());
}

void run_modes(const RunConfig& cfg, std::ostream& out) {
  const ModeSolution mode = mode_from_config(cfg);
  const ModeForm form =
      cfg.mode_form == "exact" ? ModeForm::ExactRoots : ModeForm::FirstOrder;
  const ComplexField field = build_mode(mode, cfg.grid(), form, cfg.mode_z);
  atomic_write(cfg.output_prefix + ".csv", field_csv(field));
  Json meta = metadata_base(cfg);
  const ModeRoots roots = mode_roots(mode.E, mode.epsilon);
  meta["mode"] = {{"constraint", cfg.constraint},
                  {"A", complex_json(mode.A)},
                  {"B", complex_json(mode.B)},
                  {"C", complex_json(mode.C)},
                  {"D", complex_json(mode.D)},
                  {"E", mode.E},
                  {"k", mode.k},
                  {"k_eff", mode.k_eff()},
                  {"form", cfg.mode_form},
                  {"z", cfg.mode_z},
                  {"oscillatory_root", complex_json(roots.oscillatory[0])},
                  {"evanescent_root", complex_json(roots.evanescent[0])}};
  meta["outputs"] = Json::array({cfg.output_prefix + ".csv"});
  write_json(cfg.output_prefix + ".json", meta);
  maybe_gnuplot(cfg, cfg.output_prefix + ".csv",
                "using 1:2 with lines title 're'");
  out << "wrote " << cfg.output_prefix << ".csv\n";
}

void run_instanton(const RunConfig& cfg, std::ostream& out) {
  const InstantonResult inst = instanton(cfg.epsilon());
  Json j = metadata_base(cfg);
  j["instanton"] = {{"velocity", complex_json(inst.velocity)},
                    {"momentum", inst.momentum},
                    {"stationarity_residual", inst.stationarity_residual},
                    {"p_max", p_max(inst.epsilon)}};
  if (cfg.output_prefix.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  const std::vector<double> xs =
      instanton_trajectory(cfg.epsilon(), cfg.z_list);
  std::string csv = "z,x\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    csv += csv_row({cfg.z_list[i], xs[i]});
  atomic_write(cfg.output_prefix + ".csv", csv);
  j["outputs"] = Json::array({cfg.output_prefix + ".csv"});
  write_json(cfg.output_prefix + ".json", j);
  out << "wrote " << cfg.output_prefix << ".json\n";
}

void run_berry(const RunConfig& cfg, std::ostream& out) {
  const ModeSolution mode = mode_from_config(cfg);
  const BerryResult r = cfg.direction == "x"
                            ? berry_phase_x(mode, cfg.L)
                            : berry_phase_z(mode, cfg.T, cfg.alpha, cfg.berry_n);
  Json j = metadata_base(cfg);
  j["berry"] = {{"direction", cfg.direction},
                {"phase", r.phase},
                {"alpha", r.alpha},
                {"n", r.n},
                {"loop", r.loop},
                {"tolerance", r.tolerance},
                {"nontrivial", r.nontrivial}};
  if (cfg.output_prefix.empty()) {
    out << j.dump(2) << "\n";
  } else {
    write_json(cfg.output_prefix + ".json", j);
    out << "wrote " << cfg.output_prefix << ".json\n";
  }
}

void run_scan(const RunConfig& cfg, std::ostream& out) {
  const NegativityScanResult scan =
      negativity_scan(cfg.sigma, cfg.z_list.front(), cfg.eps_list, cfg.grid());
  std::string csv = "epsilon,min_density\n";
  for (const NegativityScanRow& row : scan.rows)
    csv += csv_row({row.epsilon, row.min_density});
  atomic_write(cfg.output_prefix + ".csv", csv);
  Json j = metadata_base(cfg);
  j["initial"] = initial_json(cfg);
  j["scan"] = {{"sigma", scan.sigma},
               {"z", scan.z},
               {"threshold_found", scan.threshold.has_value()},
               {"epsilon_star",
                scan.threshold ? Json(*scan.threshold) : Json(nullptr)},
               {"monotone", scan.monotone}};
  j["outputs"] = Json::array({cfg.output_prefix + ".csv"});
  write_json(cfg.output_prefix + ".json", j);
  maybe_gnuplot(cfg, cfg.output_prefix + ".csv",
                "using 1:2 with linespoints title 'min density'");
  out << "wrote " << cfg.output_prefix << ".csv\n";
}

void run_compare(const RunConfig& cfg, std::ostream& out) {
  const GridSpec grid = cfg.grid();
  const ComplexField psi = gaussian_packet(grid, cfg.sigma, cfg.x0, cfg.k_carrier);
  const double z = cfg.z_list.front();
  std::vector<double> errors;
  std::string csv = "epsilon,l2_error\n";
  for (double eps : cfg.eps_list) {
    const PropagationResult a = kernel_convolve(psi, z, eps);
    const PropagationResult b =
        spectral_step(psi, z, PropagationParams::direct(eps, cfg.k0));
    const double err = l2_relative(a.field, b.field);
    errors.push_back(err);
    csv += csv_row({eps, err});
  }
  atomic_write(cfg.output_prefix + ".csv", csv);
  Json j = metadata_base(cfg);
  j["initial"] = initial_json(cfg);
  j["compare"] = {{"z", z}, {"method_pair", "kernel_vs_spectral"}};
  bool fit_ok = cfg.eps_list.size() >= 2;
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i)
    if (!(cfg.eps_list[i] > 0.0) || !(errors[i] > 0.0)) fit_ok = false;
  j["compare"]["slope"] =
      fit_ok ? Json(loglog_slope(cfg.eps_list, errors)) : Json(nullptr);
  j["outputs"] = Json::array({cfg.output_prefix + ".csv"});
  write_json(cfg.output_prefix + ".json", j);
  maybe_gnuplot(cfg, cfg.output_prefix + ".csv",
                "using 1:2 with linespoints title 'l2 error'");
  out << "wrote " << cfg.output_prefix << ".csv\n";
}

}  // namespace

void execute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "propagate") run_propagate(cfg, out);
  else if (cfg.command == "kernel") run_kernel(cfg, out);
  else if (cfg.command == "bounds") run_bounds(cfg, out);
  else if (cfg.command == "modes") run_modes(cfg, out);
  else if (cfg.command == "instanton") run_instanton(cfg, out);
  else if (cfg.command == "berry") run_berry(cfg, out);
  else if (cfg.command == "scan-negativity") run_scan(cfg, out);
  else if (cfg.command == "compare") run_compare(cfg, out);
  else throw ConfigError("unknown command '" + cfg.command + "'");
}

void report_preconditions(const RunConfig& cfg, std::ostream& out) {
  const std::vector<PreconditionIssue> issues = check_preconditions(cfg);
  Json list = Json::array();
  for (const PreconditionIssue& i : issues) {
    out << (i.warning ? "warning" : "violation") << " [" << i.module << "] "
        << i.message << "\n";
    list.push_back({{"module", i.module},
                    {"message", i.message},
                    {"warning", i.warning}});
  }
  if (issues.empty()) out << "ok: all preconditions satisfied\n";
  if (!cfg.output_prefix.empty()) {
    Json j = metadata_base(cfg);
    j["validate"] = {{"command", cfg.command}, {"issues", list}};
    write_json(cfg.output_prefix + ".json", j);
  }
}

}  // namespace nonparax::cli
