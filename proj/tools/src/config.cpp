#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nonparax/analysis.hpp"
#include "nonparax/dispersion.hpp"
#include "nonparax/kernel.hpp"
#include "nonparax/propagate.hpp"

namespace nonparax::cli {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("malformed number '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("malformed number '" + v + "'");
  return d;
}

long parse_long(const std::string& v) {
  std::size_t pos = 0;
  long d = 0;
  try {
    d = std::stol(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("malformed integer '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("malformed integer '" + v + "'");
  return d;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("malformed boolean '" + v + "'");
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

}  // namespace

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "params.epsilon") c.eps_list = parse_list(value);
  else if (key == "params.k0") c.k0 = parse_double(value);
  else if (key == "params.Zd") c.Zd = parse_double(value);
  else if (key == "grid.n") c.n = static_cast<int>(parse_long(value));
  else if (key == "grid.x_min") c.x_min = parse_double(value);
  else if (key == "grid.x_max") c.x_max = parse_double(value);
  else if (key == "initial.sigma") c.sigma = parse_double(value);
  else if (key == "initial.x0") c.x0 = parse_double(value);
  else if (key == "initial.k_carrier") c.k_carrier = parse_double(value);
  else if (key == "run.z") c.z_list = parse_list(value);
  else if (key == "run.method") c.method = value;
  else if (key == "run.fphe_carrier") c.fphe_carrier = value;
  else if (key == "run.seed") c.seed = static_cast<unsigned long>(parse_long(value));
  else if (key == "kernel.dx") c.dx_list = parse_list(value);
  else if (key == "kernel.dt") c.dt_list = parse_list(value);
  else if (key == "kernel.method") c.kernel_method = value;
  else if (key == "kernel.band") c.band = parse_double(value);
  else if (key == "kernel.n_quad") c.n_quad = static_cast<int>(parse_long(value));
  else if (key == "mode.constraint") c.constraint = value;
  else if (key == "mode.A") c.A = parse_complex(value);
  else if (key == "mode.B") c.B = parse_complex(value);
  else if (key == "mode.C") c.C = parse_complex(value);
  else if (key == "mode.D") c.D = parse_complex(value);
  else if (key == "mode.E") c.E = parse_double(value);
  else if (key == "mode.form") c.mode_form = value;
  else if (key == "mode.z") c.mode_z = parse_double(value);
  else if (key == "berry.direction") c.direction = value;
  else if (key == "berry.L") c.L = parse_double(value);
  else if (key == "berry.T") c.T = parse_double(value);
  else if (key == "berry.alpha") c.alpha = parse_double(value);
  else if (key == "berry.n") c.berry_n = static_cast<int>(parse_long(value));
  else if (key == "output.prefix") c.output_prefix = value;
  else if (key == "output.error_json") c.error_json = value;
  else if (key == "output.gnuplot") c.gnuplot = parse_bool(value);
  else throw ConfigError("unknown key '" + key + "'");
}

Complex parse_complex(const std::string& text) {
  const auto sep = text.find(':');
  if (sep == std::string::npos) return Complex(parse_double(trim(text)), 0.0);
  return Complex(parse_double(trim(text.substr(0, sep))),
                 parse_double(trim(text.substr(sep + 1))));
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> problems;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": missing '='");
      continue;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      set_key(cfg, key, value);
    } catch (const ConfigError& e) {
      problems.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!problems.empty()) {
    std::string msg = "config file '" + path + "' invalid:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

namespace {

void check_initial_field(const RunConfig& c, std::vector<PreconditionIssue>& out) {
  const double dx = (c.x_max - c.x_min) / c.n;
  if (!(c.sigma > 0.0) || c.sigma < 3.0 * dx)
    out.push_back({"model", "initial.sigma under-resolved (needs sigma >= 3 dx)"});
  if (!(std::abs(c.k_carrier) < GridSpec::pi / dx))
    out.push_back({"model", "initial.k_carrier at or above the Nyquist wavenumber"});
}

double occupancy_beyond(const RunConfig& c, double k_cut) {
  const ComplexField psi =
      gaussian_packet(c.grid(), c.sigma, c.x0, c.k_carrier);
  const SpectralField spec = to_spectral(psi);
  double total = 0.0, beyond = 0.0;
  for (int j = 0; j < spec.grid.n; ++j) {
    const double p = std::norm(spec.values[j]);
    total += p;
    if (std::abs(spec.grid.k(j)) > k_cut) beyond += p;
  }
  return total > 0.0 ? beyond / total : 0.0;
}

void require_single_epsilon(const RunConfig& c, const std::string& module,
                            std::vector<PreconditionIssue>& out) {
  if (c.eps_list.size() != 1)
    out.push_back({module, "params.epsilon must be a single value here "
                           "(lists are for scan-negativity and compare)"});
}

void check_propagate(const RunConfig& c, std::vector<PreconditionIssue>& out) {
  static const std::vector<std::string> methods{"spectral", "fphe", "kernel",
                                               "density"};
  if (std::find(methods.begin(), methods.end(), c.method) == methods.end()) {
    out.push_back({"cli", "run.method must be spectral|fphe|kernel|density"});
    return;
  }
  require_single_epsilon(c, "model", out);
  check_initial_field(c, out);
  for (double e : c.eps_list)
    if (e < 0.0)
      out.push_back({"model",
                     "params.epsilon < 0 cannot be propagated (positivity "
                     "bound assumes epsilon > 0)"});
  for (double z : c.z_list) {
    if ((c.method == "kernel" || c.method == "density") && !(z > 0.0))
      out.push_back({"kernel", "run.z must be > 0 for kernel methods"});
    if (z < 0.0) out.push_back({"propagate", "run.z must be >= 0"});
  }
  const bool field_ok =
      std::none_of(out.begin(), out.end(),
                   [](const PreconditionIssue& i) { return !i.warning; });
  if (field_ok && c.method == "spectral" &&
      occupancy_beyond(c, 0.9 * GridSpec::pi * c.n / (c.x_max - c.x_min)) >= 1e-8)
    out.push_back({"propagate", "spectral power near Nyquist (aliasing risk)"});
  if (field_ok && c.method == "fphe") {
    if (!(c.k0 > 0.0))
      out.push_back({"propagate", "params.k0 must be > 0 for fphe"});
    else if (occupancy_beyond(c, c.k0 * (1.0 - 1e-15)) >= 1e-8)
      out.push_back({"propagate",
                     "spectral power at |k| >= k0 above the evanescent "
                     "occupancy limit 1e-8"});
  }
  if ((c.method == "kernel" || c.method == "density")) {
    const double span = c.x_max - c.x_min;
    for (double z : c.z_list) {
      if (z > 0.0 &&
          kernel_validity(span, z, c.epsilon()) > kKernelValidityWarn)
        out.push_back({"kernel",
                       "perturbative validity figure exceeds 0.1 somewhere on "
                       "the grid (first-order kernel untrustworthy)",
                       true});
    }
  }
}

void check_kernel(const RunConfig& c, std::vector<PreconditionIssue>& out) {
  if (c.kernel_method != "closed" && c.kernel_method != "quadrature" &&
      c.kernel_method != "fresnel")
    out.push_back({"cli", "kernel.method must be closed|quadrature|fresnel"});
  require_single_epsilon(c, "kernel", out);
  for (double dt : c.dt_list)
    if (!(dt > 0.0)) out.push_back({"kernel", "kernel.dt entries must be > 0"});
  if (c.epsilon() < 0.0 && c.kernel_method != "fresnel")
    out.push_back({"kernel", "params.epsilon must be >= 0"});
  if (c.kernel_method == "quadrature" && c.n_quad < 256)
    out.push_back({"kernel", "kernel.n_quad must be >= 256"});
  for (double dt : c.dt_list)
    for (double dxv : c.dx_list)
      if (dt > 0.0 && kernel_validity(dxv, dt, c.epsilon()) > kKernelValidityWarn)
        out.push_back({"kernel",
                       "perturbative validity figure exceeds 0.1 at dx=" +
                           std::to_string(dxv) + ", dt=" + std::to_string(dt),
                       true});
}

void check_scan(const RunConfig& c, std::vector<PreconditionIssue>& out) {
  check_initial_field(c, out);
  for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
    if (!(c.eps_list[i] > 0.0)) {
      out.push_back({"propagate", "scan epsilon grid must be positive"});
      break;
    }
    if (i > 0 && !(c.eps_list[i] > c.eps_list[i - 1])) {
      out.push_back({"propagate", "scan epsilon grid must be sorted ascending"});
      break;
    }
  }
  if (!(c.z_list.size() == 1 && c.z_list[0] > 0.0))
    out.push_back({"propagate", "scan-negativity needs a single run.z > 0"});
}

void check_modes(const RunConfig& c, std::vector<PreconditionIssue>& out) {
  if (c.constraint != "incoming" && c.constraint != "outgoing" &&
      c.constraint != "constrained" && c.constraint != "explicit")
    out.push_back(
        {"cli", "mode.constraint must be incoming|outgoing|constrained|explicit"});
  if (c.mode_form != "approx" && c.mode_form != "exact")
    out.push_back({"cli", "mode.form must be approx|exact"});
  require_single_epsilon(c, "analysis", out);
  if (!(c.epsilon() > 0.0))
    out.push_back({"analysis", "modes require params.epsilon > 0"});
  if (c.E < 0.0) out.push_back({"analysis", "mode.E must be >= 0"});
  if (c.epsilon() > 0.0) {
    const double x_amp = std::max(std::abs(c.x_min), std::abs(c.x_max));
    const bool evanescent_present =
        (c.constraint != "explicit") || c.C != Complex(0.0) || c.D != Complex(0.0);
    if (evanescent_present &&
        2.0 / std::sqrt(c.epsilon()) * x_amp > std::log(1e8))
      out.push_back({"analysis",
                     "evanescent term exceeds the 1e8 overflow guard on this "
                     "grid extent"});
  }
}

void check_berry(const RunConfig& c, std::vector<PreconditionIssue>& out) {
  require_single_epsilon(c, "analysis", out);
  if (c.direction == "x") {
    if (!(c.L > 0.0)) out.push_back({"analysis", "berry.L must be > 0"});
    if (c.constraint == "explicit" &&
        (c.C != Complex(0.0) || c.D != Complex(0.0)))
      out.push_back({"analysis",
                     "berry x-loop: evanescent coefficients break periodicity"});
    if (c.constraint == "constrained" && c.A != Complex(0.0))
      out.push_back({"analysis",
                     "berry x-loop: the constrained class forces C = -A != 0, "
                     "breaking periodicity"});
    if (c.E >= 0.0 && c.L > 0.0) {
      const double k = std::sqrt(2.0 * c.E);
      const double keff = k * (1.0 - c.epsilon() * k * k / 8.0);
      const double w = keff * c.L;
      if (std::abs(w - std::round(w)) > 1e-9 * (1.0 + std::abs(w)))
        out.push_back({"analysis",
                       "berry x-loop: k_eff L is not integral (mode not "
                       "periodic on the loop)"});
    }
  } else if (c.direction == "z") {
    if (!(c.T > 0.0)) out.push_back({"analysis", "berry.T must be > 0"});
    if (c.berry_n < 0) out.push_back({"analysis", "berry.n must be >= 0"});
  } else {
    out.push_back({"cli", "berry.direction must be x|z"});
  }
}

}  // namespace

std::vector<PreconditionIssue> check_preconditions(const RunConfig& c) {
  std::vector<PreconditionIssue> out;
  try {
    (void)c.grid();
  } catch (const Error& e) {
    out.push_back({"model", e.what()});
    return out;  // nothing else is checkable without a grid
  }
  if (c.command == "propagate") check_propagate(c, out);
  else if (c.command == "kernel") check_kernel(c, out);
  else if (c.command == "bounds") {
    require_single_epsilon(c, "dispersion", out);
    const bool derived = c.Zd && c.k0 > 0.0 && *c.Zd > 0.0;
    if (!(c.epsilon() > 0.0) && !derived)
      out.push_back({"dispersion",
                     "bounds require params.epsilon > 0 (or params.Zd with "
                     "k0 > 0 to derive it)"});
    if (c.Zd && !(c.k0 > 0.0 && *c.Zd > 0.0))
      out.push_back({"dispersion", "lambda_min requires k0 > 0 and Zd > 0"});
  } else if (c.command == "modes") check_modes(c, out);
  else if (c.command == "instanton") {
    require_single_epsilon(c, "analysis", out);
    if (!(c.epsilon() > 0.0))
      out.push_back({"analysis", "instanton requires params.epsilon > 0"});
  } else if (c.command == "berry") check_berry(c, out);
  else if (c.command == "scan-negativity") check_scan(c, out);
  else if (c.command == "compare") {
    check_initial_field(c, out);
    for (double e : c.eps_list)
      if (e < 0.0) out.push_back({"model", "params.epsilon must be >= 0"});
    if (!(c.z_list.size() == 1 && c.z_list[0] > 0.0))
      out.push_back({"kernel", "compare needs a single run.z > 0"});
  }
  const bool needs_files = c.command == "propagate" || c.command == "kernel" ||
                           c.command == "scan-negativity" ||
                           c.command == "compare" || c.command == "modes";
  if (needs_files && c.output_prefix.empty())
    out.push_back({"cli", "output.prefix is required for this command"});
  return out;
}

void validate_or_throw(const RunConfig& cfg) {
  const std::vector<PreconditionIssue> issues = check_preconditions(cfg);
  std::string msg;
  for (const PreconditionIssue& i : issues) {
    if (i.warning) continue;
    if (!msg.empty()) msg += "; ";
    msg += i.module + ": " + i.message;
  }
  if (!msg.empty()) throw ConfigError("invalid configuration: " + msg);
}

}  // namespace nonparax::cli
