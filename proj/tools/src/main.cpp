#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "config.hpp"
#include "io.hpp"
#include "nonparax/errors.hpp"
#include "run.hpp"

namespace {

using nonparax::cli::RunConfig;

// Flags are recorded as dotted-key assignments and replayed after the config
// file, so the precedence is defaults < file < command line regardless of
// the order in which CLI11 fires its callbacks.
struct Overrides {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> pairs;

  void record(const std::string& key, const std::string& value) {
    pairs.emplace_back(key, value);
  }
};

void add_option(CLI::App* cmd, Overrides& ov, const std::string& flag,
                const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.record(key, v); }, help);
}

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path,
                  "key = value file applied before the flags");
  add_option(cmd, ov, "--output", "output.prefix",
             "path prefix for the CSV/JSON artifacts");
  add_option(cmd, ov, "--error-json", "output.error_json",
             "on failure, write {error_type, message, exit_code} here");
  cmd->add_flag_callback(
      "--gnuplot", [&ov] { ov.record("output.gnuplot", "true"); },
      "also emit a .gp companion script");
  add_option(cmd, ov, "--seed", "run.seed", "recorded in the JSON sidecar");
}

void add_params(CLI::App* cmd, Overrides& ov) {
  add_option(cmd, ov, "--epsilon", "params.epsilon",
             "quartic strength (comma list where a scan is meant)");
  add_option(cmd, ov, "--k0", "params.k0", "carrier wavenumber");
  add_option(cmd, ov, "--Zd", "params.Zd",
             "spatial dispersion scale; derives epsilon for bounds");
}

void add_grid(CLI::App* cmd, Overrides& ov) {
  add_option(cmd, ov, "--n", "grid.n", "grid points (power of two)");
  add_option(cmd, ov, "--x-min", "grid.x_min", "left edge");
  add_option(cmd, ov, "--x-max", "grid.x_max", "right edge");
}

void add_initial(CLI::App* cmd, Overrides& ov) {
  add_option(cmd, ov, "--sigma", "initial.sigma", "Gaussian width");
  add_option(cmd, ov, "--x0", "initial.x0", "packet center");
  add_option(cmd, ov, "--k-carrier", "initial.k_carrier",
             "transverse carrier wavenumber");
}

void add_mode(CLI::App* cmd, Overrides& ov) {
  add_option(cmd, ov, "--constraint", "mode.constraint",
             "incoming|outgoing|constrained|explicit");
  add_option(cmd, ov, "--A", "mode.A", "coefficient, re[:im]");
  add_option(cmd, ov, "--B", "mode.B", "coefficient, re[:im]");
  add_option(cmd, ov, "--C", "mode.C", "coefficient, re[:im]");
  add_option(cmd, ov, "--D", "mode.D", "coefficient, re[:im]");
  add_option(cmd, ov, "--E", "mode.E", "mode energy (>= 0)");
  add_option(cmd, ov, "--form", "mode.form", "approx|exact");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quartic-dispersion propagation toolkit"};
  app.require_subcommand(1);
  Overrides ov;

  CLI::App* propagate =
      app.add_subcommand("propagate", "evolve an initial Gaussian packet");
  add_params(propagate, ov);
  add_grid(propagate, ov);
  add_initial(propagate, ov);
  add_option(propagate, ov, "--z", "run.z", "propagation distance(s), comma list");
  add_option(propagate, ov, "--method", "run.method",
             "spectral|fphe|kernel|density");
  add_option(propagate, ov, "--fphe-carrier", "run.fphe_carrier",
             "removed|kept");
  add_common(propagate, ov);

  CLI::App* kernel =
      app.add_subcommand("kernel", "tabulate the short-time kernel");
  add_params(kernel, ov);
  add_option(kernel, ov, "--dx", "kernel.dx", "separations, comma list");
  add_option(kernel, ov, "--dt", "kernel.dt", "steps, comma list");
  add_option(kernel, ov, "--kernel-method", "kernel.method",
             "closed|quadrature|fresnel");
  add_option(kernel, ov, "--band", "kernel.band",
             "quadrature band limit (0 = automatic)");
  add_option(kernel, ov, "--n-quad", "kernel.n_quad",
             "quadrature panels (>= 256)");
  add_common(kernel, ov);

  CLI::App* bounds =
      app.add_subcommand("bounds", "physical bounds derived from epsilon");
  add_params(bounds, ov);
  add_common(bounds, ov);

  CLI::App* modes =
      app.add_subcommand("modes", "stationary mode profiles and roots");
  add_params(modes, ov);
  add_grid(modes, ov);
  add_mode(modes, ov);
  add_option(modes, ov, "--mode-z", "mode.z", "phase reference distance");
  add_common(modes, ov);

  CLI::App* inst = app.add_subcommand("instanton", "imaginary stationary point");
  add_params(inst, ov);
  add_option(inst, ov, "--z", "run.z", "trajectory sample points, comma list");
  add_common(inst, ov);

  CLI::App* berry = app.add_subcommand("berry", "geometric phase line integrals");
  add_params(berry, ov);
  add_mode(berry, ov);
  add_option(berry, ov, "--direction", "berry.direction", "x|z");
  add_option(berry, ov, "--L", "berry.L", "x-loop period");
  add_option(berry, ov, "--T", "berry.T", "z-loop period");
  add_option(berry, ov, "--alpha", "berry.alpha", "z-loop winding coefficient");
  add_option(berry, ov, "--mode-n", "berry.n", "z-loop harmonic index");
  add_common(berry, ov);

  CLI::App* scan = app.add_subcommand(
      "scan-negativity", "first negative first-order density over epsilon");
  add_params(scan, ov);
  add_grid(scan, ov);
  add_initial(scan, ov);
  add_option(scan, ov, "--z", "run.z", "observation distance");
  add_common(scan, ov);

  CLI::App* compare = app.add_subcommand(
      "compare", "kernel-convolution error against the spectral reference");
  add_params(compare, ov);
  add_grid(compare, ov);
  add_initial(compare, ov);
  add_option(compare, ov, "--z", "run.z", "comparison distance");
  add_common(compare, ov);

  CLI::App* validate = app.add_subcommand(
      "validate", "report preconditions for a command without running it");
  std::string validate_command = "propagate";
  validate->add_option("--command", validate_command,
                       "command whose preconditions to check");
  add_params(validate, ov);
  add_grid(validate, ov);
  add_initial(validate, ov);
  add_option(validate, ov, "--z", "run.z", "propagation distance(s)");
  add_option(validate, ov, "--method", "run.method", "propagation method");
  add_option(validate, ov, "--dx", "kernel.dx", "kernel separations");
  add_option(validate, ov, "--dt", "kernel.dt", "kernel steps");
  add_option(validate, ov, "--kernel-method", "kernel.method",
             "closed|quadrature|fresnel");
  add_option(validate, ov, "--n-quad", "kernel.n_quad", "quadrature panels");
  add_mode(validate, ov);
  add_option(validate, ov, "--direction", "berry.direction", "x|z");
  add_option(validate, ov, "--L", "berry.L", "x-loop period");
  add_option(validate, ov, "--T", "berry.T", "z-loop period");
  add_common(validate, ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "validate") cfg.command = validate_command;
  const bool report_only = validate->parsed();
  // The error sink must survive a config-file failure, so it is applied
  // before the file rather than with the other overrides.
  for (const auto& [key, value] : ov.pairs)
    if (key == "output.error_json") cfg.error_json = value;

  auto emit_error = [&cfg](const std::string& type, const std::string& message,
                           int code) {
    std::cerr << "error: " << message << "\n";
    if (cfg.error_json.empty()) return;
    nonparax::cli::Json j;
    j["error_type"] = type;
    j["message"] = message;
    j["exit_code"] = code;
    try {
      nonparax::cli::write_json(cfg.error_json, j);
    } catch (const std::exception&) {
      // the error report is best effort; the primary failure wins
    }
  };

  try {
    if (!ov.config_path.empty())
      nonparax::cli::apply_config_file(cfg, ov.config_path);
    for (const auto& [key, value] : ov.pairs)
      nonparax::cli::set_key(cfg, key, value);
    if (report_only) {
      nonparax::cli::report_preconditions(cfg, std::cout);
      return 0;
    }
    nonparax::cli::validate_or_throw(cfg);
  } catch (const nonparax::Error& e) {
    emit_error("config", e.what(), 2);
    return 2;
  }

  try {
    nonparax::cli::execute(cfg, std::cout);
  } catch (const nonparax::IoError& e) {
    emit_error("io", e.what(), 4);
    return 4;
  } catch (const nonparax::Error& e) {
    emit_error("compute", e.what(), 3);
    return 3;
  } catch (const std::exception& e) {
    emit_error("internal", e.what(), 1);
    return 1;
  }
  return 0;
}
