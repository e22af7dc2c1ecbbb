#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nonparax/model.hpp"

namespace nonparax::cli {

// One batch run, fully resolved before any computation starts. Config file
// keys use dotted sections (grid.n, params.epsilon, ...); every command line
// flag maps to exactly one key, flags override the file. See
// docs/config-grammar.md for the full table.
struct RunConfig {
  std::string command;

  // params.*
  std::vector<double> eps_list{0.0};  // params.epsilon, comma list allowed
  double k0 = 1.0;                    // params.k0
  std::optional<double> Zd;           // params.Zd (bounds: enables lambda_min)

  // grid.*
  int n = 2048;
  double x_min = -40.0;
  double x_max = 40.0;

  // initial.*
  double sigma = 0.7071067811865476;
  double x0 = 0.0;
  double k_carrier = 0.0;

  // run.*
  std::vector<double> z_list{1.0};  // run.z, comma list allowed
  std::string method = "spectral";  // spectral | fphe | kernel | density
  std::string fphe_carrier = "removed";  // removed | kept
  unsigned long seed = 0;

  // kernel.*
  std::vector<double> dx_list{0.0};
  std::vector<double> dt_list{1.0};
  std::string kernel_method = "closed";  // closed | quadrature | fresnel
  double band = 0.0;                     // 0 selects the default band rule
  int n_quad = 1 << 14;

  // mode.*
  std::string constraint = "constrained";  // incoming|outgoing|constrained|explicit
  Complex A{1.0, 0.0}, B{0.0, 0.0}, C{0.0, 0.0}, D{0.0, 0.0};
  double E = 0.5;
  std::string mode_form = "approx";  // approx | exact
  double mode_z = 0.0;

  // berry.*
  std::string direction = "x";  // x | z
  double L = 1.0;
  double T = 1.0;
  double alpha = 1.0;
  int berry_n = 0;

  // output.*
  std::string output_prefix;
  std::string error_json;
  bool gnuplot = false;

  double epsilon() const { return eps_list.empty() ? 0.0 : eps_list.front(); }
  GridSpec grid() const { return GridSpec(n, x_min, x_max); }
};

// Merges "key = value" lines from a config file into cfg. Unknown keys and
// malformed lines are collected and reported in a single ConfigError.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Applies one dotted key; the same dispatcher backs both the file parser and
// the flag overrides. Throws ConfigError for unknown keys or bad values.
void set_key(RunConfig& cfg, const std::string& key, const std::string& value);

// "1.5" or "1.5:-2" -> complex (re[:im]). Throws ConfigError.
Complex parse_complex(const std::string& text);

struct PreconditionIssue {
  std::string module;   // library module owning the precondition
  std::string message;
  bool warning = false;  // warnings do not fail validation
};

// Dry-run precondition checks for the configured command; empty means clean.
std::vector<PreconditionIssue> check_preconditions(const RunConfig& cfg);

// Throws ConfigError aggregating every hard violation.
void validate_or_throw(const RunConfig& cfg);

}  // namespace nonparax::cli
