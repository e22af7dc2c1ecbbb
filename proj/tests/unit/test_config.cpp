#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "config.hpp"

using namespace nonparax;
using namespace nonparax::cli;

namespace {

bool has_violation(const std::vector<PreconditionIssue>& issues,
                   const std::string& module) {
  for (const PreconditionIssue& i : issues)
    if (!i.warning && i.module == module) return true;
  return false;
}

bool has_warning(const std::vector<PreconditionIssue>& issues) {
  for (const PreconditionIssue& i : issues)
    if (i.warning) return true;
  return false;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = (std::filesystem::temp_directory_path() /
            ("nonparax_cfg_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++) + ".cfg"))
               .string();
    std::ofstream(path) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("set_key dispatch") {
  RunConfig c;
  set_key(c, "params.epsilon", "0.1,0.2");
  REQUIRE(c.eps_list.size() == 2);
  CHECK(c.eps_list[1] == 0.2);
  set_key(c, "grid.n", "4096");
  CHECK(c.n == 4096);
  set_key(c, "mode.A", "1.5:-2");
  CHECK(c.A == Complex(1.5, -2.0));
  set_key(c, "output.gnuplot", "true");
  CHECK(c.gnuplot);

  CHECK_THROWS_AS(set_key(c, "params.bogus", "1"), ConfigError);
  CHECK_THROWS_AS(set_key(c, "grid.n", "12abc"), ConfigError);
  CHECK_THROWS_AS(set_key(c, "params.epsilon", ""), ConfigError);
}

TEST_CASE("parse_complex formats") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(parse_complex("2:-3") == Complex(2.0, -3.0));
  CHECK(parse_complex(" 0.5 : 0.25 ") == Complex(0.5, 0.25));
  CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
  CHECK_THROWS_AS(parse_complex("1:xyz"), ConfigError);
}

TEST_CASE("config file parsing") {
  TempFile f(
      "# comment\n"
      "params.epsilon = 0.25\n"
      "\n"
      "grid.n = 1024   # trailing comment\n"
      "initial.sigma = 2.0\n");
  RunConfig c;
  apply_config_file(c, f.path);
  CHECK(c.epsilon() == 0.25);
  CHECK(c.n == 1024);
  CHECK(c.sigma == 2.0);

  TempFile bad(
      "params.epsilon = 0.25\n"
      "no equals sign here\n"
      "params.unknown = 3\n");
  RunConfig d;
  try {
    apply_config_file(d, bad.path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }

  RunConfig e;
  CHECK_THROWS_AS(apply_config_file(e, "/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("preconditions: propagate") {
  RunConfig c;
  c.command = "propagate";
  c.output_prefix = "out";
  CHECK(check_preconditions(c).empty());

  c.method = "warp";
  CHECK(has_violation(check_preconditions(c), "cli"));
  c.method = "fphe";
  c.sigma = 0.4;  // evanescent occupancy far above the limit
  CHECK(has_violation(check_preconditions(c), "propagate"));

  RunConfig multi;
  multi.command = "propagate";
  multi.output_prefix = "out";
  multi.eps_list = {0.1, 0.2};
  CHECK(has_violation(check_preconditions(multi), "model"));

  RunConfig nop;
  nop.command = "propagate";
  CHECK(has_violation(check_preconditions(nop), "cli"));  // no output prefix
}

TEST_CASE("preconditions: kernel warnings stay warnings") {
  RunConfig c;
  c.command = "kernel";
  c.output_prefix = "out";
  c.eps_list = {0.5};
  c.dx_list = {0.0};
  c.dt_list = {0.5};  // validity 0.5/0.125 = 4 > 0.1
  const auto issues = check_preconditions(c);
  CHECK(has_warning(issues));
  CHECK_NOTHROW(validate_or_throw(c));  // warnings do not block

  c.dt_list = {-1.0};
  CHECK_THROWS_AS(validate_or_throw(c), ConfigError);
}

TEST_CASE("preconditions: bounds epsilon sources") {
  RunConfig c;
  c.command = "bounds";
  c.eps_list = {0.0};
  CHECK(has_violation(check_preconditions(c), "dispersion"));

  c.Zd = 2.0;  // derived epsilon = 1/(k0 Zd)
  CHECK(check_preconditions(c).empty());

  c.Zd = -2.0;
  CHECK(has_violation(check_preconditions(c), "dispersion"));

  RunConfig direct;
  direct.command = "bounds";
  direct.eps_list = {0.3};
  CHECK(check_preconditions(direct).empty());
}

TEST_CASE("preconditions: scan grid discipline") {
  RunConfig c;
  c.command = "scan-negativity";
  c.output_prefix = "out";
  c.eps_list = {1.0, 2.0, 4.0};
  CHECK(check_preconditions(c).empty());

  c.eps_list = {2.0, 1.0};
  CHECK(has_violation(check_preconditions(c), "propagate"));
  c.eps_list = {0.0, 1.0};
  CHECK(has_violation(check_preconditions(c), "propagate"));

  c.eps_list = {1.0, 2.0};
  c.z_list = {1.0, 2.0};  // scans take a single z
  CHECK(has_violation(check_preconditions(c), "propagate"));
}

TEST_CASE("preconditions: berry x-loop admissibility mirrors the library") {
  RunConfig c;
  c.command = "berry";
  c.direction = "x";
  c.constraint = "explicit";
  c.A = Complex(1.0, 0.0);
  c.B = Complex(1.0, 0.0);
  c.C = Complex(0.1, 0.0);  // evanescent coefficient breaks periodicity
  CHECK(has_violation(check_preconditions(c), "analysis"));

  c.C = Complex(0.0, 0.0);
  c.E = 0.5;
  c.L = 1.3;  // k_eff L not integral
  CHECK(has_violation(check_preconditions(c), "analysis"));
}

TEST_CASE("grid errors surface through precondition checks") {
  RunConfig c;
  c.command = "propagate";
  c.output_prefix = "out";
  c.n = 1000;  // not a power of two
  const auto issues = check_preconditions(c);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].module == "model");
}
