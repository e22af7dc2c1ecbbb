#include "io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "version.hpp"

namespace nonparax::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create directory for '" + path + "'");
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename temp file onto '" + path + "'");
}

Json metadata_base(const RunConfig& cfg) {
  Json j;
  j["schema_version"] = 1;
  j["command"] = cfg.command;
  j["build"] = {{"project", "nonparax"}, {"git_describe", kGitDescribe}};
  j["seed"] = cfg.seed;
  Json params;
  params["epsilon"] = cfg.eps_list.size() == 1 ? Json(cfg.eps_list.front())
                                               : Json(cfg.eps_list);
  params["k0"] = cfg.k0;
  if (cfg.Zd) params["Zd"] = *cfg.Zd;
  j["params"] = params;
  j["grid"] = {{"n", cfg.n}, {"x_min", cfg.x_min}, {"x_max", cfg.x_max}};
  return j;
}

void write_json(const std::string& path, const Json& j) {
  atomic_write(path, j.dump(2) + "\n");
}

}  // namespace nonparax::cli
