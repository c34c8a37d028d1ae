#include "vdw/config.hpp"
#include "vdw/errors.hpp"
#include "vdw/runner.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { ok = 0, config_error = 1, convergence_error = 2, internal_error = 3 };

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

int report(int code, const char *kind, const std::string &msg, int line = -1,
           const std::string &key = {}) {
  std::cerr << "error code=" << code << " kind=" << kind;
  if (line >= 0)
    std::cerr << " line=" << line;
  if (!key.empty())
    std::cerr << " key=" << quote(key);
  std::cerr << " message=" << quote(msg) << '\n';
  return code;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"van der Waals potentials of atoms near media and bodies"};
  std::string command, config_path, out_path;
  double tol = 0.0;
  int nmax = 0, threads = 0;
  app.add_option("command", command,
                 "freespace, bulk, halfspace, sphere, sweep or selftest")
      ->required();
  app.add_option("--config", config_path, "key = value scene file");
  app.add_option("--tol", tol, "quadrature relative tolerance");
  app.add_option("--nmax", nmax, "cap on the sphere multipole order");
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--threads", threads, "OpenMP thread count");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return report(config_error, "usage", e.what());
  }

  try {
    const auto cmd = vdw::parse_command(command);
    if (!cmd)
      return report(config_error, "usage", "unknown command '" + command + "'");
    if (threads < 0)
      return report(config_error, "usage", "--threads must be positive");
    if (threads > 0)
      omp_set_num_threads(threads);

    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        return report(config_error, "config", "cannot read " + config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    } else if (*cmd != vdw::Command::selftest) {
      return report(config_error, "usage", "--config is required for " + command);
    }

    vdw::RunConfig cfg = vdw::parse_config(text, cmd);
    if (cfg.command != *cmd && !(*cmd == vdw::Command::sweep && cfg.sweep))
      return report(config_error, "config",
                    "command line says " + command + " but the file says " +
                        std::string(vdw::to_string(cfg.command)),
                    cfg.entries.at("command").line, "command");

    if (tol > 0.0 || app.count("--tol")) {
      if (!(tol > 0.0 && tol < 1.0))
        return report(config_error, "usage", "--tol must lie in (0, 1)");
      cfg.quadrature.rel_tol = tol;
    }
    if (app.count("--nmax")) {
      if (nmax < 20)
        return report(config_error, "usage", "--nmax must be at least 20");
      cfg.n_max = nmax;
    }
    if (!out_path.empty())
      cfg.output = out_path;

    if (cfg.command == vdw::Command::selftest)
      return vdw::run_selftest(std::cout) == 0 ? ok : internal_error;

    const vdw::Table table = vdw::run(cfg);
    if (cfg.output.empty()) {
      vdw::write_csv(table, std::cout);
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out)
        return report(config_error, "config", "cannot write " + cfg.output);
      vdw::write_csv(table, out);
    }
    return ok;
  } catch (const vdw::ConfigError &e) {
    return report(config_error, "config", e.what(), e.line(), e.key());
  } catch (const vdw::DomainError &e) {
    return report(config_error, "domain", e.what());
  } catch (const vdw::ConvergenceError &e) {
    return report(convergence_error, "convergence", e.what());
  } catch (const vdw::OverflowError &e) {
    return report(convergence_error, "overflow", e.what());
  } catch (const std::exception &e) {
    return report(internal_error, "internal", e.what());
  }
}
