#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dp7/cli.hpp"
#include "dp7/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dp7: numerical checks on a two-point blowup of the projective plane"};
  std::string command;
  std::string out_path;
  std::string format = "structured-text";
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  int threads = 0;

  app.add_option("--command", command, "command to run")->required();
  app.add_option("--param", params, "key=value parameter (repeatable)");
  app.add_option("--out", out_path, "artifact output path");
  app.add_option("--format", format, "csv or structured-text");
  app.add_option("--seed", seed, "deterministic seed");
  app.add_option("--threads", threads, "OpenMP thread count (0 keeps the default)");
  app.set_version_flag("--version", dp7::kToolVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dp7::kExitUsage;
  }

  dp7::RunConfig cfg;
  cfg.command = command;
  cfg.output_path = out_path;
  cfg.seed = seed;
  try {
    cfg.format = dp7::parse_format(format);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return dp7::kExitUsage;
  }
  for (const std::string& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "--param expects key=value, got: " << kv << '\n';
      return dp7::kExitUsage;
    }
    cfg.parameters[kv.substr(0, eq)] = kv.substr(eq + 1);
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif

  return dp7::run_command(cfg, std::cout, std::cerr);
}
