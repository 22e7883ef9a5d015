#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "vmf/cli.hpp"
#include "vmf/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Glassey-Strauss field representation toolkit: kernel bounds, the\n"
               "sphere-to-Bessel identity, cone quadrature of the tangential fields,\n"
               "dyadic block norms, and the L^{2+delta} endgame checks."};

  std::string subcommand;
  std::string config_path;
  std::string out_dir = "vmfield-out";
  int threads = -1;
  long long seed = -1;

  app.add_option("subcommand", subcommand,
                 "one of: verify-kernels, verify-identity, fields, decompose, bounds, "
                 "theorem, all")
      ->required();
  app.add_option("--config", config_path, "configuration file (key = value lines)");
  app.add_option("--out", out_dir, "output directory for JSON/CSV artifacts");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--seed", seed, "override the sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    vmf::RunConfig config =
        config_path.empty() ? vmf::RunConfig{} : vmf::RunConfig::from_file(config_path);
    if (threads >= 0) config.threads = threads;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);

    vmf::RunResult result = vmf::run(subcommand, config, out_dir);
    for (const auto& line : result.summary) std::printf("%s\n", line.c_str());
    std::printf("%s  config_hash=%s  artifacts=%zu\n", result.pass ? "PASS" : "FAIL",
                config.hash().c_str(), result.artifacts.size());
    return result.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
