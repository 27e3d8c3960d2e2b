#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plueckerlab/suites.hpp"

namespace {

// Exit codes: 0 all cases passed, 1 some case failed, 2 usage or hypothesis error.
constexpr int kFailures = 1;
constexpr int kUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  plueckerlab::ExperimentConfig config;
  CLI::App app{"Exact verification suites for Pluecker forms and bundle pairs on P^1"};
  app.add_option("command", config.command, "Suite to run")
      ->required()
      ->check(CLI::IsMember(plueckerlab::command_names()));
  app.add_option("--r", config.r, "Degree r")->capture_default_str();
  app.add_option("--m", config.m, "Number of slots m")->capture_default_str();
  app.add_option("--splitting", config.splitting, "Splitting type d_1,...,d_r")->delimiter(',');
  app.add_option("--field", config.field, "Scalar field")
      ->check(CLI::IsMember({"fp", "q"}))
      ->capture_default_str();
  app.add_option("--prime", config.prime, "Modulus for --field fp")->capture_default_str();
  auto* seed = app.add_option("--seed", config.seed, "Base seed (fallback: PLUECKERLAB_SEED)");
  app.add_option("--trials", config.trials, "Samples per case family")->capture_default_str();
  app.add_option("--out", config.out, "Report path (default: stdout)");
  app.add_option("--format", config.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("-v,--verbose", config.verbosity, "Per-case progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  if (seed->count() == 0) {
    if (const char* env = std::getenv("PLUECKERLAB_SEED")) {
      try {
        config.seed = std::stoull(env);
      } catch (const std::exception&) {
        std::cerr << "error: PLUECKERLAB_SEED is not an unsigned integer: " << env << "\n";
        return kUsage;
      }
    }
  }

  try {
    const auto report = plueckerlab::run(config);
    plueckerlab::write_report(report);
    if (!report.succeeded()) {
      std::cerr << config.command << ": " << report.failures() << " failing case(s)\n";
      return kFailures;
    }
    return 0;
  } catch (const plueckerlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
