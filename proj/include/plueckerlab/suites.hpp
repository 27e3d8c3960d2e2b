#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plueckerlab/scalars.hpp"

namespace plueckerlab {

struct ExperimentConfig {
  std::string command;
  int r = 2;
  int m = 3;
  std::vector<int> splitting;  // empty: the command's default
  std::string field = "fp";
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out;
  std::string format = "json";
  int verbosity = 0;

  Field make_field() const;
  nlohmann::json to_json() const;
};

/// Suite results. Case records are appended in sample order; timing fields
/// are the only nondeterministic content.
class Report {
 public:
  Report(ExperimentConfig config, std::string statement);

  /// `input` is serialized only for failing cases, so every counterexample
  /// carries enough to be rerun.
  void record(std::string kind, nlohmann::json detail, bool passed, double elapsed_s,
              const nlohmann::json& input = nullptr);

  std::size_t passes() const { return passes_; }
  std::size_t failures() const { return failures_; }
  bool succeeded() const { return failures_ == 0; }
  const ExperimentConfig& config() const { return config_; }
  const std::vector<nlohmann::json>& cases() const { return cases_; }
  const std::vector<nlohmann::json>& counterexamples() const { return counterexamples_; }

  void set_wall_time(double seconds) { wall_time_s_ = seconds; }

  /// Versioned report; with include_timing false the result is a pure
  /// function of the configuration.
  nlohmann::json to_json(bool include_timing = true) const;
  /// Header line plus one summary row.
  std::string to_csv() const;

 private:
  ExperimentConfig config_;
  std::string statement_;
  std::vector<nlohmann::json> cases_;
  std::vector<nlohmann::json> counterexamples_;
  std::size_t passes_ = 0;
  std::size_t failures_ = 0;
  double wall_time_s_ = 0.0;
};

const std::vector<std::string>& command_names();

/// Runs the named suite. Throws UnsupportedError for an unknown command or
/// a shape outside the command's hypotheses.
Report run(const ExperimentConfig& config);

/// Writes the report to config.out (or stdout when empty) in config.format.
void write_report(const Report& report);

}  // namespace plueckerlab
