#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgfrob/fixtures.hpp"
#include "lgfrob/frobenius.hpp"
#include "lgfrob/toric.hpp"

namespace lgfrob {

inline constexpr int kInputSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitValidation = 3, kExitCertificate = 4 };

struct RunOptions {
  TraceStrategy trace_strategy = TraceStrategy::Generic;
  std::int64_t macaulay_max_extra = 1;
  std::uint64_t sample_seed = 0;
  std::size_t sample_count = 200;
  bool modular_prefilter = true;
  std::size_t threads = 1;
  std::optional<std::int64_t> max_degree_a;
};

struct RunConfig {
  std::string name;
  FanData fan;
  std::vector<std::string> variables;
  std::string polynomial;
  std::vector<std::vector<std::size_t>> zero_sets;
  std::optional<std::vector<ClassElement>> expected_degrees;
  std::vector<std::string> hypotheses;
  RunOptions options;
};

// Input documents (docs/input-schema.md). Throws InvalidInput.
RunConfig parse_run_config(const nlohmann::json& doc);
nlohmann::ordered_json to_json(const RunConfig& config);
RunConfig config_from_fixture(const Fixture& fx);

struct CommandResult {
  nlohmann::ordered_json report;
  std::string table;  // human-readable summary
  int exit_code = kExitOk;
};

// Validation, grading, polytope and Betti numbers; no Jacobian work.
CommandResult cmd_validate(const RunConfig& config, bool timings = false);
// Everything: dims, Macaulay, socle, algebra, Gram, axioms.
CommandResult cmd_report(const RunConfig& config, bool timings = false);
CommandResult cmd_dims(const RunConfig& config);
CommandResult cmd_gram(const RunConfig& config, std::optional<std::size_t> degree);

// Entry point of the lgfrob tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace lgfrob
