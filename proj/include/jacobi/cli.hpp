#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jacobi {

enum class Command { validate, scatter, factorize, closed_form, verify };
enum class OutputFormat { csv, json };

struct RunConfig {
  Command command = Command::validate;
  std::string profile_path;
  int z_samples = 64;
  double exclusion_eps = 1e-6;
  double tolerance = 1e-9;
  std::vector<int> cuts;
  OutputFormat format = OutputFormat::csv;
  std::optional<unsigned long> seed;
  std::string out_path;  // empty: write data to the report stream
};

// Each command returns the process exit code:
//   0 all checks pass, 1 a check failed, 2 unusable input.
int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_scatter(const RunConfig& cfg, std::ostream& out);
int cmd_factorize(const RunConfig& cfg, std::ostream& out);
int cmd_closed_form(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Parse argv and dispatch; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jacobi
