#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfree/errors.hpp"
#include "qfree/model_io.hpp"

// End-to-end runs behind the CLI subcommands.  Every run returns a JSON
// report; identical inputs give identical bytes regardless of thread count.
namespace qfree {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunOptions {
  std::optional<Algebra> algebra;       // overrides the model file
  double tol = kTol;
  std::optional<std::uint64_t> seed;    // overrides the model file
  Index fock_cap = 4096;
  Index bose_cutoff = 8;
  Index bose_levels = 5;
  double bose_tail_limit = 1e-3;
  std::vector<Index> cutoffs{64, 128, 256, 512};
  int gauge_n = 1;
  int sample_size = 0;                  // 0: model file, then group default
};

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Where the model came from, for the report header.
struct InputInfo {
  std::string source;  // path or "builder:..."
  std::string digest;  // sha256 of the bytes read
};

std::string sha256_hex(const std::string& bytes);

nlohmann::json run_analyze(const ModelFile& model, const InputInfo& input, const RunOptions& opt);
nlohmann::json run_oracle(const ModelFile& model, const InputInfo& input, const RunOptions& opt);
nlohmann::json run_dirac(const RunOptions& opt, const InputInfo& input);

/// {"value", "tolerance", "pass"} with pass = value <= tolerance.
nlohmann::json comparison(double value, double tolerance);

/// 0 success, 2 malformed input / caps, 3 not in the semigroup, 4 numerical failure.
int exit_code(ErrorKind kind);

/// Report serialisation used by the CLI (2-space indent, trailing newline).
std::string dump_report(const nlohmann::json& report);

}  // namespace qfree
