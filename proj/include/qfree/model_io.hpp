#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qfree/car_charge.hpp"
#include "qfree/gauge.hpp"

// Model files: JSON with
//   "algebra": "car" | "ccr"                       (optional; the CLI flag wins)
//   "space": {"domain_modes": n, "codomain_modes": m, "labels": [...]}
//   "isometry": {"builder": "shift(3)"} or {"re": [[..]], "im": [[..]]}
//   "declared_index": integer or "infinite"        (optional)
//   "gauge": {"group": "U1" | "UN" | "SUN" | "Z2" | "Custom", "n": N,
//             "domain_charges": [..], "codomain_charges": [..],
//             "elements": [{"domain": M, "codomain": M}, ..],
//             "sample_size": k, "seed": s}
// Matrices are {"re": rows, "im": rows} in row-major order.
namespace qfree {

struct ModelFile {
  std::string label;
  std::string builder;  // canonical builder spec, empty for explicit matrices
  std::optional<Algebra> algebra;
  BlockOperator v;
  std::vector<std::string> mode_labels;
  DeclaredIndex declared;
  GaugeAction gauge;
  int sample_size = 0;  // 0: group default
  std::optional<std::uint64_t> seed;
  bool dirac = false;
  Index dirac_w = 0;
  Index dirac_m = 0;
};

/// MalformedInput on any structural problem.
ModelFile parse_model(const nlohmann::json& j);
ModelFile load_model(const std::string& path);
/// The file bytes, for digests.
std::string read_file(const std::string& path);

ModelFile model_from_builder(const std::string& spec);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& what);

Algebra algebra_from_string(const std::string& s);

}  // namespace qfree
