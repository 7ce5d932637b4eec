// qfree: command-line front end for the quasi-free charge analysis.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "qfree/kernels.hpp"
#include "qfree/pipelines.hpp"

using namespace qfree;
using nlohmann::json;

namespace {

struct Flags {
  std::string input;
  std::string builder;
  std::string algebra;
  std::string report;
  double tol = kTol;
  std::uint64_t seed = kDefaultSeed;
  Index fock_cap = 4096;
  Index bose_cutoff = 8;
  Index bose_levels = 5;
  double bose_tail_limit = 1e-3;
  std::vector<Index> cutoffs{64, 128, 256, 512};
  int gauge_n = 1;
  int samples = 0;
  int threads = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool model) {
  if (model) {
    auto* in = cmd->add_option("--input", f.input, "model file (JSON)");
    auto* b = cmd->add_option("--builder", f.builder, "named model instead of a file, e.g. \"shift(3)\"");
    in->excludes(b);
    cmd->add_option("--algebra", f.algebra, "car or ccr (overrides the file)")
        ->check(CLI::IsMember({"car", "ccr"}));
    cmd->add_option("--fock-cap", f.fock_cap, "largest Fock dimension the oracle may build");
    cmd->add_option("--bose-cutoff", f.bose_cutoff, "bosonic occupation cutoff M");
    cmd->add_option("--bose-levels", f.bose_levels, "bosonic levels l <= L_max");
    cmd->add_option("--bose-tail-limit", f.bose_tail_limit, "largest tolerated vacuum tail 1 - ||Omega_P||^2");
    cmd->add_option("--samples", f.samples, "gauge sample size (default: file, then group default)");
  } else {
    cmd->add_option("--cutoffs", f.cutoffs, "ascending Fourier cutoffs W")->delimiter(',');
  }
  cmd->add_option("--gauge-n", f.gauge_n, "number of species N");
  cmd->add_option("--report", f.report, "write the JSON report here (default: stdout)");
  cmd->add_option("--tol", f.tol, "membership tolerance");
  cmd->add_option("--seed", f.seed, "RNG seed for gauge samples");
  cmd->add_option("--threads", f.threads, "OpenMP threads (does not change output)");
}

RunOptions options(const Flags& f, const CLI::App* cmd) {
  RunOptions o;
  if (!f.algebra.empty()) o.algebra = algebra_from_string(f.algebra);
  o.tol = f.tol;
  if (cmd->count("--seed")) o.seed = f.seed;
  o.fock_cap = f.fock_cap;
  o.bose_cutoff = f.bose_cutoff;
  o.bose_levels = f.bose_levels;
  o.bose_tail_limit = f.bose_tail_limit;
  o.cutoffs = f.cutoffs;
  o.gauge_n = f.gauge_n;
  o.sample_size = f.samples;
  return o;
}

std::pair<ModelFile, InputInfo> load(const Flags& f) {
  if (!f.builder.empty()) return {model_from_builder(f.builder), {"builder:" + f.builder, sha256_hex(f.builder)}};
  require(!f.input.empty(), ErrorKind::MalformedInput, "one of --input or --builder is required");
  return {load_model(f.input), {f.input, sha256_hex(read_file(f.input))}};
}

void emit(const json& report, const std::string& path) {
  const std::string text = dump_report(report);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::MalformedInput, "cannot write '" + path + "'");
  out << text;
}

std::string flag(const json& c) {
  return c.is_object() && c.contains("pass") ? (c["pass"].get<bool>() ? "ok" : "FAIL") : "-";
}

void summarize(const json& r) {
  const std::string cmd = r["command"];
  if (cmd == "dirac") {
    std::cout << "dirac: index " << r["index"]["index"] << ", HS verdict " << r["hs_study"]["verdict"]
              << " (control: " << r["control"]["verdict"] << "), " << r["assembly"]["statement"].get<std::string>()
              << "\n";
    return;
  }
  const json& c = r["charge"];
  std::cout << cmd << " " << r["input"]["label"].get<std::string>() << " [" << r["algebra"].get<std::string>()
            << "]: ind " << c["ind"] << ", stat_dim " << c["stat_dim"] << ", dim k " << c["dim_k"] << "\n";
  if (r.contains("implementers"))
    std::cout << "  implementers " << r["implementers"]["count"] << ", IMP residual "
              << r["implementers"]["imp_residual"]["value"] << " " << flag(r["implementers"]["imp_residual"]) << "\n";
  if (r.contains("theorem") && r["theorem"].contains("traces"))
    std::cout << "  theorem max deviation " << r["theorem"]["traces"]["max_deviation"]["value"] << " "
              << flag(r["theorem"]["traces"]["max_deviation"]) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charge data, Fock-space oracles and the chiral Dirac example for quasi-free endomorphisms"};
  app.require_subcommand(1);
  Flags f;
  auto* analyze = app.add_subcommand("analyze", "membership, charge data and sector table");
  auto* oracle = app.add_subcommand("oracle", "explicit Fock-space verification");
  auto* dirac_cmd = app.add_subcommand("dirac", "chiral Dirac convergence study");
  add_common(analyze, f, true);
  add_common(oracle, f, true);
  add_common(dirac_cmd, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command = analyze->parsed() ? "analyze" : oracle->parsed() ? "oracle" : "dirac";
  const CLI::App* cmd = analyze->parsed() ? analyze : oracle->parsed() ? oracle : dirac_cmd;
  try {
    kernels::set_threads(f.threads);
    const RunOptions opt = options(f, cmd);
    json report;
    if (command == "dirac") {
      std::string args = "dirac cutoffs=";
      for (std::size_t i = 0; i < f.cutoffs.size(); ++i) args += (i ? "," : "") + std::to_string(f.cutoffs[i]);
      args += " gauge_n=" + std::to_string(f.gauge_n);
      report = run_dirac(opt, {args, sha256_hex(args)});
    } else {
      const auto [model, info] = load(f);
      report = command == "analyze" ? run_analyze(model, info, opt) : run_oracle(model, info, opt);
    }
    emit(report, f.report);
    if (!f.report.empty()) summarize(report);
    return 0;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    std::cerr << "qfree " << command << ": " << e.what() << "\n";
    if (!f.report.empty()) {
      try {
        emit({{"schema_version", kSchemaVersion},
              {"tool_version", kToolVersion},
              {"command", command},
              {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}},
              {"exit_code", code}},
             f.report);
      } catch (const Error&) {
      }
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "qfree " << command << ": " << e.what() << "\n";
    return 4;
  }
}
