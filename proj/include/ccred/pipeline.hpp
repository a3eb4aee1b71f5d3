#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccred/oracle.hpp"
#include "ccred/refactor.hpp"

namespace ccred {

struct PipelineOptions {
  int tau = 15;
  double time_limit_seconds = 300.0;
  bool use_oracle = false;
  int oracle_max_nodes = kOracleDefaultMaxNodes;
  int jobs = 1;
};

// One row per processed method; mirrors the aggregate report columns.
struct MethodReport {
  std::string file;
  std::string class_name;
  std::string method_name;
  std::string status;  // Compliant|Optimal|Feasible|Infeasible|Unknown|Error
  int initial_cc = 0;
  std::optional<int> final_cc;
  int extractions = 0;
  int min_ccr = 0;
  double avg_ccr = 0;
  int max_ccr = 0;
  int min_loc = 0;
  double avg_loc = 0;
  int max_loc = 0;
  int total_loc = 0;
  int min_params = 0;
  double avg_params = 0;
  int max_params = 0;
  int total_params = 0;
  int model_vars = 0;
  int model_constraints = 0;
  double solve_seconds = 0;
  double cache_seconds = 0;
  std::string error;
};

struct MethodResult {
  MethodReport report;
  std::optional<ExtractionPlan> plan;
  std::string plan_json;  // empty when no plan was produced
  Span method_span;
};

struct PipelineResult {
  std::vector<MethodResult> methods;

  bool has_errors() const {
    for (const MethodResult& m : methods)
      if (m.report.status == "Error") return true;
    return false;
  }
};

std::vector<std::string> discover_java_files(const std::string& path);

// Full batch: parse every file under `path`, measure every method, and give
// each one over the threshold the cache -> graph -> model -> solve -> plan
// treatment. Per-method failures become Error rows; the batch never aborts.
PipelineResult run_pipeline(const std::string& path,
                            const PipelineOptions& options);

// Aggregate CSV over Optimal-status rows: one row per metric with
// Min/1st.Q/Median/Mean/3rd.Q/Max columns (quartiles linearly interpolated).
std::string aggregate_report(const std::vector<MethodReport>& reports);

MethodReport report_from_json(const std::string& json_text);
std::string report_to_json(const MethodReport& report);

struct ApplyResult {
  PipelineResult pipeline;
  std::vector<VerifyReport> verifications;
  bool all_verified = true;
};

// Runs the pipeline, applies every produced plan, writes the rewritten tree
// under out_dir (unchanged files are copied) and verifies the result.
ApplyResult apply_project(const std::string& path, const std::string& out_dir,
                          const PipelineOptions& options);

}  // namespace ccred
