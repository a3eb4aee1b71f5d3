#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccred/errors.hpp"
#include "ccred/parser.hpp"
#include "ccred/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ccred;

namespace {

CompilationUnit parse_file(const std::string& path) {
  return parse(SourceFile::load(path));
}

const MethodDecl& require_method(const CompilationUnit& unit,
                                 const std::string& address) {
  const MethodDecl* method = find_method(unit, address);
  if (method == nullptr)
    throw Error("method not found: " + address +
                " (address form is Class#name or Class#name@k)");
  if (!method->analyzable)
    throw Error("method " + address + " is not analyzable: " +
                method->problem);
  return *method;
}

int cmd_analyze(const std::string& path, int tau) {
  json rows = json::array();
  bool errors = false;
  for (const std::string& file : discover_java_files(path)) {
    try {
      CompilationUnit unit = parse_file(file);
      for (const MethodDecl* m : list_methods(unit)) {
        json row{{"file", file},
                 {"class", m->owner_class},
                 {"method", m->name}};
        if (m->analyzable) {
          int sscc = annotate_method(unit, *m).sscc;
          row["sscc"] = sscc;
          row["compliant"] = sscc <= tau;
        } else {
          row["error"] = "UnsupportedConstruct: " + m->problem;
          errors = true;
        }
        rows.push_back(std::move(row));
      }
    } catch (const Error& e) {
      rows.push_back(json{{"file", file}, {"error", e.what()}});
      errors = true;
    }
  }
  std::cout << rows.dump(2) << "\n";
  return errors ? 1 : 0;
}

int cmd_plan(const std::string& path, const PipelineOptions& options,
             const std::string& out_dir) {
  PipelineResult result = run_pipeline(path, options);
  fs::create_directories(out_dir);

  std::ofstream reports(fs::path(out_dir) / "reports.json");
  reports << "[\n";
  bool first = true;
  for (const MethodResult& m : result.methods) {
    if (!first) reports << ",\n";
    first = false;
    reports << "  " << report_to_json(m.report);
    if (!m.plan_json.empty()) {
      fs::path plan_path =
          fs::path(out_dir) /
          (m.report.class_name + "#" + m.report.method_name + ".plan.json");
      std::ofstream plan_file(plan_path);
      plan_file << m.plan_json << "\n";
    }
  }
  reports << "\n]\n";

  for (const MethodResult& m : result.methods) {
    const MethodReport& r = m.report;
    std::cout << r.class_name << "#" << r.method_name << ": " << r.status;
    if (r.status == "Optimal" || r.status == "Feasible")
      std::cout << " initialCC=" << r.initial_cc
                << " finalCC=" << r.final_cc.value_or(0)
                << " extractions=" << r.extractions;
    else if (r.status == "Compliant")
      std::cout << " sscc=" << r.initial_cc;
    else if (r.status == "Error")
      std::cout << " " << r.error;
    std::cout << "\n";
  }
  std::cout << "artifacts written to " << out_dir << "\n";
  return result.has_errors() ? 1 : 0;
}

int cmd_apply(const std::string& path, const std::string& out_dir,
              const PipelineOptions& options) {
  ApplyResult result = apply_project(path, out_dir, options);
  int applied = 0;
  for (const MethodResult& m : result.pipeline.methods)
    if (m.plan) ++applied;
  std::cout << "applied " << applied << " plan(s); verification "
            << (result.all_verified ? "passed" : "FAILED") << "\n";
  for (const VerifyReport& v : result.verifications) {
    for (const auto& f : v.failures)
      std::cout << "  " << f.method << ": " << f.what << " (measured "
                << f.measured << ", predicted " << f.predicted << ")\n";
  }
  std::cout << "rewritten tree written to " << out_dir << "\n";
  return (result.pipeline.has_errors() || !result.all_verified) ? 1 : 0;
}

int cmd_report(const std::string& plans_dir) {
  fs::path reports_path = fs::path(plans_dir) / "reports.json";
  std::ifstream in(reports_path);
  if (!in) throw Error("cannot open " + reports_path.string());
  json rows = json::parse(in);
  std::vector<MethodReport> reports;
  for (const json& row : rows) reports.push_back(report_from_json(row.dump()));
  std::cout << aggregate_report(reports);
  return 0;
}

int cmd_gen(std::uint64_t seed, int count, const std::string& out_dir,
            int max_depth, int max_width) {
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    fs::path file = fs::path(out_dir) / ("Gen" + std::to_string(s) + ".java");
    std::ofstream out(file);
    out << generate_method(s, max_depth, max_width);
  }
  std::cout << "wrote " << count << " file(s) to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ccred - measures cognitive complexity of Java-subset sources and "
      "computes minimal extract-method plans via an exact 0-1 ILP"};
  app.require_subcommand(1);

  std::string path;
  std::string method_address;
  std::string out_dir = "ccred-out";
  int tau = 15;
  double time_limit = 300.0;
  bool use_oracle = false;
  bool reduced = false;
  int jobs = 1;
  std::uint64_t seed = 1;
  int count = 1;
  int max_depth = 4;
  int max_width = 4;

  auto* analyze = app.add_subcommand("analyze", "per-method complexity, JSON");
  analyze->add_option("path", path)->required();
  analyze->add_option("--threshold", tau, "compliance threshold");

  auto* cache_cmd = app.add_subcommand("cache", "refactoring cache, CSV");
  cache_cmd->add_option("file", path)->required();
  cache_cmd->add_option("--method", method_address, "Class#name[@k]")
      ->required();

  auto* graph_cmd = app.add_subcommand("graph", "conflict graph, DOT");
  graph_cmd->add_option("file", path)->required();
  graph_cmd->add_option("--method", method_address)->required();
  graph_cmd->add_flag("--reduced", reduced,
                      "draw the transitive reduction of nested edges");

  auto* model_cmd = app.add_subcommand("model", "0-1 program, LP format");
  model_cmd->add_option("file", path)->required();
  model_cmd->add_option("--method", method_address)->required();
  model_cmd->add_option("--threshold", tau);

  auto* plan_cmd =
      app.add_subcommand("plan", "solve and emit extraction plans");
  plan_cmd->add_option("path", path)->required();
  plan_cmd->add_option("--threshold", tau);
  plan_cmd->add_option("--time-limit", time_limit, "solver seconds");
  plan_cmd->add_flag("--oracle", use_oracle,
                     "exhaustive enumeration instead of branch-and-bound");
  plan_cmd->add_option("--jobs", jobs, "concurrent methods");
  plan_cmd->add_option("--out", out_dir, "artifact directory");

  auto* apply_cmd =
      app.add_subcommand("apply", "rewrite sources and verify the result");
  apply_cmd->add_option("path", path)->required();
  apply_cmd->add_option("--out", out_dir, "output tree")->required();
  apply_cmd->add_option("--threshold", tau);
  apply_cmd->add_option("--time-limit", time_limit);
  apply_cmd->add_flag("--oracle", use_oracle);
  apply_cmd->add_option("--jobs", jobs);

  auto* report_cmd =
      app.add_subcommand("report", "aggregate CSV over plan artifacts");
  report_cmd->add_option("plans-dir", path)->required();

  auto* gen_cmd = app.add_subcommand("gen", "synthetic corpus");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--count", count);
  gen_cmd->add_option("--out", out_dir)->required();
  gen_cmd->add_option("--max-depth", max_depth);
  gen_cmd->add_option("--max-width", max_width);

  CLI11_PARSE(app, argc, argv);

  PipelineOptions options;
  options.tau = tau;
  options.time_limit_seconds = time_limit;
  options.use_oracle = use_oracle;
  options.jobs = jobs;

  try {
    if (*analyze) return cmd_analyze(path, tau);
    if (*cache_cmd) {
      CompilationUnit unit = parse_file(path);
      const MethodDecl& method = require_method(unit, method_address);
      std::cout << write_cache_csv(build_cache(annotate_method(unit, method)));
      return 0;
    }
    if (*graph_cmd) {
      CompilationUnit unit = parse_file(path);
      const MethodDecl& method = require_method(unit, method_address);
      ConflictGraph graph =
          build_graph(build_cache(annotate_method(unit, method)));
      std::cout << to_dot(graph, reduced);
      return 0;
    }
    if (*model_cmd) {
      CompilationUnit unit = parse_file(path);
      const MethodDecl& method = require_method(unit, method_address);
      ConflictGraph graph =
          build_graph(build_cache(annotate_method(unit, method)));
      std::cout << export_lp(build_model(graph, tau));
      return 0;
    }
    if (*plan_cmd) return cmd_plan(path, options, out_dir);
    if (*apply_cmd) return cmd_apply(path, out_dir, options);
    if (*report_cmd) return cmd_report(path);
    if (*gen_cmd) return cmd_gen(seed, count, out_dir, max_depth, max_width);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
