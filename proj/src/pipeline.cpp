#include "ccred/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "ccred/errors.hpp"
#include "ccred/parser.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace ccred {
namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

json plan_to_json(const ExtractionPlan& plan, const std::string& status) {
  json selected = json::array();
  for (const PlanEntry& e : plan.entries) {
    selected.push_back({{"start", e.region.begin},
                        {"end", e.region.end},
                        {"ccr", e.metrics.ccr},
                        {"nmcc", e.metrics.nmcc},
                        {"params", e.inputs.size()},
                        {"name", e.name}});
  }
  return json{{"class", plan.class_name},
              {"method", plan.method_name},
              {"status", status},
              {"objective", plan.entries.size()},
              {"selected", selected},
              {"predicted_final_cc", plan.predicted_final_cc}};
}

MethodResult process_method(const CompilationUnit& unit,
                            const MethodDecl& method, const std::string& file,
                            const PipelineOptions& options) {
  MethodResult result;
  MethodReport& report = result.report;
  report.file = file;
  report.class_name = method.owner_class;
  report.method_name = method.name;
  result.method_span = method.span;

  if (!method.analyzable) {
    report.status = "Error";
    report.error = "UnsupportedConstruct: " + method.problem;
    return result;
  }

  AnnotatedMethod annotated = annotate_method(unit, method);
  report.initial_cc = annotated.sscc;
  if (annotated.sscc <= options.tau) {
    report.status = "Compliant";
    report.final_cc = annotated.sscc;
    return result;
  }

  try {
    auto cache_start = std::chrono::steady_clock::now();
    RefactoringCache cache = build_cache(annotated);
    ConflictGraph graph = build_graph(cache);
    report.cache_seconds = seconds_since(cache_start);

    IlpModel model = build_model(graph, options.tau);
    report.model_vars = model.num_vars();
    report.model_constraints = static_cast<int>(model.constraints.size());

    SolveResult solved;
    auto solve_start = std::chrono::steady_clock::now();
    if (options.use_oracle &&
        graph.extraction_count() <= options.oracle_max_nodes) {
      OracleResult oracle = solve_exhaustive(graph, options.tau,
                                             options.oracle_max_nodes);
      solved.status = oracle.status;
      solved.selected = oracle.selected;
      solved.objective = static_cast<int>(oracle.selected.size());
    } else {
      solved = solve(model, options.time_limit_seconds);
    }
    report.solve_seconds = seconds_since(solve_start);
    report.status = solve_status_name(solved.status);

    if (solved.status == SolveStatus::Optimal ||
        solved.status == SolveStatus::Feasible) {
      ExtractionPlan plan = make_plan(graph, solved, annotated);
      report.final_cc = plan.predicted_final_cc;
      report.extractions = static_cast<int>(plan.entries.size());

      std::map<std::pair<int, int>, const CacheEntry*> by_span;
      for (const CacheEntry& e : cache.entries)
        by_span[{e.start, e.end}] = &e;
      bool first = true;
      for (const PlanEntry& e : plan.entries) {
        const CacheEntry* ce = by_span.at({e.region.begin, e.region.end});
        int params = static_cast<int>(e.inputs.size());
        if (first) {
          report.min_ccr = report.max_ccr = ce->ccr;
          report.min_loc = report.max_loc = ce->loc;
          report.min_params = report.max_params = params;
          first = false;
        } else {
          report.min_ccr = std::min(report.min_ccr, ce->ccr);
          report.max_ccr = std::max(report.max_ccr, ce->ccr);
          report.min_loc = std::min(report.min_loc, ce->loc);
          report.max_loc = std::max(report.max_loc, ce->loc);
          report.min_params = std::min(report.min_params, params);
          report.max_params = std::max(report.max_params, params);
        }
        report.avg_ccr += ce->ccr;
        report.total_loc += ce->loc;
        report.total_params += params;
      }
      if (!plan.entries.empty()) {
        double n = static_cast<double>(plan.entries.size());
        report.avg_ccr /= n;
        report.avg_loc = report.total_loc / n;
        report.avg_params = report.total_params / n;
      }
      result.plan_json = plan_to_json(plan, report.status).dump(2);
      result.plan = std::move(plan);
    }
  } catch (const Error& e) {
    report.status = "Error";
    report.error = e.what();
  }
  return result;
}

}  // namespace

std::vector<std::string> discover_java_files(const std::string& path) {
  std::vector<std::string> files;
  fs::path root(path);
  if (fs::is_directory(root)) {
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".java")
        files.push_back(entry.path().string());
    }
  } else if (fs::exists(root)) {
    files.push_back(root.string());
  } else {
    throw IoError("no such file or directory: " + path);
  }
  std::sort(files.begin(), files.end());
  return files;
}

PipelineResult run_pipeline(const std::string& path,
                            const PipelineOptions& options) {
  PipelineResult result;

  struct ParsedFile {
    std::string file;
    std::unique_ptr<CompilationUnit> unit;
  };
  std::vector<ParsedFile> parsed;

  for (const std::string& file : discover_java_files(path)) {
    try {
      auto unit = std::make_unique<CompilationUnit>(
          parse(SourceFile::load(file)));
      parsed.push_back({file, std::move(unit)});
    } catch (const Error& e) {
      MethodResult error_row;
      error_row.report.file = file;
      error_row.report.status = "Error";
      error_row.report.error = std::string("ParseError: ") + e.what();
      result.methods.push_back(std::move(error_row));
    }
  }

  struct Task {
    const CompilationUnit* unit;
    const MethodDecl* method;
    const std::string* file;
  };
  std::vector<Task> tasks;
  for (const ParsedFile& pf : parsed) {
    for (const MethodDecl* m : list_methods(*pf.unit))
      tasks.push_back({pf.unit.get(), m, &pf.file});
  }

  std::vector<MethodResult> rows(tasks.size());
  int jobs = std::max(1, options.jobs);
  if (jobs == 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      rows[i] = process_method(*tasks[i].unit, *tasks[i].method,
                               *tasks[i].file, options);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          rows[i] = process_method(*tasks[i].unit, *tasks[i].method,
                                   *tasks[i].file, options);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }

  for (MethodResult& row : rows) result.methods.push_back(std::move(row));
  return result;
}

namespace {

std::string format_number(double value) {
  if (std::abs(value - std::llround(value)) < 1e-9)
    return std::to_string(std::llround(value));
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << value;
  return out.str();
}

// Quartiles by linear interpolation between order statistics.
double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  if (values.empty()) return 0;
  double h = (static_cast<double>(values.size()) - 1) * q;
  std::size_t lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

}  // namespace

std::string aggregate_report(const std::vector<MethodReport>& reports) {
  struct Metric {
    const char* name;
    double (*get)(const MethodReport&);
  };
  static const Metric metrics[] = {
      {"extractions", [](const MethodReport& r) { return double(r.extractions); }},
      {"initialCC", [](const MethodReport& r) { return double(r.initial_cc); }},
      {"finalCC", [](const MethodReport& r) { return double(r.final_cc.value_or(0)); }},
      {"minCCR", [](const MethodReport& r) { return double(r.min_ccr); }},
      {"avgCCR", [](const MethodReport& r) { return r.avg_ccr; }},
      {"maxCCR", [](const MethodReport& r) { return double(r.max_ccr); }},
      {"minLOC", [](const MethodReport& r) { return double(r.min_loc); }},
      {"avgLOC", [](const MethodReport& r) { return r.avg_loc; }},
      {"maxLOC", [](const MethodReport& r) { return double(r.max_loc); }},
      {"totalLOC", [](const MethodReport& r) { return double(r.total_loc); }},
      {"minParams", [](const MethodReport& r) { return double(r.min_params); }},
      {"avgParams", [](const MethodReport& r) { return r.avg_params; }},
      {"maxParams", [](const MethodReport& r) { return double(r.max_params); }},
      {"totalParams", [](const MethodReport& r) { return double(r.total_params); }},
  };

  std::ostringstream out;
  out << "Metric,Min,1st.Q,Median,Mean,3rd.Q,Max\n";
  std::vector<const MethodReport*> optimal;
  for (const MethodReport& r : reports)
    if (r.status == "Optimal") optimal.push_back(&r);
  if (optimal.empty()) return out.str();

  for (const Metric& metric : metrics) {
    std::vector<double> values;
    for (const MethodReport* r : optimal) values.push_back(metric.get(*r));
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    out << metric.name << "," << format_number(quantile(values, 0.0)) << ","
        << format_number(quantile(values, 0.25)) << ","
        << format_number(quantile(values, 0.5)) << "," << format_number(mean)
        << "," << format_number(quantile(values, 0.75)) << ","
        << format_number(quantile(values, 1.0)) << "\n";
  }
  return out.str();
}

std::string report_to_json(const MethodReport& r) {
  json j{{"file", r.file},
         {"class", r.class_name},
         {"method", r.method_name},
         {"status", r.status},
         {"initialCC", r.initial_cc},
         {"extractions", r.extractions},
         {"minCCR", r.min_ccr},
         {"avgCCR", r.avg_ccr},
         {"maxCCR", r.max_ccr},
         {"minLOC", r.min_loc},
         {"avgLOC", r.avg_loc},
         {"maxLOC", r.max_loc},
         {"totalLOC", r.total_loc},
         {"minParams", r.min_params},
         {"avgParams", r.avg_params},
         {"maxParams", r.max_params},
         {"totalParams", r.total_params},
         {"model_vars", r.model_vars},
         {"model_constraints", r.model_constraints},
         {"solve_seconds", r.solve_seconds},
         {"cache_seconds", r.cache_seconds}};
  if (r.final_cc) j["finalCC"] = *r.final_cc;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

MethodReport report_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  MethodReport r;
  r.file = j.value("file", "");
  r.class_name = j.value("class", "");
  r.method_name = j.value("method", "");
  r.status = j.value("status", "");
  r.initial_cc = j.value("initialCC", 0);
  if (j.contains("finalCC")) r.final_cc = j["finalCC"].get<int>();
  r.extractions = j.value("extractions", 0);
  r.min_ccr = j.value("minCCR", 0);
  r.avg_ccr = j.value("avgCCR", 0.0);
  r.max_ccr = j.value("maxCCR", 0);
  r.min_loc = j.value("minLOC", 0);
  r.avg_loc = j.value("avgLOC", 0.0);
  r.max_loc = j.value("maxLOC", 0);
  r.total_loc = j.value("totalLOC", 0);
  r.min_params = j.value("minParams", 0);
  r.avg_params = j.value("avgParams", 0.0);
  r.max_params = j.value("maxParams", 0);
  r.total_params = j.value("totalParams", 0);
  r.model_vars = j.value("model_vars", 0);
  r.model_constraints = j.value("model_constraints", 0);
  r.solve_seconds = j.value("solve_seconds", 0.0);
  r.cache_seconds = j.value("cache_seconds", 0.0);
  r.error = j.value("error", "");
  return r;
}

ApplyResult apply_project(const std::string& path, const std::string& out_dir,
                          const PipelineOptions& options) {
  ApplyResult result;
  result.pipeline = run_pipeline(path, options);

  // Group plans by file; rewrite back-to-front so earlier offsets hold.
  std::map<std::string, std::vector<const MethodResult*>> plans_by_file;
  for (const MethodResult& m : result.pipeline.methods) {
    if (m.plan) plans_by_file[m.report.file].push_back(&m);
  }

  fs::path root(path);
  bool root_is_dir = fs::is_directory(root);
  fs::create_directories(out_dir);

  for (const std::string& file : discover_java_files(path)) {
    fs::path rel = root_is_dir ? fs::relative(file, root)
                               : fs::path(file).filename();
    fs::path dest = fs::path(out_dir) / rel;
    fs::create_directories(dest.parent_path());

    std::string text = SourceFile::load(file).text();
    auto it = plans_by_file.find(file);
    if (it != plans_by_file.end()) {
      std::vector<const MethodResult*> methods = it->second;
      std::sort(methods.begin(), methods.end(),
                [](const MethodResult* a, const MethodResult* b) {
                  return a->method_span.begin > b->method_span.begin;
                });
      for (const MethodResult* m : methods) {
        RefactorOutcome outcome =
            apply_plan(SourceFile::from_text(file, text), *m->plan);
        VerifyReport report = verify(outcome, options.tau);
        result.all_verified = result.all_verified && report.ok;
        result.verifications.push_back(std::move(report));
        text = std::move(outcome.text);
      }
    }
    std::ofstream out(dest, std::ios::binary);
    out << text;
  }
  return result;
}

}  // namespace ccred
