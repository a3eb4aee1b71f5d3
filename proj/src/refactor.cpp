#include "ccred/refactor.hpp"

#include <algorithm>
#include <sstream>

#include "ccred/errors.hpp"
#include "ccred/parser.hpp"

namespace ccred {
namespace {

long long removed_complexity(const ConflictGraph& graph, int j, int i) {
  const SequenceMetrics& mj = graph.nodes[j].metrics;
  int d = graph.nesting_distance(j, i);
  return mj.iota + mj.nu + static_cast<long long>(d) * mj.mu;
}

// Limit left-hand side of node i when exactly `selected` is extracted.
long long predicted_sscc(const ConflictGraph& graph,
                         const std::vector<int>& selected, int i) {
  long long value = graph.nodes[i].metrics.nmcc;
  for (int j : selected) {
    if (j == i || !graph.is_nested(j, i)) continue;
    bool masked = false;
    for (int l : selected) {
      if (l == i || l == j) continue;
      if (graph.is_nested(j, l) && graph.is_nested(l, i)) {
        masked = true;
        break;
      }
    }
    if (!masked) value -= removed_complexity(graph, j, i);
  }
  return value;
}

std::string leading_indent(const std::string& text, int offset) {
  int line_start = offset;
  while (line_start > 0 && text[line_start - 1] != '\n') --line_start;
  int ws_end = line_start;
  while (ws_end < static_cast<int>(text.size()) &&
         (text[ws_end] == ' ' || text[ws_end] == '\t'))
    ++ws_end;
  return text.substr(line_start, ws_end - line_start);
}

// Re-bases the indentation of a region's text: the first line loses nothing
// (its indent stays in the surrounding text), later lines swap the region's
// base indent for the new one.
std::string reindent(const std::string& region_text,
                     const std::string& old_base,
                     const std::string& new_base) {
  std::string out;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= region_text.size()) {
    std::size_t eol = region_text.find('\n', pos);
    std::string line = region_text.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    if (first) {
      out += new_base + line;
      first = false;
    } else if (line.find_first_not_of(" \t") == std::string::npos) {
      out += "";  // blank line stays blank
    } else {
      std::size_t lead = line.find_first_not_of(" \t");
      std::size_t drop = std::min(lead, old_base.size());
      out += new_base + line.substr(drop);
    }
    if (eol == std::string::npos) break;
    out += "\n";
    pos = eol + 1;
  }
  return out;
}

std::string call_expression(const PlanEntry& entry) {
  std::string args;
  for (std::size_t i = 0; i < entry.inputs.size(); ++i) {
    if (i) args += ", ";
    args += entry.inputs[i].name;
  }
  return entry.name + "(" + args + ")";
}

// The statement(s) replacing the region at its call site.
std::string call_site_text(const PlanEntry& entry, const MethodDecl& method,
                           const std::string& indent) {
  std::string call = call_expression(entry);
  if (entry.output) {
    if (entry.output->declared_inside)
      return entry.output->type + " " + entry.output->name + " = " + call +
             ";";
    return entry.output->name + " = " + call + ";";
  }
  if (entry.contains_return) {
    if (method.return_type == "void") return call + ";\n" + indent + "return;";
    if (entry.all_paths_return) return "return " + call + ";";
  }
  return call + ";";
}

std::string new_method_return_type(const PlanEntry& entry,
                                   const MethodDecl& method) {
  if (entry.output) return entry.output->type;
  if (entry.contains_return && entry.all_paths_return &&
      method.return_type != "void")
    return method.return_type;
  return "void";
}

}  // namespace

ExtractionPlan make_plan(const ConflictGraph& graph, const SolveResult& result,
                         const AnnotatedMethod& annotated) {
  ExtractionPlan plan;
  plan.class_name = annotated.method->owner_class;
  plan.method_id = method_address(*annotated.method);
  plan.method_name = annotated.method->name;
  plan.predicted_final_cc =
      static_cast<int>(predicted_sscc(graph, result.selected, 0));

  std::vector<int> order = result.selected;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Span sa = graph.nodes[a].span;
    const Span sb = graph.nodes[b].span;
    if (sb.properly_contains(sa)) return true;   // innermost first
    if (sa.properly_contains(sb)) return false;
    return sa.begin < sb.begin;
  });

  int k = 0;
  for (int node : order) {
    PlanEntry entry;
    entry.node_id = node;
    entry.region = graph.nodes[node].span;
    entry.name = plan.method_name + "_extracted_" + std::to_string(++k);
    entry.metrics = graph.nodes[node].metrics;
    entry.predicted_sscc =
        static_cast<int>(predicted_sscc(graph, result.selected, node));

    SiblingRun run = find_sibling_run(annotated, entry.region);
    Region region{entry.region, run.container, run.statements, run.lambda};
    DataflowFacts facts = dataflow_facts(annotated, region);
    entry.inputs = facts.inputs;
    if (!facts.outputs.empty()) entry.output = facts.outputs.front();
    entry.contains_return = facts.contains_return;
    entry.all_paths_return = facts.all_paths_return;
    plan.entries.push_back(std::move(entry));
  }
  return plan;
}

RefactorOutcome apply_plan(const SourceFile& source,
                           const ExtractionPlan& plan) {
  CompilationUnit unit = parse(source);
  const MethodDecl* method = find_method(unit, plan.method_id);
  if (method == nullptr)
    throw StaleOffsets("method " + plan.method_id + " not found");
  AnnotatedMethod annotated = annotate_method(unit, *method);
  const std::string& text = unit.source.text();

  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    const Span a = plan.entries[i].region;
    try {
      find_sibling_run(annotated, a);
    } catch (const RegionNotSiblingRun& e) {
      throw StaleOffsets(e.what());
    }
    for (std::size_t j = i + 1; j < plan.entries.size(); ++j) {
      const Span b = plan.entries[j].region;
      if (a.overlaps(b) && !a.properly_contains(b) &&
          !b.properly_contains(a) && !(a == b))
        throw PlanConflict("regions [" + std::to_string(a.begin) + ", " +
                           std::to_string(a.end) + "] and [" +
                           std::to_string(b.begin) + ", " +
                           std::to_string(b.end) + "] overlap");
    }
  }

  const std::string method_indent = leading_indent(text, method->span.begin);
  const std::string body_indent = method_indent + "    ";

  // Entries are innermost-first, so every child is finished before its
  // parent consumes it. rewritten[i] is the region text with child regions
  // already replaced by their calls.
  std::vector<std::string> rewritten(plan.entries.size());
  std::vector<std::string> new_methods(plan.entries.size());
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    const PlanEntry& entry = plan.entries[i];
    std::string region_text(
        text.substr(entry.region.begin, entry.region.length()));

    // direct children: contained in this region but in no smaller container
    struct Child {
      std::size_t index;
      Span span;
    };
    std::vector<Child> children;
    for (std::size_t j = 0; j < i; ++j) {
      const Span other = plan.entries[j].region;
      if (!entry.region.properly_contains(other)) continue;
      bool direct = true;
      for (std::size_t l = 0; l < i; ++l) {
        if (l == j) continue;
        const Span mid = plan.entries[l].region;
        if (entry.region.properly_contains(mid) &&
            mid.properly_contains(other)) {
          direct = false;
          break;
        }
      }
      if (direct) children.push_back({j, other});
    }
    std::sort(children.begin(), children.end(),
              [](const Child& a, const Child& b) {
                return a.span.begin > b.span.begin;  // splice right to left
              });
    for (const Child& child : children) {
      const PlanEntry& ce = plan.entries[child.index];
      std::string call = call_site_text(
          ce, *method, leading_indent(text, child.span.begin));
      region_text.replace(child.span.begin - entry.region.begin,
                          child.span.length(), call);
    }

    const std::string old_base = leading_indent(text, entry.region.begin);
    std::string body = reindent(region_text, old_base, body_indent);

    std::ostringstream decl;
    decl << method_indent << "private " << (method->is_static ? "static " : "")
         << new_method_return_type(entry, *method) << " " << entry.name << "(";
    for (std::size_t p = 0; p < entry.inputs.size(); ++p) {
      if (p) decl << ", ";
      decl << entry.inputs[p].type << " " << entry.inputs[p].name;
    }
    decl << ") {\n" << body << "\n";
    if (entry.output)
      decl << body_indent << "return " << entry.output->name << ";\n";
    decl << method_indent << "}";
    new_methods[i] = decl.str();
    rewritten[i] = region_text;
  }

  // Splice root regions into the method, right to left.
  std::string out = text;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < plan.entries.size(); ++i) {
    bool is_root = true;
    for (std::size_t j = 0; j < plan.entries.size(); ++j) {
      if (j != i && plan.entries[j].region.properly_contains(
                        plan.entries[i].region))
        is_root = false;
    }
    if (is_root) roots.push_back(i);
  }
  std::sort(roots.begin(), roots.end(), [&](std::size_t a, std::size_t b) {
    return plan.entries[a].region.begin > plan.entries[b].region.begin;
  });

  std::string appended;
  for (std::size_t i = 0; i < new_methods.size(); ++i)
    appended += "\n\n" + new_methods[i];
  out.insert(static_cast<std::size_t>(method->span.end) + 1, appended);

  for (std::size_t root : roots) {
    const PlanEntry& entry = plan.entries[root];
    std::string call = call_site_text(
        entry, *method, leading_indent(text, entry.region.begin));
    out.replace(entry.region.begin, entry.region.length(), call);
  }

  RefactorOutcome outcome;
  outcome.text = std::move(out);
  outcome.class_name = plan.class_name;
  outcome.methods.push_back(
      MethodMeasurement{method->name, plan.predicted_final_cc, 0});
  for (const PlanEntry& entry : plan.entries)
    outcome.methods.push_back(
        MethodMeasurement{entry.name, entry.predicted_sscc, 0});

  CompilationUnit check = parse(
      SourceFile::from_text(unit.source.path(), outcome.text));
  for (MethodMeasurement& mm : outcome.methods) {
    const MethodDecl* decl =
        find_method(check, outcome.class_name + "#" + mm.name);
    if (decl == nullptr || !decl->analyzable)
      throw StaleOffsets("rewritten method " + mm.name + " did not re-parse");
    mm.measured = annotate_method(check, *decl).sscc;
  }
  return outcome;
}

VerifyReport verify(const RefactorOutcome& outcome, int tau) {
  VerifyReport report;
  CompilationUnit unit;
  try {
    unit = parse(SourceFile::from_text("<rewritten>", outcome.text));
  } catch (const SyntaxError& e) {
    report.failures.push_back({"<file>", 0, 0, e.what()});
    return report;
  }

  for (const MethodMeasurement& mm : outcome.methods) {
    const MethodDecl* decl =
        find_method(unit, outcome.class_name + "#" + mm.name);
    if (decl == nullptr) {
      report.failures.push_back({mm.name, 0, mm.predicted, "method missing"});
      continue;
    }
    if (!decl->analyzable) {
      report.failures.push_back(
          {mm.name, 0, mm.predicted, "method not analyzable"});
      continue;
    }
    int measured = annotate_method(unit, *decl).sscc;
    if (measured != mm.predicted)
      report.failures.push_back(
          {mm.name, measured, mm.predicted, "measured != predicted"});
    if (measured > tau)
      report.failures.push_back(
          {mm.name, measured, mm.predicted, "exceeds threshold"});
  }
  report.ok = report.failures.empty();
  return report;
}

}  // namespace ccred
