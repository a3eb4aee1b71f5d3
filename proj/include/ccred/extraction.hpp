#pragma once

#include <string>
#include <vector>

#include "ccred/metrics.hpp"

namespace ccred {

inline constexpr const char* kReasonOk = "OK";
inline constexpr const char* kReasonReturnFlow =
    "Selected block contains a conditional return";
inline constexpr const char* kReasonJumpTarget =
    "Selected block contains a break or continue whose target is not selected";
inline constexpr const char* kReasonMultiOutput =
    "Selected block defines more than one variable used after the block";

// A contiguous run of sibling statements, the unit of extraction.
struct Region {
  Span span;
  NodeId container = kInvalidNode;
  std::vector<NodeId> statements;
  int lambda = 0;
};

struct DataflowFacts {
  struct Var {
    std::string name;
    std::string type;
    bool declared_inside = false;  // declared at run level within the region
  };
  std::vector<Var> inputs;   // ordered by first use in the region
  std::vector<Var> outputs;  // written/declared in region, read afterwards
  bool contains_return = false;
  bool all_paths_return = false;
  std::vector<NodeId> jump_escapes;  // break/continue escaping the region
};

struct Feasibility {
  bool feasible = false;
  std::string reason;
};

struct CacheEntry {
  int start = 0;
  int end = 0;
  bool feasible = false;
  std::string reason;
  int num_params = 0;
  int loc = 0;
  int ccr = 0;
  int nmcc = 0;
  int iota = 0;
  int nu = 0;
  int mu = 0;
  int lambda = 0;

  Span span() const { return Span{start, end}; }
  bool operator==(const CacheEntry&) const = default;
};

struct RefactoringCache {
  std::string method_id;
  Span body_span;  // run covering the whole method body
  std::vector<CacheEntry> entries;  // sorted by (start asc, end asc)
};

// Every contiguous sibling run, at every depth, containing at least one
// complexity-contributing construct. Sorted by (start, end).
std::vector<Region> enumerate_candidates(const AnnotatedMethod& annotated);

DataflowFacts dataflow_facts(const AnnotatedMethod& annotated,
                             const Region& region);

Feasibility check_feasibility(const AnnotatedMethod& annotated,
                              const Region& region);

RefactoringCache build_cache(const AnnotatedMethod& annotated);

std::string method_address(const MethodDecl& method);

// One line per entry:
//   start, end, feasible, "reason", params, loc, CCR, NMCC, iota, nu, mu, lambda
std::string write_cache_csv(const RefactoringCache& cache);
RefactoringCache read_cache_csv(const std::string& text);  // CsvFormatError

}  // namespace ccred
