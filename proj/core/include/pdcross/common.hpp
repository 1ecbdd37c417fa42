#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdcross {

/// Thrown when an exact search would exceed its configured budget.
/// The toolkit never silently degrades to an approximate answer.
struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

/// Node/size limits for the exact searches. Exceeding any limit raises
/// BudgetExceededError with a message naming the limit.
struct SearchBudget {
  std::int64_t max_nodes = 5'000'000;  // backtracking nodes
  int max_vertices = 30;               // instance size cap for the exact oracle
  std::int64_t max_candidates = 2'000'000;  // enumeration caps (paths, pairs, ...)

  void charge(std::int64_t& counter, const char* where) const {
    if (++counter > max_nodes) {
      throw BudgetExceededError(std::string(where) + ": search node budget exceeded");
    }
  }
};

}  // namespace pdcross
