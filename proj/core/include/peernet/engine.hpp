#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "peernet/logic.hpp"

namespace peernet {
namespace logic {

// Assembled set of attributed statements a guard queries against: facts and
// rules extracted from a validated certificate DAG plus caller statements.
class Context {
 public:
  void addFact(Statement fact);
  void addRule(Statement rule);
  void add(Statement st);
  void merge(const Context& other);

  const std::vector<Statement>& facts() const { return facts_; }
  const std::vector<Statement>& rules() const { return rules_; }

  // Facts with the given predicate name, in canonical order.
  std::vector<const Statement*> factsFor(const std::string& pred) const;

  size_t factCount() const { return facts_.size(); }

 private:
  void reindex() const;

  std::vector<Statement> facts_;
  std::vector<Statement> rules_;
  mutable std::multimap<std::string, size_t> factIndex_;
  mutable bool indexDirty_ = false;
};

using Bindings = std::map<std::string, Term>;

struct QueryOptions {
  int depthLimit = 256;
};

class DepthLimitExceeded : public std::runtime_error {
 public:
  explicit DepthLimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

class BuiltinError : public std::runtime_error {
 public:
  explicit BuiltinError(const std::string& what) : std::runtime_error(what) {}
};

// Top-down evaluation of `goal` over ctx facts plus ctx rules and the
// supplied rule package.  Results are deduplicated and canonically ordered,
// independent of statement insertion order.  Builtins: `<:` (inclusive IPv4
// prefix containment, both arguments ground) and `eq` (unification, used to
// destructure ground lists).
std::vector<Bindings> query(const Context& ctx, const Literal& goal,
                            const std::vector<Statement>& rules,
                            const QueryOptions& options = {});

bool queryHolds(const Context& ctx, const Literal& goal,
                const std::vector<Statement>& rules, const QueryOptions& options = {});

}  // namespace logic
}  // namespace peernet
