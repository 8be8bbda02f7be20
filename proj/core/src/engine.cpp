#include "peernet/engine.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace peernet {
namespace logic {

void Context::addFact(Statement fact) {
  facts_.push_back(std::move(fact));
  indexDirty_ = true;
}

void Context::addRule(Statement rule) {
  rules_.push_back(std::move(rule));
}

void Context::add(Statement st) {
  if (st.isFact()) {
    addFact(std::move(st));
  } else {
    addRule(std::move(st));
  }
}

void Context::merge(const Context& other) {
  for (const auto& f : other.facts_) facts_.push_back(f);
  for (const auto& r : other.rules_) rules_.push_back(r);
  indexDirty_ = true;
}

void Context::reindex() const {
  factIndex_.clear();
  // Canonical statement order makes query results independent of the order
  // statements were added in.
  std::vector<size_t> order(facts_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return statementLess(facts_[a], facts_[b]);
  });
  for (size_t i : order) {
    factIndex_.emplace(facts_[i].head.pred, i);
  }
  indexDirty_ = false;
}

std::vector<const Statement*> Context::factsFor(const std::string& pred) const {
  if (indexDirty_ || (factIndex_.empty() && !facts_.empty())) reindex();
  std::vector<const Statement*> out;
  auto [begin, end] = factIndex_.equal_range(pred);
  for (auto it = begin; it != end; ++it) {
    out.push_back(&facts_[it->second]);
  }
  return out;
}

namespace {

// Substitution maps rename-stamped variable names to terms.
using Subst = std::map<std::string, Term>;

Term walk(const Term& t, const Subst& s) {
  if (const auto* v = std::get_if<Variable>(&t.value)) {
    auto it = s.find(v->name);
    if (it != s.end()) return walk(it->second, s);
  }
  return t;
}

Term resolveTerm(const Term& t, const Subst& s) {
  Term w = walk(t, s);
  if (const auto* list = w.asList()) {
    ListTerm out;
    for (const auto& item : list->items) {
      out.items.push_back(resolveTerm(item, s));
    }
    if (list->tail) {
      Term tail = resolveTerm(*list->tail, s);
      if (const auto* tailList = tail.asList()) {
        // Splice a resolved tail list into the outer list.
        for (const auto& item : tailList->items) out.items.push_back(item);
        out.tail = tailList->tail;
      } else {
        out.tail = std::make_shared<Term>(std::move(tail));
      }
    }
    return Term(std::move(out));
  }
  return w;
}

bool unify(const Term& a, const Term& b, Subst& s);

bool unifyLists(const ListTerm& a, const ListTerm& b, Subst& s) {
  const size_t n = std::min(a.items.size(), b.items.size());
  for (size_t i = 0; i < n; ++i) {
    if (!unify(a.items[i], b.items[i], s)) return false;
  }
  auto rest = [](const ListTerm& l, size_t from) {
    ListTerm r;
    r.items.assign(l.items.begin() + from, l.items.end());
    r.tail = l.tail;
    return r;
  };
  if (a.items.size() == b.items.size()) {
    if (!a.tail && !b.tail) return true;
    if (a.tail && b.tail) return unify(*a.tail, *b.tail, s);
    const ListTerm empty{};
    if (a.tail) return unify(*a.tail, Term(empty), s);
    return unify(Term(empty), *b.tail, s);
  }
  if (a.items.size() < b.items.size()) {
    if (!a.tail) return false;
    return unify(*a.tail, Term(rest(b, a.items.size())), s);
  }
  if (!b.tail) return false;
  return unify(Term(rest(a, b.items.size())), *b.tail, s);
}

bool unify(const Term& rawA, const Term& rawB, Subst& s) {
  Term a = walk(rawA, s);
  Term b = walk(rawB, s);
  if (const auto* va = std::get_if<Variable>(&a.value)) {
    if (const auto* vb = std::get_if<Variable>(&b.value); vb && vb->name == va->name) {
      return true;
    }
    s[va->name] = b;
    return true;
  }
  if (const auto* vb = std::get_if<Variable>(&b.value)) {
    s[vb->name] = a;
    return true;
  }
  if (a.isList() && b.isList()) {
    return unifyLists(*a.asList(), *b.asList(), s);
  }
  return a == b;
}

struct Evaluator {
  const Context& ctx;
  std::vector<const Statement*> rules;
  const QueryOptions& options;
  int renameCounter = 0;

  Term rename(const Term& t, const std::string& stamp) {
    if (const auto* v = std::get_if<Variable>(&t.value)) {
      return Term::var(v->name + stamp);
    }
    if (const auto* list = t.asList()) {
      ListTerm out;
      for (const auto& item : list->items) out.items.push_back(rename(item, stamp));
      if (list->tail) out.tail = std::make_shared<Term>(rename(*list->tail, stamp));
      return Term(std::move(out));
    }
    return t;
  }

  Literal renameLiteral(const Literal& lit, const std::string& stamp) {
    Literal out;
    if (lit.speaker) out.speaker = rename(*lit.speaker, stamp);
    out.atom.pred = lit.atom.pred;
    for (const auto& arg : lit.atom.args) {
      out.atom.args.push_back(rename(arg, stamp));
    }
    return out;
  }

  bool evalBuiltin(const Literal& goal, Subst& s) {
    const Atom& atom = goal.atom;
    if (atom.pred == kBuiltinContains) {
      if (atom.args.size() != 2) throw BuiltinError("<: expects two arguments");
      Term lhs = resolveTerm(atom.args[0], s);
      Term rhs = resolveTerm(atom.args[1], s);
      const auto* inner = lhs.asPrefix();
      const auto* outer = rhs.asPrefix();
      if (!inner || !outer) {
        throw BuiltinError("<: applied to non-ground or non-prefix argument");
      }
      return outer->contains(*inner);
    }
    return false;
  }

  // Solve the goal list under `s`; call `emit` for every solution.
  void solve(const std::vector<Literal>& goals, size_t index, Subst s, int depth,
             const std::function<void(const Subst&)>& emit) {
    if (depth > options.depthLimit) {
      throw DepthLimitExceeded("query depth limit exceeded (non-terminating rules?)");
    }
    if (index == goals.size()) {
      emit(s);
      return;
    }
    const Literal& goal = goals[index];
    if (goal.atom.pred == kBuiltinContains) {
      if (evalBuiltin(goal, s)) solve(goals, index + 1, std::move(s), depth, emit);
      return;
    }
    if (goal.atom.pred == kBuiltinEq) {
      if (goal.atom.args.size() != 2) throw BuiltinError("eq expects two arguments");
      Subst next = s;
      if (unify(goal.atom.args[0], goal.atom.args[1], next)) {
        solve(goals, index + 1, std::move(next), depth, emit);
      }
      return;
    }
    // Facts.
    for (const Statement* fact : ctx.factsFor(goal.atom.pred)) {
      if (fact->head.args.size() != goal.atom.args.size()) continue;
      Subst next = s;
      if (goal.speaker && !unify(*goal.speaker, Term(fact->speaker), next)) continue;
      bool ok = true;
      for (size_t i = 0; i < goal.atom.args.size() && ok; ++i) {
        ok = unify(goal.atom.args[i], fact->head.args[i], next);
      }
      if (ok) solve(goals, index + 1, next, depth, emit);
    }
    // Rules derive unattributed conclusions; a speaker-qualified goal matches
    // facts only.
    if (goal.speaker) return;
    for (const Statement* rule : rules) {
      if (rule->head.pred != goal.atom.pred ||
          rule->head.args.size() != goal.atom.args.size()) {
        continue;
      }
      const std::string stamp = "~" + std::to_string(++renameCounter);
      Subst next = s;
      bool ok = true;
      for (size_t i = 0; i < goal.atom.args.size() && ok; ++i) {
        ok = unify(goal.atom.args[i], rename(rule->head.args[i], stamp), next);
      }
      if (!ok) continue;
      std::vector<Literal> body;
      body.reserve(rule->body.size());
      for (const auto& lit : rule->body) body.push_back(renameLiteral(lit, stamp));
      solve(body, 0, next, depth + 1, [&](const Subst& bodySolution) {
        solve(goals, index + 1, bodySolution, depth, emit);
      });
    }
  }
};

std::set<std::string> goalVariables(const Literal& goal) {
  std::set<std::string> out;
  std::function<void(const Term&)> visit = [&](const Term& t) {
    if (const auto* v = std::get_if<Variable>(&t.value)) {
      out.insert(v->name);
    } else if (const auto* list = t.asList()) {
      for (const auto& item : list->items) visit(item);
      if (list->tail) visit(*list->tail);
    }
  };
  if (goal.speaker) visit(*goal.speaker);
  for (const auto& arg : goal.atom.args) visit(arg);
  return out;
}

}  // namespace

std::vector<Bindings> query(const Context& ctx, const Literal& goal,
                            const std::vector<Statement>& rules,
                            const QueryOptions& options) {
  Evaluator ev{ctx, {}, options};
  for (const auto& r : ctx.rules()) ev.rules.push_back(&r);
  for (const auto& r : rules) ev.rules.push_back(&r);

  const auto vars = goalVariables(goal);
  std::vector<Bindings> results;
  std::set<std::string> seen;
  ev.solve({goal}, 0, {}, 0, [&](const Subst& s) {
    Bindings b;
    std::string key;
    for (const auto& name : vars) {
      Term value = resolveTerm(Term::var(name), s);
      key += value.str();
      key.push_back('\xff');
      b[name] = std::move(value);
    }
    if (seen.insert(key).second) results.push_back(std::move(b));
  });
  std::sort(results.begin(), results.end(), [](const Bindings& a, const Bindings& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
      if (termLess(ia->second, ib->second)) return true;
      if (termLess(ib->second, ia->second)) return false;
    }
    return false;
  });
  return results;
}

bool queryHolds(const Context& ctx, const Literal& goal,
                const std::vector<Statement>& rules, const QueryOptions& options) {
  return !query(ctx, goal, rules, options).empty();
}

}  // namespace logic
}  // namespace peernet
