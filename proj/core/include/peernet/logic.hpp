#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "peernet/crypto.hpp"
#include "peernet/prefix.hpp"

namespace peernet {
namespace logic {

struct Term;

// Finite list, optionally with a tail pattern as in [?Head|?Tail]. A proper
// (fully ground) list has no tail.
struct ListTerm {
  std::vector<Term> items;
  std::shared_ptr<const Term> tail;  // null for a proper list
};

struct Symbol {
  std::string name;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct Variable {
  std::string name;  // without the leading '?'
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct Term {
  std::variant<Symbol, Prefix, Pid, int64_t, ListTerm, Variable> value;

  Term() : value(Symbol{}) {}
  explicit Term(Symbol s) : value(std::move(s)) {}
  explicit Term(Prefix p) : value(p) {}
  explicit Term(Pid p) : value(p) {}
  explicit Term(int64_t n) : value(n) {}
  explicit Term(ListTerm l) : value(std::move(l)) {}
  explicit Term(Variable v) : value(std::move(v)) {}

  static Term sym(std::string name) { return Term(Symbol{std::move(name)}); }
  static Term var(std::string name) { return Term(Variable{std::move(name)}); }
  static Term list(std::vector<Term> items) {
    return Term(ListTerm{std::move(items), nullptr});
  }

  bool isVar() const { return std::holds_alternative<Variable>(value); }
  bool isList() const { return std::holds_alternative<ListTerm>(value); }
  const ListTerm* asList() const { return std::get_if<ListTerm>(&value); }
  const Pid* asPid() const { return std::get_if<Pid>(&value); }
  const Prefix* asPrefix() const { return std::get_if<Prefix>(&value); }
  const Symbol* asSymbol() const { return std::get_if<Symbol>(&value); }

  bool ground() const;
  std::string str() const;
};

bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
// Total order over ground and non-ground terms, used for canonical encoding
// and deterministic result ordering.
bool termLess(const Term& a, const Term& b);

struct Atom {
  std::string pred;
  std::vector<Term> args;

  bool ground() const;
  std::string str() const;
};

bool operator==(const Atom& a, const Atom& b);
bool atomLess(const Atom& a, const Atom& b);

// One body element: an atom, optionally qualified by a speaker term
// (`?Who: pred(...)` matches only facts attributed to that principal).
struct Literal {
  std::optional<Term> speaker;
  Atom atom;

  std::string str() const;
};

constexpr const char* kBuiltinContains = "<:";
constexpr const char* kBuiltinEq = "eq";

enum class StatementKind { Fact, Rule };

// An attributed fact or rule. Facts are ground and carry the speaker that
// signed (or locally supplied) them; rules derive unattributed conclusions.
struct Statement {
  Pid speaker;
  Atom head;
  std::vector<Literal> body;  // empty for facts

  bool isFact() const { return body.empty(); }
  StatementKind kind() const {
    return body.empty() ? StatementKind::Fact : StatementKind::Rule;
  }
  std::string str() const;  // without the speaker
};

bool operator==(const Statement& a, const Statement& b);
bool statementLess(const Statement& a, const Statement& b);

// Parses the textual syntax used in tests and rule packages:
//   speakerless fact:   pred(arg, ...)
//   rule:               head(...) :- lit, ?S: lit2, ?P <: ?Q.
//   terms:              sym, 42, 1.2.3.0/24, ?Var, [a,b], [?H|?T], #<64 hex>
// Returns statements with a zero speaker; callers attribute them.
std::vector<Statement> parseStatements(std::string_view text);
Statement parseStatement(std::string_view text);
Term parseTerm(std::string_view text);

}  // namespace logic
}  // namespace peernet
