#include "peernet/logic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace peernet {
namespace logic {

bool Term::ground() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Variable>) {
          return false;
        } else if constexpr (std::is_same_v<T, ListTerm>) {
          for (const auto& item : v.items) {
            if (!item.ground()) return false;
          }
          return !v.tail || v.tail->ground();
        } else {
          return true;
        }
      },
      value);
}

std::string Term::str() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Symbol>) {
          return v.name;
        } else if constexpr (std::is_same_v<T, Prefix>) {
          return v.str();
        } else if constexpr (std::is_same_v<T, Pid>) {
          return "#" + v.hex();
        } else if constexpr (std::is_same_v<T, int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return "?" + v.name;
        } else {
          std::string out = "[";
          for (size_t i = 0; i < v.items.size(); ++i) {
            if (i) out += ",";
            out += v.items[i].str();
          }
          if (v.tail) {
            out += "|";
            out += v.tail->str();
          }
          out += "]";
          return out;
        }
      },
      value);
}

namespace {

int kindRank(const Term& t) {
  return int(t.value.index());
}

}  // namespace

bool operator==(const Term& a, const Term& b) {
  if (a.value.index() != b.value.index()) return false;
  if (const auto* la = a.asList()) {
    const auto* lb = b.asList();
    if (la->items.size() != lb->items.size()) return false;
    for (size_t i = 0; i < la->items.size(); ++i) {
      if (!(la->items[i] == lb->items[i])) return false;
    }
    if (!la->tail != !lb->tail) return false;
    return !la->tail || *la->tail == *lb->tail;
  }
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        if constexpr (std::is_same_v<T, ListTerm>) {
          return true;  // handled above
        } else {
          return va == std::get<T>(b.value);
        }
      },
      a.value);
}

bool termLess(const Term& a, const Term& b) {
  if (a.value.index() != b.value.index()) {
    return kindRank(a) < kindRank(b);
  }
  if (const auto* la = a.asList()) {
    const auto* lb = b.asList();
    const size_t n = std::min(la->items.size(), lb->items.size());
    for (size_t i = 0; i < n; ++i) {
      if (termLess(la->items[i], lb->items[i])) return true;
      if (termLess(lb->items[i], la->items[i])) return false;
    }
    if (la->items.size() != lb->items.size()) {
      return la->items.size() < lb->items.size();
    }
    if (!la->tail || !lb->tail) return bool(lb->tail);
    return termLess(*la->tail, *lb->tail);
  }
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        if constexpr (std::is_same_v<T, ListTerm>) {
          return false;
        } else {
          return va < std::get<T>(b.value);
        }
      },
      a.value);
}

bool Atom::ground() const {
  for (const auto& arg : args) {
    if (!arg.ground()) return false;
  }
  return true;
}

std::string Atom::str() const {
  if (pred == kBuiltinContains && args.size() == 2) {
    return args[0].str() + " <: " + args[1].str();
  }
  std::string out = pred + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].str();
  }
  out += ")";
  return out;
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (!(a.args[i] == b.args[i])) return false;
  }
  return true;
}

bool atomLess(const Atom& a, const Atom& b) {
  if (a.pred != b.pred) return a.pred < b.pred;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (termLess(a.args[i], b.args[i])) return true;
    if (termLess(b.args[i], a.args[i])) return false;
  }
  return false;
}

std::string Literal::str() const {
  if (speaker) return speaker->str() + ": " + atom.str();
  return atom.str();
}

std::string Statement::str() const {
  if (isFact()) return head.str() + ".";
  std::string out = head.str() + " :- ";
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += body[i].str();
  }
  out += ".";
  return out;
}

bool operator==(const Statement& a, const Statement& b) {
  if (!(a.speaker == b.speaker) || !(a.head == b.head) ||
      a.body.size() != b.body.size()) {
    return false;
  }
  for (size_t i = 0; i < a.body.size(); ++i) {
    const auto& la = a.body[i];
    const auto& lb = b.body[i];
    if (la.speaker.has_value() != lb.speaker.has_value()) return false;
    if (la.speaker && !(*la.speaker == *lb.speaker)) return false;
    if (!(la.atom == lb.atom)) return false;
  }
  return true;
}

bool statementLess(const Statement& a, const Statement& b) {
  if (a.speaker != b.speaker) return a.speaker < b.speaker;
  if (a.body.size() != b.body.size()) return a.body.size() < b.body.size();
  if (atomLess(a.head, b.head)) return true;
  if (atomLess(b.head, a.head)) return false;
  for (size_t i = 0; i < a.body.size(); ++i) {
    const std::string sa = a.body[i].str();
    const std::string sb = b.body[i].str();
    if (sa != sb) return sa < sb;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Statement> statements() {
    std::vector<Statement> out;
    skipSpace();
    while (pos_ < text_.size()) {
      out.push_back(statement());
      skipSpace();
    }
    return out;
  }

  Statement statement() {
    Statement st;
    st.head = atom();
    skipSpace();
    if (consume(":-")) {
      for (;;) {
        skipSpace();
        st.body.push_back(literal());
        skipSpace();
        if (consume(",")) continue;
        break;
      }
    }
    expect(".");
    return st;
  }

  Term term() {
    skipSpace();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '?') {
      ++pos_;
      return Term::var(identifier());
    }
    if (c == '[') return listTerm();
    if (c == '#') {
      ++pos_;
      std::string hex = identifier();
      auto digest = digestFromHex(hex);
      if (!digest) fail("bad principal literal");
      return Term(Pid{*digest});
    }
    if (c == '"') {
      ++pos_;
      std::string name;
      while (pos_ < text_.size() && text_[pos_] != '"') name.push_back(text_[pos_++]);
      expect("\"");
      return Term::sym(std::move(name));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      return numberOrPrefix();
    }
    if (c == '*') {
      ++pos_;
      return Term(Prefix::any());
    }
    return Term::sym(identifier());
  }

 private:
  Term numberOrPrefix() {
    size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if ((c == '.' || c == '/') && pos_ + 1 < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;  // separator inside an address, not a statement terminator
      } else {
        break;
      }
    }
    std::string_view token = text_.substr(start, pos_ - start);
    if (token.find('.') != std::string_view::npos) {
      auto prefix = Prefix::parse(token);
      if (!prefix) fail("bad prefix literal");
      return Term(*prefix);
    }
    int64_t n = 0;
    auto [next, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (ec != std::errc{} || next != token.data() + token.size()) {
      fail("bad integer literal");
    }
    return Term(n);
  }

  Term listTerm() {
    expect("[");
    ListTerm list;
    skipSpace();
    if (consume("]")) return Term(std::move(list));
    for (;;) {
      list.items.push_back(term());
      skipSpace();
      if (consume(",")) continue;
      if (consume("|")) {
        list.tail = std::make_shared<Term>(term());
        skipSpace();
      }
      break;
    }
    expect("]");
    return Term(std::move(list));
  }

  Literal literal() {
    Literal lit;
    size_t mark = pos_;
    Term first = term();
    skipSpace();
    if (consume(":-")) {
      pos_ = mark;  // not a literal boundary; should not happen inside body
      fail("unexpected rule operator");
    }
    if (peek(':') && !peekAt(pos_ + 1, '-')) {
      ++pos_;
      lit.speaker = first;
      skipSpace();
      lit.atom = atom();
      return lit;
    }
    if (consume("<:")) {
      lit.atom.pred = kBuiltinContains;
      lit.atom.args.push_back(first);
      lit.atom.args.push_back(term());
      return lit;
    }
    // Plain atom: `first` must have been a symbol naming the predicate.
    const auto* sym = first.asSymbol();
    if (!sym) fail("expected predicate");
    lit.atom.pred = sym->name;
    if (consume("(")) {
      lit.atom.args = argList();
    }
    return lit;
  }

  Atom atom() {
    Atom a;
    skipSpace();
    Term first = term();
    skipSpace();
    if (consume("<:")) {
      a.pred = kBuiltinContains;
      a.args.push_back(first);
      a.args.push_back(term());
      return a;
    }
    const auto* sym = first.asSymbol();
    if (!sym) fail("expected predicate name");
    a.pred = sym->name;
    if (consume("(")) {
      a.args = argList();
    }
    return a;
  }

  std::vector<Term> argList() {
    std::vector<Term> args;
    skipSpace();
    if (consume(")")) return args;
    for (;;) {
      args.push_back(term());
      skipSpace();
      if (consume(",")) continue;
      break;
    }
    expect(")");
    return args;
  }

  std::string identifier() {
    size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skipSpace() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '%') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool peekAt(size_t i, char c) const { return i < text_.size() && text_[i] == c; }

  bool consume(std::string_view token) {
    skipSpace();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!consume(token)) {
      fail("expected '" + std::string(token) + "'");
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument("logic parse error at offset " +
                                std::to_string(pos_) + ": " + message);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<Statement> parseStatements(std::string_view text) {
  return Parser(text).statements();
}

Statement parseStatement(std::string_view text) {
  auto all = parseStatements(text);
  if (all.size() != 1) {
    throw std::invalid_argument("expected exactly one statement");
  }
  return all.front();
}

Term parseTerm(std::string_view text) {
  Parser p(text);
  return p.term();
}

}  // namespace logic
}  // namespace peernet
