#include <algorithm>
#include <random>

#include "doctest.h"
#include "peernet/engine.hpp"
#include "peernet/logic.hpp"

using namespace peernet;
using namespace peernet::logic;

namespace {

Pid pidOf(char c) {
  Pid p;
  p.digest.bytes.fill(uint8_t(c));
  return p;
}

Statement fact(const Pid& speaker, const std::string& text) {
  Statement st = parseStatement(text);
  st.speaker = speaker;
  return st;
}

}  // namespace

TEST_CASE("parser round trips the listing syntax") {
  Statement rule = parseStatement(
      "ownPrefix(?Holder,?Prefix) :- ?UpStream: allocate(?Holder,?Prefix), "
      "ownPrefix(?UpStream,?SupPrefix), ?Prefix <: ?SupPrefix.");
  CHECK(rule.body.size() == 3);
  CHECK(rule.body[0].speaker.has_value());
  CHECK(rule.body[2].atom.pred == kBuiltinContains);
  CHECK(rule.str() ==
        "ownPrefix(?Holder,?Prefix) :- ?UpStream: allocate(?Holder,?Prefix), "
        "ownPrefix(?UpStream,?SupPrefix), ?Prefix <: ?SupPrefix.");

  Term list = parseTerm("[?Head|?Tail]");
  CHECK(list.str() == "[?Head|?Tail]");
  CHECK(parseTerm("[n3,n1,a]").str() == "[n3,n1,a]");
  CHECK(parseTerm("192.168.10.0/24").asPrefix() != nullptr);
}

TEST_CASE("eq destructures a ground list") {
  Context ctx;
  Literal goal;
  goal.atom = parseStatement("eq([?H|?T],[n3,n1,a]).").head;
  auto results = query(ctx, goal, {});
  REQUIRE(results.size() == 1);
  CHECK(results[0].at("H").str() == "n3");
  CHECK(results[0].at("T").str() == "[n1,a]");
}

TEST_CASE("containment builtin is inclusive") {
  Context ctx;
  auto holds = [&](const std::string& text) {
    Literal goal;
    goal.atom = parseStatement(text).head;
    return queryHolds(ctx, goal, {});
  };
  CHECK(holds("192.168.10.0/24 <: 192.168.0.0/16."));
  CHECK(!holds("10.0.0.0/8 <: 192.168.0.0/16."));
  CHECK(holds("10.0.0.0/8 <: 10.0.0.0/8."));
}

TEST_CASE("builtin on non-ground argument reports an error") {
  Context ctx;
  Literal goal;
  goal.atom = parseStatement("?X <: 10.0.0.0/8.").head;
  CHECK_THROWS_AS(query(ctx, goal, {}), BuiltinError);
}

TEST_CASE("speaker-qualified literals match attribution") {
  Context ctx;
  ctx.add(fact(pidOf('a'), "allocate(holderX, 192.168.0.0/16)."));
  ctx.add(fact(pidOf('b'), "allocate(holderY, 10.0.0.0/8)."));

  Literal goal = parseStatement("probe(?W,?H) :- ?W: allocate(?H,?P).").body[0];
  auto results = query(ctx, goal, {});
  REQUIRE(results.size() == 2);

  // Pin the speaker to one principal.
  Literal pinned;
  pinned.speaker = Term(pidOf('a'));
  pinned.atom = parseStatement("allocate(?H,?P).").head;
  results = query(ctx, pinned, {});
  REQUIRE(results.size() == 1);
  CHECK(results[0].at("H").str() == "holderX");
}

TEST_CASE("query results are independent of insertion order") {
  auto run = [&](bool reversed) {
    std::vector<Statement> facts = {
        fact(pidOf('a'), "edge(n1,n2)."),
        fact(pidOf('a'), "edge(n2,n3)."),
        fact(pidOf('b'), "edge(n1,n3)."),
    };
    if (reversed) std::reverse(facts.begin(), facts.end());
    Context ctx;
    for (auto& f : facts) ctx.add(f);
    Literal goal;
    goal.atom = parseStatement("edge(?A,?B).").head;
    std::string out;
    for (const auto& b : query(ctx, goal, {})) {
      out += b.at("A").str() + "/" + b.at("B").str() + ";";
    }
    return out;
  };
  CHECK(run(false) == run(true));
}

TEST_CASE("recursive rules over lists terminate and derive paths") {
  Context ctx;
  ctx.add(fact(pidOf('x'), "hop(a)."));
  ctx.add(fact(pidOf('x'), "hop(b)."));
  auto rules = parseStatements(
      "allHops(?Path) :- eq([?H|?T],?Path), eq(?T,[]), hop(?H)."
      "allHops(?Path) :- eq([?H|?T],?Path), hop(?H), allHops(?T).");
  Literal good;
  good.atom = parseStatement("allHops([a,b,a]).").head;
  CHECK(queryHolds(ctx, good, rules));
  Literal bad;
  bad.atom = parseStatement("allHops([a,c]).").head;
  CHECK(!queryHolds(ctx, bad, rules));
}

TEST_CASE("depth limit stops runaway recursion") {
  Context ctx;
  ctx.add(fact(pidOf('x'), "seed(a)."));
  auto rules = parseStatements("loop(?X) :- loop(?X). loop(?X) :- seed(?X).");
  Literal goal;
  goal.atom = parseStatement("loop(a).").head;
  QueryOptions opts;
  opts.depthLimit = 32;
  CHECK_THROWS_AS(query(ctx, goal, rules, opts), DepthLimitExceeded);
}
