#include <random>

#include "doctest.h"
#include "peernet/cert.hpp"

using namespace peernet;
using namespace peernet::logic;

namespace {

Principal makePrincipal(const std::string& name) {
  Bytes seedMaterial(name.begin(), name.end());
  return Principal::fromSeedBytes(seedMaterial);
}

}  // namespace

TEST_CASE("pid is a deterministic function of the key") {
  Principal a1 = makePrincipal("root");
  Principal a2 = makePrincipal("root");
  Principal b = makePrincipal("other");
  CHECK(a1.pid == a2.pid);
  CHECK(a1.publicKey == a2.publicKey);
  CHECK(!(a1.pid == b.pid));
}

TEST_CASE("issue, store, and resolve a certificate") {
  CertStore store;
  Principal root = makePrincipal("root");
  store.registerPrincipal(root);

  auto [cert, token] = issueCertificate(
      store, root, {parseStatement("allocate(cnaA, 192.168.0.0/16).")}, {});
  auto fetched = store.get(token);
  REQUIRE(fetched.has_value());
  CHECK(fetched->issuer == root.pid);
  REQUIRE(fetched->payload.size() == 1);
  CHECK(fetched->payload[0].speaker == root.pid);

  ResolveReport report;
  Context ctx = resolveContext(store, std::vector<Token>{token}, root.pid, {}, &report);
  CHECK(report.clean());
  REQUIRE(ctx.factCount() == 1);
  CHECK(ctx.facts()[0].head.str() == "allocate(cnaA,192.168.0.0/16)");
}

TEST_CASE("issuing requires the private key and ground facts") {
  CertStore store;
  Principal root = makePrincipal("root");
  store.registerPrincipal(root);
  Principal hollow = root;
  hollow.secretKey.clear();
  CHECK_THROWS(issueCertificate(store, hollow, {}, {}));
  CHECK_THROWS(issueCertificate(store, root, {parseStatement("own(?X).")}, {}));
}

TEST_CASE("linked DAG resolves depth first with attribution") {
  CertStore store;
  Principal root = makePrincipal("root");
  Principal cna = makePrincipal("cna");
  store.registerPrincipal(root);
  store.registerPrincipal(cna);

  auto [c0, t0] = issueCertificate(store, root,
                                   {parseStatement("allocate(cna, 192.168.0.0/16).")}, {});
  auto [c1, t1] = issueCertificate(
      store, cna, {parseStatement("allocate(subnetA, 192.168.10.0/24).")}, {t0});

  Context ctx = resolveContext(store, std::vector<Token>{t1}, root.pid, {});
  CHECK(ctx.factCount() == 2);
  int speakers = 0;
  for (const auto& f : ctx.facts()) {
    if (f.speaker == root.pid || f.speaker == cna.pid) ++speakers;
  }
  CHECK(speakers == 2);
}

TEST_CASE("tampering any stored byte excludes the payload") {
  CertStore store;
  Principal root = makePrincipal("root");
  store.registerPrincipal(root);
  auto [cert, token] =
      issueCertificate(store, root, {parseStatement("allocate(a, 10.0.0.0/8).")}, {});

  auto original = store.storedBytes(token);
  REQUIRE(original.has_value());
  std::mt19937 rng(1);
  for (int trial = 0; trial < 24; ++trial) {
    size_t offset = trial < 2 ? (trial == 0 ? 0 : original->size() - 1)
                              : rng() % original->size();
    REQUIRE(store.corruptStoredBytes(token, offset, 0x40));
    ResolveReport report;
    Context ctx =
        resolveContext(store, std::vector<Token>{token}, root.pid, {}, &report);
    CHECK(ctx.factCount() == 0);
    CHECK(!report.clean());
    REQUIRE(store.corruptStoredBytes(token, offset, 0x40));  // restore
  }
  Context ctx = resolveContext(store, std::vector<Token>{token}, root.pid, {});
  CHECK(ctx.factCount() == 1);
}

TEST_CASE("missing root token is reported, not fatal") {
  CertStore store;
  Principal root = makePrincipal("root");
  store.registerPrincipal(root);
  Token bogus;
  bogus.digest.bytes.fill(0x77);
  ResolveReport report;
  Context ctx = resolveContext(store, std::vector<Token>{bogus}, root.pid,
                               {parseStatement("localFact(x).")}, &report);
  CHECK(ctx.factCount() == 1);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].kind == ResolveIssue::Kind::MissingCertificate);
}

TEST_CASE("expired certificates are dropped at resolve time") {
  CertStore store;
  Principal root = makePrincipal("root");
  store.registerPrincipal(root);
  auto [cert, token] = issueCertificate(
      store, root, {parseStatement("allocate(a, 10.0.0.0/8).")}, {}, "", /*ttl=*/5,
      /*issueTime=*/10);
  Context fresh =
      resolveContext(store, std::vector<Token>{token}, root.pid, {}, nullptr, 12);
  CHECK(fresh.factCount() == 1);
  ResolveReport report;
  Context stale =
      resolveContext(store, std::vector<Token>{token}, root.pid, {}, &report, 16);
  CHECK(stale.factCount() == 0);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].kind == ResolveIssue::Kind::Expired);
}
