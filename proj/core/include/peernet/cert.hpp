#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "peernet/crypto.hpp"
#include "peernet/engine.hpp"
#include "peernet/logic.hpp"

namespace peernet {

struct Principal {
  Pid pid;
  Bytes publicKey;
  Bytes secretKey;  // empty unless locally controlled

  bool hasSecret() const { return !secretKey.empty(); }

  // Deterministic keypair; pid = sha256(publicKey).
  static Principal fromSeed(std::span<const uint8_t, 32> seed,
                            const Signer& signer = ed25519Signer());
  static Principal fromSeedBytes(std::span<const uint8_t> material,
                                 const Signer& signer = ed25519Signer());
};

// Signed fragment of a logic program: attributed statements plus hash-token
// links to supporting certificates.
struct Certificate {
  Pid issuer;
  std::vector<logic::Statement> payload;  // every statement spoken by issuer
  std::vector<Token> links;
  std::string label;       // empty = unlabeled
  uint64_t issueTime = 0;  // logical clock
  uint64_t ttl = 0;        // 0 = never expires
  Bytes signature;

  Bytes encodeUnsigned() const;
  Bytes encodeSigned() const;
  static std::optional<Certificate> decode(std::span<const uint8_t> bytes);

  bool expiredAt(uint64_t now) const {
    return ttl != 0 && now > issueTime + ttl;
  }
};

struct ResolveIssue {
  enum class Kind {
    MissingCertificate,
    TokenMismatch,
    MalformedCertificate,
    BadSignature,
    UnknownIssuer,
    Expired,
    LinkCycle,
  };
  Kind kind;
  Token token;
  std::string detail;
};

struct ResolveReport {
  std::vector<ResolveIssue> issues;
  bool clean() const { return issues.empty(); }
};

// In-process certificate repository. Safe for concurrent reads with
// exclusive writes; certificates are immutable once stored.
class CertStore {
 public:
  // Registers the principal's public key under its pid.
  void registerPrincipal(const Principal& principal);
  const Bytes* publicKeyOf(const Pid& pid) const;

  Token put(const Certificate& cert);
  std::optional<Certificate> get(const Token& token) const;
  bool contains(const Token& token) const;
  std::optional<Token> lookupLabel(const Pid& issuer, const std::string& label) const;
  size_t size() const;

  // Test hook: overwrite the stored bytes of a certificate in place, leaving
  // its token unchanged. Used to exercise tamper evidence.
  bool corruptStoredBytes(const Token& token, size_t offset, uint8_t xorMask);
  std::optional<Bytes> storedBytes(const Token& token) const;

  const Signer& signer() const { return *signer_; }
  void setSigner(const Signer& signer) { signer_ = &signer; }

 private:
  friend logic::Context resolveContext(const CertStore&, std::span<const Token>,
                                       const Pid&, const std::vector<logic::Statement>&,
                                       ResolveReport*, uint64_t);

  struct Validated {
    Digest contentHash;
    bool ok = false;
    Certificate cert;
  };

  const Validated* validate(const Token& token, ResolveReport* report) const;

  mutable std::shared_mutex mutex_;
  std::map<Token, Bytes> certs_;
  std::map<std::pair<Pid, std::string>, Token> labels_;
  std::map<Pid, Bytes> keys_;
  mutable std::map<Token, Validated> validationCache_;
  const Signer* signer_ = &ed25519Signer();
};

// Issues, signs, and stores a certificate. Payload statements must be ground
// facts or rules; their speaker is forced to the issuer.
std::pair<Certificate, Token> issueCertificate(
    CertStore& store, const Principal& issuer, std::vector<logic::Statement> payload,
    std::vector<Token> links, const std::string& label = "", uint64_t ttl = 0,
    uint64_t issueTime = 0);

// Walks the link DAG from `roots`, keeps payloads of certificates that
// verify and have not expired, drops invalid certificates together with the
// subtrees only they link, and adds `local` statements spoken by `local
// speaker`. Failures are reported, not thrown.
logic::Context resolveContext(const CertStore& store, std::span<const Token> roots,
                              const Pid& localSpeaker,
                              const std::vector<logic::Statement>& local,
                              ResolveReport* report = nullptr, uint64_t now = 0);

}  // namespace peernet
