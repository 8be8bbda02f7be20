#include "peernet/cert.hpp"

#include <cstring>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>

namespace peernet {

namespace {

// Length-prefixed deterministic binary encoding.
struct Writer {
  Bytes out;

  void u8(uint8_t v) { out.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 3; i >= 0; --i) out.push_back(uint8_t(v >> (8 * i)));
  }
  void u64(uint64_t v) {
    for (int i = 7; i >= 0; --i) out.push_back(uint8_t(v >> (8 * i)));
  }
  void bytes(std::span<const uint8_t> b) {
    u32(uint32_t(b.size()));
    out.insert(out.end(), b.begin(), b.end());
  }
  void str(const std::string& s) {
    bytes(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
  }
};

struct Reader {
  std::span<const uint8_t> in;
  size_t pos = 0;

  bool need(size_t n) const { return pos + n <= in.size(); }
  uint8_t u8() {
    if (!need(1)) throw std::out_of_range("truncated");
    return in[pos++];
  }
  uint32_t u32() {
    if (!need(4)) throw std::out_of_range("truncated");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | in[pos++];
    return v;
  }
  uint64_t u64() {
    if (!need(8)) throw std::out_of_range("truncated");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in[pos++];
    return v;
  }
  Bytes bytes() {
    uint32_t n = u32();
    if (!need(n)) throw std::out_of_range("truncated");
    Bytes b(in.begin() + pos, in.begin() + pos + n);
    pos += n;
    return b;
  }
  std::string str() {
    Bytes b = bytes();
    return std::string(b.begin(), b.end());
  }
};

enum TermTag : uint8_t {
  kTagSymbol = 1,
  kTagPrefix = 2,
  kTagPid = 3,
  kTagInt = 4,
  kTagList = 5,
  kTagVar = 6,
};

void encodeTerm(Writer& w, const logic::Term& t);

void encodeTermList(Writer& w, const std::vector<logic::Term>& terms) {
  w.u32(uint32_t(terms.size()));
  for (const auto& t : terms) encodeTerm(w, t);
}

void encodeTerm(Writer& w, const logic::Term& t) {
  using namespace logic;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Symbol>) {
          w.u8(kTagSymbol);
          w.str(v.name);
        } else if constexpr (std::is_same_v<T, Prefix>) {
          w.u8(kTagPrefix);
          w.u32(v.bits());
          w.u8(v.length());
        } else if constexpr (std::is_same_v<T, Pid>) {
          w.u8(kTagPid);
          w.bytes(v.digest.bytes);
        } else if constexpr (std::is_same_v<T, int64_t>) {
          w.u8(kTagInt);
          w.u64(uint64_t(v));
        } else if constexpr (std::is_same_v<T, Variable>) {
          w.u8(kTagVar);
          w.str(v.name);
        } else {
          w.u8(kTagList);
          encodeTermList(w, v.items);
          w.u8(v.tail ? 1 : 0);
          if (v.tail) encodeTerm(w, *v.tail);
        }
      },
      t.value);
}

logic::Term decodeTerm(Reader& r);

std::vector<logic::Term> decodeTermList(Reader& r) {
  uint32_t n = r.u32();
  if (n > 1u << 20) throw std::out_of_range("oversized list");
  std::vector<logic::Term> out;
  out.reserve(n);
  for (uint32_t i = 0; i < n; ++i) out.push_back(decodeTerm(r));
  return out;
}

logic::Term decodeTerm(Reader& r) {
  using namespace logic;
  switch (r.u8()) {
    case kTagSymbol:
      return Term::sym(r.str());
    case kTagPrefix: {
      uint32_t bits = r.u32();
      uint8_t len = r.u8();
      if (len > 32) throw std::out_of_range("bad prefix length");
      return Term(Prefix(bits, len));
    }
    case kTagPid: {
      Bytes b = r.bytes();
      if (b.size() != 32) throw std::out_of_range("bad pid");
      Pid p;
      std::memcpy(p.digest.bytes.data(), b.data(), 32);
      return Term(p);
    }
    case kTagInt:
      return Term(int64_t(r.u64()));
    case kTagVar:
      return Term::var(r.str());
    case kTagList: {
      ListTerm list;
      list.items = decodeTermList(r);
      if (r.u8()) list.tail = std::make_shared<Term>(decodeTerm(r));
      return Term(std::move(list));
    }
    default:
      throw std::out_of_range("bad term tag");
  }
}

void encodeAtom(Writer& w, const logic::Atom& atom) {
  w.str(atom.pred);
  encodeTermList(w, atom.args);
}

logic::Atom decodeAtom(Reader& r) {
  logic::Atom a;
  a.pred = r.str();
  a.args = decodeTermList(r);
  return a;
}

void encodeStatement(Writer& w, const logic::Statement& st) {
  encodeAtom(w, st.head);
  w.u32(uint32_t(st.body.size()));
  for (const auto& lit : st.body) {
    w.u8(lit.speaker ? 1 : 0);
    if (lit.speaker) encodeTerm(w, *lit.speaker);
    encodeAtom(w, lit.atom);
  }
}

logic::Statement decodeStatement(Reader& r) {
  logic::Statement st;
  st.head = decodeAtom(r);
  uint32_t n = r.u32();
  if (n > 1u << 16) throw std::out_of_range("oversized body");
  for (uint32_t i = 0; i < n; ++i) {
    logic::Literal lit;
    if (r.u8()) lit.speaker = decodeTerm(r);
    lit.atom = decodeAtom(r);
    st.body.push_back(std::move(lit));
  }
  return st;
}

constexpr uint8_t kCertVersion = 1;

}  // namespace

Principal Principal::fromSeed(std::span<const uint8_t, 32> seed, const Signer& signer) {
  Principal p;
  signer.keypairFromSeed(seed, p.publicKey, p.secretKey);
  p.pid = Pid{sha256(p.publicKey)};
  return p;
}

Principal Principal::fromSeedBytes(std::span<const uint8_t> material,
                                   const Signer& signer) {
  Digest d = sha256(material);
  return fromSeed(std::span<const uint8_t, 32>(d.bytes), signer);
}

Bytes Certificate::encodeUnsigned() const {
  Writer w;
  w.u8(kCertVersion);
  w.bytes(issuer.digest.bytes);
  w.u32(uint32_t(payload.size()));
  for (const auto& st : payload) encodeStatement(w, st);
  w.u32(uint32_t(links.size()));
  for (const auto& link : links) w.bytes(link.digest.bytes);
  w.str(label);
  w.u64(issueTime);
  w.u64(ttl);
  return std::move(w.out);
}

Bytes Certificate::encodeSigned() const {
  Bytes out = encodeUnsigned();
  Writer w;
  w.out = std::move(out);
  w.bytes(signature);
  return std::move(w.out);
}

std::optional<Certificate> Certificate::decode(std::span<const uint8_t> bytes) {
  try {
    Reader r{bytes};
    Certificate c;
    if (r.u8() != kCertVersion) return std::nullopt;
    Bytes issuerBytes = r.bytes();
    if (issuerBytes.size() != 32) return std::nullopt;
    std::memcpy(c.issuer.digest.bytes.data(), issuerBytes.data(), 32);
    uint32_t nStatements = r.u32();
    if (nStatements > 1u << 16) return std::nullopt;
    for (uint32_t i = 0; i < nStatements; ++i) {
      logic::Statement st = decodeStatement(r);
      st.speaker = c.issuer;
      c.payload.push_back(std::move(st));
    }
    uint32_t nLinks = r.u32();
    if (nLinks > 1u << 16) return std::nullopt;
    for (uint32_t i = 0; i < nLinks; ++i) {
      Bytes t = r.bytes();
      if (t.size() != 32) return std::nullopt;
      Token tok;
      std::memcpy(tok.digest.bytes.data(), t.data(), 32);
      c.links.push_back(tok);
    }
    c.label = r.str();
    c.issueTime = r.u64();
    c.ttl = r.u64();
    c.signature = r.bytes();
    if (r.pos != bytes.size()) return std::nullopt;
    return c;
  } catch (const std::out_of_range&) {
    return std::nullopt;
  }
}

void CertStore::registerPrincipal(const Principal& principal) {
  std::unique_lock lock(mutex_);
  keys_[principal.pid] = principal.publicKey;
}

const Bytes* CertStore::publicKeyOf(const Pid& pid) const {
  std::shared_lock lock(mutex_);
  auto it = keys_.find(pid);
  return it == keys_.end() ? nullptr : &it->second;
}

Token CertStore::put(const Certificate& cert) {
  Bytes bytes = cert.encodeSigned();
  Token token{sha256(bytes)};
  std::unique_lock lock(mutex_);
  certs_[token] = std::move(bytes);
  if (!cert.label.empty()) {
    labels_[{cert.issuer, cert.label}] = token;
  }
  return token;
}

std::optional<Certificate> CertStore::get(const Token& token) const {
  std::shared_lock lock(mutex_);
  auto it = certs_.find(token);
  if (it == certs_.end()) return std::nullopt;
  return Certificate::decode(it->second);
}

bool CertStore::contains(const Token& token) const {
  std::shared_lock lock(mutex_);
  return certs_.count(token) != 0;
}

std::optional<Token> CertStore::lookupLabel(const Pid& issuer,
                                            const std::string& label) const {
  std::shared_lock lock(mutex_);
  auto it = labels_.find({issuer, label});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

size_t CertStore::size() const {
  std::shared_lock lock(mutex_);
  return certs_.size();
}

bool CertStore::corruptStoredBytes(const Token& token, size_t offset, uint8_t xorMask) {
  std::unique_lock lock(mutex_);
  auto it = certs_.find(token);
  if (it == certs_.end() || offset >= it->second.size()) return false;
  it->second[offset] ^= xorMask;
  return true;
}

std::optional<Bytes> CertStore::storedBytes(const Token& token) const {
  std::shared_lock lock(mutex_);
  auto it = certs_.find(token);
  if (it == certs_.end()) return std::nullopt;
  return it->second;
}

const CertStore::Validated* CertStore::validate(const Token& token,
                                                ResolveReport* report) const {
  auto reportIssue = [&](ResolveIssue::Kind kind, const std::string& detail) {
    if (report) report->issues.push_back({kind, token, detail});
  };

  std::unique_lock lock(mutex_);
  auto it = certs_.find(token);
  if (it == certs_.end()) {
    lock.unlock();
    reportIssue(ResolveIssue::Kind::MissingCertificate, "token not in store");
    return nullptr;
  }
  const Bytes& bytes = it->second;
  const Digest contentHash = sha256(bytes);
  auto cached = validationCache_.find(token);
  if (cached != validationCache_.end() && cached->second.contentHash == contentHash) {
    const Validated* v = &cached->second;
    if (!v->ok) {
      lock.unlock();
      reportIssue(ResolveIssue::Kind::BadSignature, "certificate failed validation");
      return nullptr;
    }
    return v;
  }

  Validated v;
  v.contentHash = contentHash;
  v.ok = false;
  if (contentHash != token.digest) {
    validationCache_[token] = std::move(v);
    lock.unlock();
    reportIssue(ResolveIssue::Kind::TokenMismatch, "stored bytes do not match token");
    return nullptr;
  }
  auto decoded = Certificate::decode(bytes);
  if (!decoded) {
    validationCache_[token] = std::move(v);
    lock.unlock();
    reportIssue(ResolveIssue::Kind::MalformedCertificate, "undecodable certificate");
    return nullptr;
  }
  auto key = keys_.find(decoded->issuer);
  if (key == keys_.end()) {
    validationCache_[token] = std::move(v);
    lock.unlock();
    reportIssue(ResolveIssue::Kind::UnknownIssuer, "issuer key not registered");
    return nullptr;
  }
  const Bytes unsignedBytes = decoded->encodeUnsigned();
  if (!signer_->verify(unsignedBytes, decoded->signature, key->second)) {
    validationCache_[token] = std::move(v);
    lock.unlock();
    reportIssue(ResolveIssue::Kind::BadSignature, "signature verification failed");
    return nullptr;
  }
  v.ok = true;
  v.cert = std::move(*decoded);
  auto [slot, _] = validationCache_.insert_or_assign(token, std::move(v));
  return &slot->second;
}

std::pair<Certificate, Token> issueCertificate(CertStore& store,
                                               const Principal& issuer,
                                               std::vector<logic::Statement> payload,
                                               std::vector<Token> links,
                                               const std::string& label, uint64_t ttl,
                                               uint64_t issueTime) {
  if (!issuer.hasSecret()) {
    throw std::invalid_argument("issuer does not hold its private key");
  }
  for (auto& st : payload) {
    st.speaker = issuer.pid;
    if (st.isFact() && !st.head.ground()) {
      throw std::invalid_argument("certificate fact contains free variables: " +
                                  st.head.str());
    }
  }
  Certificate cert;
  cert.issuer = issuer.pid;
  cert.payload = std::move(payload);
  cert.links = std::move(links);
  cert.label = label;
  cert.issueTime = issueTime;
  cert.ttl = ttl;
  cert.signature = store.signer().sign(cert.encodeUnsigned(), issuer.secretKey);
  Token token = store.put(cert);
  return {std::move(cert), token};
}

logic::Context resolveContext(const CertStore& store, std::span<const Token> roots,
                              const Pid& localSpeaker,
                              const std::vector<logic::Statement>& local,
                              ResolveReport* report, uint64_t now) {
  logic::Context ctx;
  std::set<Token> visited;
  std::set<Token> onPath;

  // Depth-first walk so ancestor tracking can flag link cycles (impossible
  // with honest hash links, but the store bytes are not trusted).
  std::function<void(const Token&)> visit = [&](const Token& token) {
    if (onPath.count(token)) {
      if (report) {
        report->issues.push_back(
            {ResolveIssue::Kind::LinkCycle, token, "link cycle rejected"});
      }
      return;
    }
    if (!visited.insert(token).second) return;
    const auto* validated = store.validate(token, report);
    if (!validated) return;
    const Certificate& cert = validated->cert;
    if (cert.expiredAt(now)) {
      if (report) {
        report->issues.push_back(
            {ResolveIssue::Kind::Expired, token, "certificate expired"});
      }
      return;
    }
    for (const auto& st : cert.payload) ctx.add(st);
    onPath.insert(token);
    for (const auto& link : cert.links) visit(link);
    onPath.erase(token);
  };

  for (const auto& root : roots) visit(root);
  for (auto st : local) {
    st.speaker = localSpeaker;
    ctx.add(std::move(st));
  }
  return ctx;
}

}  // namespace peernet
