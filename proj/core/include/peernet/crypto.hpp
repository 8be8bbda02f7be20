#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace peernet {

using Bytes = std::vector<uint8_t>;

struct Digest {
  std::array<uint8_t, 32> bytes{};
  friend auto operator<=>(const Digest&, const Digest&) = default;
  std::string hex() const;
  std::string shortHex() const;  // first 8 hex chars, for rendering
  bool isZero() const;
};

Digest sha256(std::span<const uint8_t> data);

// Content hash of a certificate's stored bytes; equal tokens mean
// byte-identical certificates.
struct Token {
  Digest digest;
  friend auto operator<=>(const Token&, const Token&) = default;
  std::string hex() const { return digest.hex(); }
  std::string shortHex() const { return digest.shortHex(); }
  bool isZero() const { return digest.isZero(); }
};

// Principal identifier: hash of the principal's encoded public key.
struct Pid {
  Digest digest;
  friend auto operator<=>(const Pid&, const Pid&) = default;
  std::string hex() const { return digest.hex(); }
  std::string shortHex() const { return digest.shortHex(); }
};

std::optional<Digest> digestFromHex(std::string_view hex);

// Signature scheme interface; the default is Ed25519, tests may supply a
// stub. Implementations must be deterministic for reproducible runs.
class Signer {
 public:
  virtual ~Signer() = default;
  virtual Bytes sign(std::span<const uint8_t> message,
                     std::span<const uint8_t> secretKey) const = 0;
  virtual bool verify(std::span<const uint8_t> message,
                      std::span<const uint8_t> signature,
                      std::span<const uint8_t> publicKey) const = 0;
  virtual void keypairFromSeed(std::span<const uint8_t, 32> seed, Bytes& publicKey,
                               Bytes& secretKey) const = 0;
};

const Signer& ed25519Signer();

}  // namespace peernet
