#include "peernet/crypto.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace peernet {

namespace {

void ensureSodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
  });
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

std::string Digest::hex() const {
  std::string out;
  out.reserve(64);
  for (uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

std::string Digest::shortHex() const {
  return hex().substr(0, 8);
}

bool Digest::isZero() const {
  for (uint8_t b : bytes) {
    if (b != 0) return false;
  }
  return true;
}

Digest sha256(std::span<const uint8_t> data) {
  ensureSodium();
  Digest out;
  crypto_hash_sha256(out.bytes.data(), data.data(), data.size());
  return out;
}

std::optional<Digest> digestFromHex(std::string_view hex) {
  if (hex.size() != 64) return std::nullopt;
  Digest out;
  for (size_t i = 0; i < 32; ++i) {
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      return -1;
    };
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.bytes[i] = uint8_t((hi << 4) | lo);
  }
  return out;
}

namespace {

class Ed25519 final : public Signer {
 public:
  Bytes sign(std::span<const uint8_t> message,
             std::span<const uint8_t> secretKey) const override {
    ensureSodium();
    if (secretKey.size() != crypto_sign_SECRETKEYBYTES) {
      throw std::invalid_argument("bad ed25519 secret key size");
    }
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(),
                         secretKey.data());
    return sig;
  }

  bool verify(std::span<const uint8_t> message, std::span<const uint8_t> signature,
              std::span<const uint8_t> publicKey) const override {
    ensureSodium();
    if (signature.size() != crypto_sign_BYTES ||
        publicKey.size() != crypto_sign_PUBLICKEYBYTES) {
      return false;
    }
    return crypto_sign_verify_detached(signature.data(), message.data(),
                                       message.size(), publicKey.data()) == 0;
  }

  void keypairFromSeed(std::span<const uint8_t, 32> seed, Bytes& publicKey,
                       Bytes& secretKey) const override {
    ensureSodium();
    publicKey.resize(crypto_sign_PUBLICKEYBYTES);
    secretKey.resize(crypto_sign_SECRETKEYBYTES);
    crypto_sign_seed_keypair(publicKey.data(), secretKey.data(), seed.data());
  }
};

}  // namespace

const Signer& ed25519Signer() {
  static Ed25519 signer;
  return signer;
}

}  // namespace peernet
