#include "evote/common/hash.hpp"

#include <openssl/evp.h>

#include <algorithm>

#include "evote/common/errors.hpp"

namespace evote {

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw Error("SHA-256 computation failed");
  }
  return out;
}

Digest digest_from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != Digest{}.size()) throw FormatError("digest must be 32 bytes");
  Digest d{};
  std::copy(bytes.begin(), bytes.end(), d.begin());
  return d;
}

Digest digest_from_hex(std::string_view hex) { return digest_from_bytes(from_hex(hex)); }

}  // namespace evote
