#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "evote/common/bytes.hpp"

namespace evote {

// SHA-256 output. Used for Fiat-Shamir challenges, ballot digests, bulletin
// chaining and wallet addresses.
using Digest = std::array<std::uint8_t, 32>;

Digest sha256(std::span<const std::uint8_t> data);
inline Digest sha256(const Encoder& enc) { return sha256(enc.bytes()); }

inline std::string to_hex(const Digest& d) { return to_hex(std::span<const std::uint8_t>(d)); }
Digest digest_from_hex(std::string_view hex);
Digest digest_from_bytes(std::span<const std::uint8_t> bytes);

inline Encoder& put_digest(Encoder& enc, const Digest& d) { return enc.put_bytes(d); }
inline Digest get_digest(Decoder& dec) { return digest_from_bytes(dec.get_bytes()); }

}  // namespace evote
