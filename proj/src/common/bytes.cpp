#include "evote/common/bytes.hpp"

#include <limits>

#include "evote/common/errors.hpp"

namespace evote {

void Encoder::put_length(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("canonical field exceeds 4 GiB");
  }
  for (int shift = 24; shift >= 0; shift -= 8) {
    buf_.push_back(static_cast<std::uint8_t>((n >> shift) & 0xff));
  }
}

Encoder& Encoder::put_bytes(std::span<const std::uint8_t> data) {
  put_length(data.size());
  buf_.insert(buf_.end(), data.begin(), data.end());
  return *this;
}

Encoder& Encoder::put_string(std::string_view s) { return put_bytes(as_bytes(s)); }

Encoder& Encoder::put_uint(std::uint64_t v) {
  std::uint8_t tmp[8];
  std::size_t n = 0;
  for (int shift = 56; shift >= 0; shift -= 8) {
    auto byte = static_cast<std::uint8_t>((v >> shift) & 0xff);
    if (n == 0 && byte == 0) continue;
    tmp[n++] = byte;
  }
  return put_bytes({tmp, n});
}

Encoder& Encoder::put_int(const mpz_class& v) {
  if (sgn(v) < 0) throw InvalidArgument("canonical encoding of a negative integer");
  return put_bytes(magnitude_bytes(v));
}

std::span<const std::uint8_t> Decoder::field() {
  if (data_.size() - pos_ < 4) throw FormatError("truncated length prefix");
  std::size_t n = 0;
  for (int i = 0; i < 4; ++i) n = (n << 8) | data_[pos_ + i];
  pos_ += 4;
  if (data_.size() - pos_ < n) throw FormatError("truncated field");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

Bytes Decoder::get_bytes() {
  auto f = field();
  return {f.begin(), f.end()};
}

std::string Decoder::get_string() {
  auto f = field();
  return {f.begin(), f.end()};
}

std::uint64_t Decoder::get_uint() {
  auto f = field();
  if (f.size() > 8) throw FormatError("integer field wider than 64 bits");
  if (!f.empty() && f[0] == 0) throw FormatError("non-minimal integer encoding");
  std::uint64_t v = 0;
  for (auto b : f) v = (v << 8) | b;
  return v;
}

mpz_class Decoder::get_int() {
  auto f = field();
  if (!f.empty() && f[0] == 0) throw FormatError("non-minimal integer encoding");
  return from_magnitude(f);
}

bool Decoder::get_bool() {
  auto v = get_uint();
  if (v > 1) throw FormatError("boolean field out of range");
  return v == 1;
}

void Decoder::expect_done() const {
  if (!done()) throw FormatError("trailing bytes after canonical record");
}

Bytes magnitude_bytes(const mpz_class& v) {
  if (sgn(v) == 0) return {};
  std::size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  Bytes out(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

mpz_class from_magnitude(std::span<const std::uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("invalid hex digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  }
  return out;
}

}  // namespace evote
