#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evote {

using Bytes = std::vector<std::uint8_t>;

// Canonical byte encoding shared by everything that is hashed or signed.
//
// Every field is written as a 4-byte big-endian length followed by its
// content. Integers (both machine and arbitrary precision) are written as
// their minimal big-endian magnitude, so zero is the empty string. Lists are
// a count (an integer field) followed by their items. Compound values are the
// concatenation of their fields in declaration order.
class Encoder {
 public:
  Encoder& put_bytes(std::span<const std::uint8_t> data);
  Encoder& put_string(std::string_view s);
  Encoder& put_uint(std::uint64_t v);
  Encoder& put_int(const mpz_class& v);
  Encoder& put_bool(bool b) { return put_uint(b ? 1 : 0); }

  const Bytes& bytes() const { return buf_; }
  Bytes take() { return std::move(buf_); }

 private:
  void put_length(std::size_t n);

  Bytes buf_;
};

// Strict reader for the canonical encoding: rejects truncated input,
// non-minimal integers and (through expect_done) trailing bytes.
class Decoder {
 public:
  explicit Decoder(std::span<const std::uint8_t> data) : data_(data) {}

  Bytes get_bytes();
  std::string get_string();
  std::uint64_t get_uint();
  mpz_class get_int();
  bool get_bool();

  bool done() const { return pos_ == data_.size(); }
  void expect_done() const;

 private:
  std::span<const std::uint8_t> field();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

Bytes magnitude_bytes(const mpz_class& v);
mpz_class from_magnitude(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

}  // namespace evote
