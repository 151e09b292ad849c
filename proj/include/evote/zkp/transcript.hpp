#pragma once

#include <string>
#include <string_view>

#include "evote/common/bytes.hpp"
#include "evote/common/random.hpp"
#include "evote/group/group.hpp"

namespace evote::zkp {

// Append-only Fiat-Shamir transcript. The challenge is a pure function of
// the domain tag and the ordered items.
class Transcript {
 public:
  explicit Transcript(std::string domain_tag) : domain_tag_(std::move(domain_tag)) {}

  Transcript& append(std::span<const std::uint8_t> item);
  Transcript& append(const Encoder& item) { return append(item.bytes()); }
  Transcript& append_group(const Group& group);
  Transcript& append_element(const GroupElement& x);
  Transcript& append_uint(std::uint64_t v);

  const std::string& domain_tag() const { return domain_tag_; }
  // enc(domain_tag) || enc(item_1) || ... || enc(item_n)
  Bytes serialize() const;
  Digest digest() const { return sha256(serialize()); }

 private:
  std::string domain_tag_;
  Encoder items_;
};

// SHA-256 of the serialized transcript, read as a big-endian integer and
// reduced modulo q.
Scalar fiat_shamir(const Group& group, const Transcript& t);

// Deterministic nonce stream bound to a secret and a statement, so proofs and
// signatures need no external randomness and never reuse a nonce across
// distinct statements.
Drbg nonce_source(std::string_view tag, const Scalar& secret, std::span<const std::uint8_t> statement);

}  // namespace evote::zkp
