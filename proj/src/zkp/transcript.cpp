#include "evote/zkp/transcript.hpp"

namespace evote::zkp {

Transcript& Transcript::append(std::span<const std::uint8_t> item) {
  items_.put_bytes(item);
  return *this;
}

Transcript& Transcript::append_group(const Group& group) {
  Encoder enc;
  group.encode(enc);
  return append(enc);
}

Transcript& Transcript::append_element(const GroupElement& x) {
  Encoder enc;
  put_element(enc, x);
  return append(enc);
}

Transcript& Transcript::append_uint(std::uint64_t v) {
  Encoder enc;
  enc.put_uint(v);
  return append(enc);
}

Bytes Transcript::serialize() const {
  Encoder enc;
  enc.put_string(domain_tag_);
  Bytes out = enc.take();
  const Bytes& items = items_.bytes();
  out.insert(out.end(), items.begin(), items.end());
  return out;
}

Scalar fiat_shamir(const Group& group, const Transcript& t) {
  Digest d = t.digest();
  return group.scalar(from_magnitude(d));
}

Drbg nonce_source(std::string_view tag, const Scalar& secret, std::span<const std::uint8_t> statement) {
  Encoder enc;
  enc.put_int(secret.value).put_bytes(statement);
  return Drbg(enc.bytes(), tag);
}

}  // namespace evote::zkp
