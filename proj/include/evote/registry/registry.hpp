#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evote/group/group.hpp"

namespace evote {

// Schnorr signature over the election group.
struct Signature {
  GroupElement commit;  // g^k
  Scalar response;      // k + e * sk

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Deterministic nonce, so signing needs no randomness source.
Signature sign(const Group& group, const Scalar& signing_key, std::span<const std::uint8_t> message);
bool verify_sig(const Group& group, const GroupElement& verify_key, std::span<const std::uint8_t> message,
                const Signature& sig);

void encode(Encoder& enc, const Signature& sig);
Signature decode_signature(Decoder& dec, const Group& group);

struct VoterRecord {
  std::string voter_id;
  GroupElement verify_key;
  bool eligible = true;
};

// What the voter's eID card holds. The registry keeps only the public half.
struct VoterCredential {
  std::string voter_id;
  Scalar signing_key;
  GroupElement verify_key;
};

// Simulated governmental PKI. Enrollment happens in a setup phase; lookups
// afterwards are const and may run concurrently.
class Registry {
 public:
  explicit Registry(Group group) : group_(std::move(group)) {}

  // Throws DuplicateVoter if the id is already enrolled.
  VoterCredential enroll(const std::string& voter_id, RandomSource& rng);
  // Registers an externally issued key (used when loading a registry file).
  void add(VoterRecord record);

  bool is_eligible(const std::string& voter_id) const;
  void revoke(const std::string& voter_id);
  std::optional<GroupElement> verify_key(const std::string& voter_id) const;

  const Group& group() const { return group_; }
  std::size_t size() const { return records_.size(); }
  std::vector<VoterRecord> records() const;

  // One voter per line: "<id>\t<verify key hex>\t<0|1>", ids in sorted order.
  void save(std::ostream& out) const;
  static Registry load(std::istream& in, const Group& group);

 private:
  Group group_;
  std::map<std::string, VoterRecord> records_;
};

}  // namespace evote
