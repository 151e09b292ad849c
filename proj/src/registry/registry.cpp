#include "evote/registry/registry.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "evote/common/errors.hpp"
#include "evote/zkp/transcript.hpp"

namespace evote {

namespace {

constexpr const char* kSignatureTag = "evote/schnorr-signature/v1";

zkp::Transcript signature_statement(const Group& group, const GroupElement& verify_key,
                                    std::span<const std::uint8_t> message) {
  zkp::Transcript t(kSignatureTag);
  t.append_group(group).append_element(verify_key).append(message);
  return t;
}

}  // namespace

Signature sign(const Group& group, const Scalar& signing_key, std::span<const std::uint8_t> message) {
  GroupElement vk = group.g_pow(signing_key);
  zkp::Transcript t = signature_statement(group, vk, message);
  Drbg nonces = zkp::nonce_source(kSignatureTag, signing_key, t.serialize());
  Scalar k = group.random_nonzero_scalar(nonces);
  Signature sig;
  sig.commit = group.g_pow(k);
  t.append_element(sig.commit);
  Scalar e = zkp::fiat_shamir(group, t);
  sig.response = group.add(k, group.mul(e, signing_key));
  return sig;
}

bool verify_sig(const Group& group, const GroupElement& verify_key, std::span<const std::uint8_t> message,
                const Signature& sig) {
  if (!group.contains(verify_key) || !group.contains(sig.commit)) return false;
  if (sig.response.value >= group.q()) return false;
  zkp::Transcript t = signature_statement(group, verify_key, message);
  t.append_element(sig.commit);
  Scalar e = zkp::fiat_shamir(group, t);
  return group.g_pow(sig.response) == group.mul(sig.commit, group.pow(verify_key, e));
}

void encode(Encoder& enc, const Signature& sig) {
  put_element(enc, sig.commit);
  put_scalar(enc, sig.response);
}

Signature decode_signature(Decoder& dec, const Group& group) {
  Signature sig;
  sig.commit = get_element(dec, group);
  sig.response = get_scalar(dec, group);
  return sig;
}

VoterCredential Registry::enroll(const std::string& voter_id, RandomSource& rng) {
  if (records_.contains(voter_id)) throw DuplicateVoter("voter already enrolled: " + voter_id);
  Scalar sk = group_.random_nonzero_scalar(rng);
  GroupElement vk = group_.g_pow(sk);
  records_.emplace(voter_id, VoterRecord{voter_id, vk, true});
  return {voter_id, sk, vk};
}

void Registry::add(VoterRecord record) {
  if (records_.contains(record.voter_id)) throw DuplicateVoter("voter already enrolled: " + record.voter_id);
  if (!group_.contains(record.verify_key)) throw InvalidArgument("verify key is not a group element");
  std::string id = record.voter_id;
  records_.emplace(std::move(id), std::move(record));
}

bool Registry::is_eligible(const std::string& voter_id) const {
  auto it = records_.find(voter_id);
  return it != records_.end() && it->second.eligible;
}

void Registry::revoke(const std::string& voter_id) {
  auto it = records_.find(voter_id);
  if (it != records_.end()) it->second.eligible = false;
}

std::optional<GroupElement> Registry::verify_key(const std::string& voter_id) const {
  auto it = records_.find(voter_id);
  if (it == records_.end()) return std::nullopt;
  return it->second.verify_key;
}

std::vector<VoterRecord> Registry::records() const {
  std::vector<VoterRecord> out;
  out.reserve(records_.size());
  for (const auto& [id, rec] : records_) out.push_back(rec);
  return out;
}

void Registry::save(std::ostream& out) const {
  for (const auto& [id, rec] : records_) {
    out << id << '\t' << element_hex(rec.verify_key) << '\t' << (rec.eligible ? 1 : 0) << '\n';
  }
}

Registry Registry::load(std::istream& in, const Group& group) {
  Registry reg(group);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string id, key_hex, flag;
    if (!std::getline(fields, id, '\t') || !std::getline(fields, key_hex, '\t') || !std::getline(fields, flag) ||
        (flag != "0" && flag != "1") || id.empty()) {
      throw FormatError("malformed registry line " + std::to_string(line_no));
    }
    reg.add({id, element_from_hex(key_hex, group), flag == "1"});
  }
  return reg;
}

}  // namespace evote
