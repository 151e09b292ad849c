#include "evote/tally/records.hpp"

#include <charconv>

#include "evote/common/errors.hpp"

namespace evote {

namespace {

template <typename F>
auto decode_whole(std::span<const std::uint8_t> payload, F&& f) {
  Decoder dec(payload);
  auto r = f(dec);
  dec.expect_done();
  return r;
}

}  // namespace

Digest voter_id_digest(std::string_view voter_id) {
  Encoder enc;
  enc.put_string("evote/voter-id/v1").put_string(voter_id);
  return sha256(enc);
}

std::string format_threshold(double threshold) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), threshold);
  if (ec != std::errc{}) throw InvalidArgument("cannot format threshold");
  return {buf, end};
}

Bytes encode_record(const LoginRecord& r) {
  Encoder enc;
  put_digest(enc, r.voter_digest);
  enc.put_bool(r.accepted);
  return enc.take();
}

Bytes encode_record(const ReceiptRecord& r) {
  Encoder enc;
  put_digest(enc, r.ballot_digest);
  return enc.take();
}

Bytes encode_record(const TransferRecord& r) {
  Encoder enc;
  enc.put_string(r.route).put_uint(r.count);
  put_digest(enc, r.content_digest);
  return enc.take();
}

Bytes encode_record(const MixStageRecord& r) {
  Encoder enc;
  enc.put_uint(r.stage);
  encode(enc, r.input);
  encode(enc, r.output);
  encode(enc, r.proof);
  return enc.take();
}

Bytes encode_record(const PartialDecryptionRecord& r) {
  Encoder enc;
  enc.put_uint(r.item).put_uint(r.trustee).put_uint(r.slots.size());
  for (const auto& pd : r.slots) encode(enc, pd);
  return enc.take();
}

Bytes encode_record(const DecryptedBallotRecord& r) {
  Encoder enc;
  enc.put_uint(r.item).put_uint(r.slots.size());
  for (const auto& s : r.slots) enc.put_bool(s.decoded).put_uint(s.value);
  enc.put_bool(r.valid);
  return enc.take();
}

Bytes encode_record(const ResultRecord& r) {
  Encoder enc;
  enc.put_uint(r.counts.size());
  for (auto c : r.counts) enc.put_uint(c);
  enc.put_uint(r.invalid_count).put_uint(r.revoked_count).put_uint(r.kept_count);
  enc.put_string(r.coercion_threshold).put_bool(r.coercion_flagged);
  put_digest(enc, r.final_batch_digest);
  return enc.take();
}

LoginRecord decode_login(std::span<const std::uint8_t> payload) {
  return decode_whole(payload, [](Decoder& dec) {
    LoginRecord r;
    r.voter_digest = get_digest(dec);
    r.accepted = dec.get_bool();
    return r;
  });
}

ReceiptRecord decode_receipt(std::span<const std::uint8_t> payload) {
  return decode_whole(payload, [](Decoder& dec) { return ReceiptRecord{get_digest(dec)}; });
}

TransferRecord decode_transfer(std::span<const std::uint8_t> payload) {
  return decode_whole(payload, [](Decoder& dec) {
    TransferRecord r;
    r.route = dec.get_string();
    r.count = dec.get_uint();
    r.content_digest = get_digest(dec);
    return r;
  });
}

MixStageRecord decode_mix_stage(std::span<const std::uint8_t> payload, const Group& group) {
  return decode_whole(payload, [&](Decoder& dec) {
    MixStageRecord r;
    r.stage = dec.get_uint();
    r.input = decode_mix_batch(dec, group);
    r.output = decode_mix_batch(dec, group);
    r.proof = decode_shuffle_proof(dec, group);
    return r;
  });
}

PartialDecryptionRecord decode_partial_decryption(std::span<const std::uint8_t> payload, const Group& group) {
  return decode_whole(payload, [&](Decoder& dec) {
    PartialDecryptionRecord r;
    r.item = dec.get_uint();
    std::uint64_t trustee = dec.get_uint();
    if (trustee > 0xffffffffu) throw FormatError("trustee index out of range");
    r.trustee = static_cast<std::uint32_t>(trustee);
    std::uint64_t n = dec.get_uint();
    if (n > (1u << 16)) throw FormatError("implausible slot count");
    for (std::uint64_t i = 0; i < n; ++i) r.slots.push_back(decode_partial(dec, group));
    return r;
  });
}

DecryptedBallotRecord decode_decrypted_ballot(std::span<const std::uint8_t> payload) {
  return decode_whole(payload, [](Decoder& dec) {
    DecryptedBallotRecord r;
    r.item = dec.get_uint();
    std::uint64_t n = dec.get_uint();
    if (n > (1u << 16)) throw FormatError("implausible slot count");
    for (std::uint64_t i = 0; i < n; ++i) {
      SlotPlaintext s;
      s.decoded = dec.get_bool();
      s.value = dec.get_uint();
      r.slots.push_back(s);
    }
    r.valid = dec.get_bool();
    return r;
  });
}

ResultRecord decode_result(std::span<const std::uint8_t> payload) {
  return decode_whole(payload, [](Decoder& dec) {
    ResultRecord r;
    std::uint64_t n = dec.get_uint();
    if (n > (1u << 16)) throw FormatError("implausible candidate count");
    for (std::uint64_t i = 0; i < n; ++i) r.counts.push_back(dec.get_uint());
    r.invalid_count = dec.get_uint();
    r.revoked_count = dec.get_uint();
    r.kept_count = dec.get_uint();
    r.coercion_threshold = dec.get_string();
    r.coercion_flagged = dec.get_bool();
    r.final_batch_digest = get_digest(dec);
    return r;
  });
}

}  // namespace evote
