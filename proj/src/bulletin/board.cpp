#include "evote/bulletin/board.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "evote/common/errors.hpp"

namespace evote {

namespace {

constexpr std::array<std::pair<EntryKind, std::string_view>, 8> kKindNames{{
    {EntryKind::BallotCast, "BallotCast"},
    {EntryKind::Transfer, "Transfer"},
    {EntryKind::Login, "Login"},
    {EntryKind::MixStage, "MixStage"},
    {EntryKind::PartialDecryption, "PartialDecryption"},
    {EntryKind::DecryptedBallot, "DecryptedBallot"},
    {EntryKind::Result, "Result"},
    {EntryKind::Receipt, "Receipt"},
}};

}  // namespace

std::string_view to_string(EntryKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "Unknown";
}

std::optional<EntryKind> entry_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

Digest BulletinBoard::genesis_digest() {
  Encoder enc;
  enc.put_string("evote/bulletin/genesis/v1");
  return sha256(enc);
}

Digest BulletinBoard::entry_digest(const Digest& prev, std::uint64_t seq, EntryKind kind,
                                   std::span<const std::uint8_t> payload) {
  Encoder enc;
  put_digest(enc, prev);
  enc.put_uint(seq).put_string(to_string(kind)).put_bytes(payload);
  return sha256(enc);
}

const BulletinEntry& BulletinBoard::append(EntryKind kind, Bytes payload) {
  BulletinEntry e;
  e.seq = entries_.size();
  e.kind = kind;
  e.prev_digest = head();
  e.payload = std::move(payload);
  e.digest = entry_digest(e.prev_digest, e.seq, e.kind, e.payload);
  entries_.push_back(std::move(e));
  return entries_.back();
}

Digest BulletinBoard::head() const { return entries_.empty() ? genesis_digest() : entries_.back().digest; }

BulletinBoard BulletinBoard::from_entries(std::vector<BulletinEntry> entries) {
  BulletinBoard b;
  b.entries_ = std::move(entries);
  return b;
}

void BulletinBoard::save(std::ostream& out) const {
  for (const auto& e : entries_) {
    nlohmann::json j;
    j["seq"] = e.seq;
    j["kind"] = std::string(to_string(e.kind));
    j["payload"] = to_hex(e.payload);
    j["prev_digest"] = to_hex(e.prev_digest);
    j["digest"] = to_hex(e.digest);
    out << j.dump() << '\n';
  }
}

BulletinBoard BulletinBoard::load(std::istream& in) {
  std::vector<BulletinEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      BulletinEntry e;
      e.seq = j.at("seq").get<std::uint64_t>();
      auto kind = entry_kind_from_string(j.at("kind").get<std::string>());
      if (!kind) throw FormatError("unknown entry kind");
      e.kind = *kind;
      e.payload = from_hex(j.at("payload").get<std::string>());
      e.prev_digest = digest_from_hex(j.at("prev_digest").get<std::string>());
      e.digest = digest_from_hex(j.at("digest").get<std::string>());
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw FormatError("board line " + std::to_string(line_no) + ": " + ex.what());
    } catch (const FormatError& ex) {
      throw FormatError("board line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return from_entries(std::move(entries));
}

bool verify_chain(const BulletinBoard& board) {
  Digest prev = BulletinBoard::genesis_digest();
  std::uint64_t expected_seq = 0;
  for (const auto& e : board.entries()) {
    if (e.seq != expected_seq++) return false;
    if (e.prev_digest != prev) return false;
    if (BulletinBoard::entry_digest(e.prev_digest, e.seq, e.kind, e.payload) != e.digest) return false;
    prev = e.digest;
  }
  return true;
}

}  // namespace evote
