#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "evote/common/hash.hpp"

namespace evote {

enum class EntryKind : std::uint8_t {
  BallotCast,
  Transfer,
  Login,
  MixStage,
  PartialDecryption,
  DecryptedBallot,
  Result,
  Receipt,
};

std::string_view to_string(EntryKind kind);
std::optional<EntryKind> entry_kind_from_string(std::string_view name);

struct BulletinEntry {
  std::uint64_t seq = 0;
  EntryKind kind = EntryKind::Transfer;
  Bytes payload;  // canonical encoding of the record
  Digest prev_digest{};
  Digest digest{};

  friend bool operator==(const BulletinEntry&, const BulletinEntry&) = default;
};

// Append-only hash-chained log. It is both the public bulletin board and the
// log server: entry kinds keep the two roles apart.
//
// digest = SHA-256(enc(prev_digest) || enc(seq) || enc(kind name) || enc(payload))
// and the first entry chains to SHA-256(enc("evote/bulletin/genesis/v1")).
//
// Appends go through a single writer; const access is safe from any thread.
class BulletinBoard {
 public:
  BulletinBoard() = default;

  const BulletinEntry& append(EntryKind kind, Bytes payload);

  const std::vector<BulletinEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Digest head() const;

  // Wraps entries as-is, without checking them. Boards read back from disk
  // come through here, so nothing downstream may trust them before
  // verify_chain.
  static BulletinBoard from_entries(std::vector<BulletinEntry> entries);

  // Newline-delimited JSON, one entry per line, digests and payload in
  // lowercase hex.
  void save(std::ostream& out) const;
  static BulletinBoard load(std::istream& in);

  static Digest genesis_digest();
  static Digest entry_digest(const Digest& prev, std::uint64_t seq, EntryKind kind,
                             std::span<const std::uint8_t> payload);

 private:
  std::vector<BulletinEntry> entries_;
};

// True iff seq is dense from 0, every prev_digest links to its predecessor
// and every digest recomputes.
bool verify_chain(const BulletinBoard& board);

}  // namespace evote
