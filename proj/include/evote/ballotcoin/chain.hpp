#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "evote/registry/registry.hpp"

namespace evote::coin {

// Wallet address: SHA-256 of the canonical encoding of the verify key.
using Address = Digest;

Address address_of(const GroupElement& verify_key);

struct WalletKeys {
  Scalar signing_key;
  GroupElement verify_key;
  Address address{};
};

WalletKeys make_wallet(const Group& group, RandomSource& rng);

struct Wallet {
  Address address{};
  std::uint64_t balance = 0;
  bool is_candidate = false;
};

// Transactions are plaintext on purpose: the recipient is public.
struct CoinTransaction {
  Address from{};
  Address to{};
  GroupElement sender_key;
  std::uint64_t amount = 1;
  std::uint64_t timestamp = 0;  // round
  Signature signature;

  friend bool operator==(const CoinTransaction&, const CoinTransaction&) = default;
};

CoinTransaction make_transaction(const Group& group, const WalletKeys& sender, const Address& to,
                                 std::uint64_t timestamp);
Bytes tx_signed_message(const CoinTransaction& tx);
Digest tx_digest(const CoinTransaction& tx);

struct Block {
  std::uint64_t height = 0;
  Digest prev_digest{};  // genesis: digest of the allocation
  std::uint32_t forger = 0;
  GroupElement forger_key;
  std::vector<CoinTransaction> txs;
  Signature signature;
  Digest digest{};  // over every field above, signature included
};

Bytes block_signed_message(const Block& block);
Digest compute_block_digest(const Block& block);

// Initial coin distribution fixed by the genesis block.
struct Allocation {
  std::vector<Address> candidates;  // tally order
  std::vector<Address> voters;      // each holds 1 coin at genesis

  Digest digest() const;
};

// Immutable snapshot of a chain from genesis. Extending returns a new value
// sharing the earlier blocks, so past states stay valid for analysis.
class Chain {
 public:
  // Genesis block plus initial balances. Throws InvalidArgument with no
  // candidates or with repeated addresses.
  static Chain genesis(std::vector<Address> candidates, std::vector<Address> voters);

  std::size_t length() const { return blocks_.size(); }  // genesis counts
  std::uint64_t height() const { return blocks_.back()->height; }
  const Block& tip() const { return *blocks_.back(); }
  const Block& block(std::size_t height) const { return *blocks_.at(height); }
  const Allocation& allocation() const { return *allocation_; }

  std::uint64_t balance(const Address& a) const;
  bool is_candidate(const Address& a) const;
  bool is_voter(const Address& a) const;
  std::vector<Wallet> wallets() const;
  bool contains_tx(const Digest& tx) const { return spent_txs_.contains(tx); }

  // Chain with `block` appended. Throws InvalidArgument if validate_block
  // rejects it.
  Chain extended(const Group& group, Block block) const;

 private:
  Chain() = default;

  std::shared_ptr<const Allocation> allocation_;
  std::vector<std::shared_ptr<const Block>> blocks_;
  std::map<Address, std::uint64_t> balances_;
  std::map<Digest, std::uint64_t> spent_txs_;  // tx digest -> height
};

// Signature, amount 1, sender key matches `from`, recipient a candidate, and
// the sender still holds a coin after the chain and the earlier pool txs.
bool validate_tx(const Group& group, const Chain& chain, std::span<const CoinTransaction> earlier,
                 const CoinTransaction& tx);

// All pool transactions valid against the chain, in pool order; a later
// double spend is dropped. Signed by the forger.
Block forge_block(const Group& group, std::uint32_t forger, const WalletKeys& forger_keys,
                  std::span<const CoinTransaction> pool, const Chain& chain);

// Height, prev link, digest, forger signature, forger is an enrolled voter,
// every tx valid and jointly free of double spends.
bool validate_block(const Group& group, const Chain& chain, const Block& block);

// Longest chain; equal lengths go to the smaller tip digest.
// Throws InvalidArgument on an empty set.
const Chain& fork_choice(std::span<const Chain> chains);
const Chain& fork_choice(std::span<const Chain* const> chains);

// Candidate balances in allocation order. Works on any prefix.
std::vector<std::uint64_t> tally_chain(const Chain& chain);

struct StorageEstimate {
  std::uint64_t bytes = 0;
  double mib = 0.0;  // bytes / 1024^2

  std::string mib_string() const;  // one decimal
};

StorageEstimate estimate_storage(std::uint64_t n_tx, std::uint64_t bytes_per_tx);

struct NodeState {
  std::uint32_t node_id = 0;
  Wallet wallet;
  bool online = true;
  bool eligible = true;
  bool malicious = false;
};

enum class ForgerMode { StakeWeighted, Uniform };

std::string_view to_string(ForgerMode mode);
ForgerMode forger_mode_from_string(std::string_view name);  // "stake" | "uniform"

// Stake mode draws a point on the cumulative-balance line of the eligible
// nodes sorted by id; uniform mode draws an eligible node by id, ignoring
// balances. Offline picks are redrawn. Pure function of (nodes, mode, seed,
// round). Throws NoOnlineNodes when nothing can be picked.
std::uint32_t select_forger(std::span<const NodeState> nodes, ForgerMode mode, std::uint64_t seed,
                            std::uint64_t round);

}  // namespace evote::coin
