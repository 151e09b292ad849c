#include "evote/ballotcoin/chain.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "evote/common/errors.hpp"

namespace evote::coin {

namespace {

void put_tx(Encoder& enc, const CoinTransaction& tx) {
  enc.put_bytes(tx_signed_message(tx));
  encode(enc, tx.signature);
}

std::uint64_t spent_by(std::span<const CoinTransaction> txs, const Address& from) {
  return static_cast<std::uint64_t>(
      std::count_if(txs.begin(), txs.end(), [&](const CoinTransaction& t) { return t.from == from; }));
}

}  // namespace

Address address_of(const GroupElement& verify_key) {
  Encoder enc;
  enc.put_string("evote/ballotcoin/address/v1");
  put_element(enc, verify_key);
  return sha256(enc);
}

WalletKeys make_wallet(const Group& group, RandomSource& rng) {
  WalletKeys w;
  w.signing_key = group.random_nonzero_scalar(rng);
  w.verify_key = group.g_pow(w.signing_key);
  w.address = address_of(w.verify_key);
  return w;
}

Bytes tx_signed_message(const CoinTransaction& tx) {
  Encoder enc;
  enc.put_string("evote/ballotcoin/tx/v1");
  put_digest(enc, tx.from);
  put_digest(enc, tx.to);
  put_element(enc, tx.sender_key);
  enc.put_uint(tx.amount).put_uint(tx.timestamp);
  return enc.take();
}

Digest tx_digest(const CoinTransaction& tx) {
  Encoder enc;
  put_tx(enc, tx);
  return sha256(enc);
}

CoinTransaction make_transaction(const Group& group, const WalletKeys& sender, const Address& to,
                                 std::uint64_t timestamp) {
  CoinTransaction tx;
  tx.from = sender.address;
  tx.to = to;
  tx.sender_key = sender.verify_key;
  tx.amount = 1;
  tx.timestamp = timestamp;
  tx.signature = sign(group, sender.signing_key, tx_signed_message(tx));
  return tx;
}

Bytes block_signed_message(const Block& block) {
  Encoder enc;
  enc.put_string("evote/ballotcoin/block/v1").put_uint(block.height);
  put_digest(enc, block.prev_digest);
  enc.put_uint(block.forger);
  put_element(enc, block.forger_key);
  enc.put_uint(block.txs.size());
  for (const auto& tx : block.txs) put_tx(enc, tx);
  return enc.take();
}

Digest compute_block_digest(const Block& block) {
  Encoder enc;
  enc.put_bytes(block_signed_message(block));
  encode(enc, block.signature);
  return sha256(enc);
}

Digest Allocation::digest() const {
  Encoder enc;
  enc.put_string("evote/ballotcoin/genesis/v1").put_uint(candidates.size());
  for (const auto& a : candidates) put_digest(enc, a);
  enc.put_uint(voters.size());
  for (const auto& a : voters) put_digest(enc, a);
  return sha256(enc);
}

Chain Chain::genesis(std::vector<Address> candidates, std::vector<Address> voters) {
  if (candidates.empty()) throw InvalidArgument("genesis needs at least one candidate");
  std::set<Address> seen;
  for (const auto* list : {&candidates, &voters}) {
    for (const auto& a : *list) {
      if (!seen.insert(a).second) throw InvalidArgument("address appears twice in the allocation");
    }
  }
  Chain c;
  auto alloc = std::make_shared<Allocation>();
  alloc->candidates = std::move(candidates);
  alloc->voters = std::move(voters);
  for (const auto& a : alloc->candidates) c.balances_[a] = 0;
  for (const auto& a : alloc->voters) c.balances_[a] = 1;

  auto block = std::make_shared<Block>();
  block->height = 0;
  block->prev_digest = alloc->digest();
  block->digest = compute_block_digest(*block);
  c.allocation_ = std::move(alloc);
  c.blocks_.push_back(std::move(block));
  return c;
}

std::uint64_t Chain::balance(const Address& a) const {
  auto it = balances_.find(a);
  return it == balances_.end() ? 0 : it->second;
}

bool Chain::is_candidate(const Address& a) const {
  const auto& c = allocation_->candidates;
  return std::find(c.begin(), c.end(), a) != c.end();
}

bool Chain::is_voter(const Address& a) const {
  const auto& v = allocation_->voters;
  return std::find(v.begin(), v.end(), a) != v.end();
}

std::vector<Wallet> Chain::wallets() const {
  std::vector<Wallet> out;
  for (const auto& a : allocation_->candidates) out.push_back({a, balance(a), true});
  for (const auto& a : allocation_->voters) out.push_back({a, balance(a), false});
  return out;
}

Chain Chain::extended(const Group& group, Block block) const {
  if (!validate_block(group, *this, block)) throw InvalidArgument("block rejected");
  Chain next = *this;
  for (const auto& tx : block.txs) {
    --next.balances_[tx.from];
    ++next.balances_[tx.to];
    next.spent_txs_[tx_digest(tx)] = block.height;
  }
  next.blocks_.push_back(std::make_shared<const Block>(std::move(block)));
  return next;
}

bool validate_tx(const Group& group, const Chain& chain, std::span<const CoinTransaction> earlier,
                 const CoinTransaction& tx) {
  if (tx.amount != 1) return false;
  if (!chain.is_candidate(tx.to) || chain.is_candidate(tx.from)) return false;
  if (address_of(tx.sender_key) != tx.from) return false;
  if (chain.balance(tx.from) < 1 + spent_by(earlier, tx.from)) return false;
  return verify_sig(group, tx.sender_key, tx_signed_message(tx), tx.signature);
}

Block forge_block(const Group& group, std::uint32_t forger, const WalletKeys& forger_keys,
                  std::span<const CoinTransaction> pool, const Chain& chain) {
  Block b;
  b.height = chain.height() + 1;
  b.prev_digest = chain.tip().digest;
  b.forger = forger;
  b.forger_key = forger_keys.verify_key;
  for (const auto& tx : pool) {
    if (validate_tx(group, chain, b.txs, tx)) b.txs.push_back(tx);
  }
  b.signature = sign(group, forger_keys.signing_key, block_signed_message(b));
  b.digest = compute_block_digest(b);
  return b;
}

bool validate_block(const Group& group, const Chain& chain, const Block& block) {
  if (block.height != chain.height() + 1 || block.prev_digest != chain.tip().digest) return false;
  if (compute_block_digest(block) != block.digest) return false;
  if (!group.contains(block.forger_key) || !chain.is_voter(address_of(block.forger_key))) return false;
  if (!verify_sig(group, block.forger_key, block_signed_message(block), block.signature)) return false;
  std::span<const CoinTransaction> txs(block.txs);
  for (std::size_t i = 0; i < txs.size(); ++i) {
    if (!validate_tx(group, chain, txs.first(i), txs[i])) return false;
  }
  return true;
}

const Chain& fork_choice(std::span<const Chain* const> chains) {
  if (chains.empty()) throw InvalidArgument("fork choice over an empty set");
  const Chain* best = chains.front();
  for (const Chain* c : chains.subspan(1)) {
    if (c->length() > best->length() || (c->length() == best->length() && c->tip().digest < best->tip().digest)) {
      best = c;
    }
  }
  return *best;
}

const Chain& fork_choice(std::span<const Chain> chains) {
  std::vector<const Chain*> ptrs;
  for (const auto& c : chains) ptrs.push_back(&c);
  return fork_choice(ptrs);
}

std::vector<std::uint64_t> tally_chain(const Chain& chain) {
  std::vector<std::uint64_t> out;
  for (const auto& a : chain.allocation().candidates) out.push_back(chain.balance(a));
  return out;
}

std::string StorageEstimate::mib_string() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", mib);
  return buf;
}

StorageEstimate estimate_storage(std::uint64_t n_tx, std::uint64_t bytes_per_tx) {
  StorageEstimate e;
  if (__builtin_mul_overflow(n_tx, bytes_per_tx, &e.bytes)) throw InvalidArgument("storage estimate overflows");
  e.mib = static_cast<double>(e.bytes) / (1024.0 * 1024.0);
  return e;
}

std::string_view to_string(ForgerMode mode) { return mode == ForgerMode::StakeWeighted ? "stake" : "uniform"; }

ForgerMode forger_mode_from_string(std::string_view name) {
  if (name == "stake") return ForgerMode::StakeWeighted;
  if (name == "uniform") return ForgerMode::Uniform;
  throw InvalidArgument("unknown forger mode '" + std::string(name) + "'");
}

std::uint32_t select_forger(std::span<const NodeState> nodes, ForgerMode mode, std::uint64_t seed,
                            std::uint64_t round) {
  std::vector<const NodeState*> eligible;
  for (const auto& n : nodes) {
    if (n.eligible) eligible.push_back(&n);
  }
  std::sort(eligible.begin(), eligible.end(), [](auto* a, auto* b) { return a->node_id < b->node_id; });

  const bool stake = mode == ForgerMode::StakeWeighted;
  std::uint64_t total = 0;
  bool pickable = false;
  for (const auto* n : eligible) {
    const std::uint64_t w = stake ? n->wallet.balance : 1;
    total += w;
    pickable = pickable || (n->online && w > 0);
  }
  if (!pickable) throw NoOnlineNodes("no online eligible node can forge in round " + std::to_string(round));

  Drbg rng = Drbg(seed, "evote/ballotcoin/forger").fork("round", round);
  for (;;) {
    const NodeState* pick = nullptr;
    if (stake) {
      std::uint64_t x = rng.below_u64(total);
      for (const auto* n : eligible) {
        if (x < n->wallet.balance) {
          pick = n;
          break;
        }
        x -= n->wallet.balance;
      }
    } else {
      pick = eligible[rng.below_u64(eligible.size())];
    }
    if (pick->online) return pick->node_id;
  }
}

}  // namespace evote::coin
