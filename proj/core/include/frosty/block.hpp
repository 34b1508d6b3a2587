#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "frosty/chainstring.hpp"

namespace frosty {

struct Block;
using BlockPtr = std::shared_ptr<const Block>;

// An application block. Immutable once created; blocks are shared between
// simulated processes, per-process visibility lives in BlockStore.
struct Block {
    std::string id;        // globally unique token
    BlockPtr parent;       // null for genesis
    std::string payload;   // opaque transactions
    ChainString hash;      // L bits, assigned by the hash backend
    ChainString cum;       // H(b0) * ... * H(this)
    uint64_t depth = 0;    // genesis = 0
};

// Hash backend + block identity registry for one run. All processes in a run
// share one universe so that H is a global function. The default backend is
// a perfect-hash oracle: each distinct key gets a unique L-bit value drawn
// from a seeded generator, re-drawn on the (rare) collision so uniqueness
// holds by construction. The alternative backend truncates a real mixing
// hash to L bits and aborts the run if two keys collide.
class BlockUniverse {
public:
    enum class HashBackend { PerfectOracle, TruncatedReal };

    BlockUniverse(uint64_t seed, unsigned hash_bits,
                  HashBackend backend = HashBackend::PerfectOracle);

    unsigned hashBits() const { return hash_bits_; }

    // Unique L-bit value for an arbitrary key (block ids, simplex tokens).
    ChainString hashOf(const std::string& key);

    // Makes `key` hash to the value already assigned to `existing`. Used when
    // one logical block is known under two keys.
    void aliasHash(const std::string& key, const std::string& existing);

    BlockPtr genesis() const { return genesis_; }

    // Returns the block registered under `id`, creating it on first call.
    BlockPtr makeBlock(const std::string& id, const BlockPtr& parent, std::string payload);

    // Fresh child with a deterministic id derived from (minter, counter).
    BlockPtr mintChild(const BlockPtr& parent, std::string payload, int minter);

    BlockPtr find(const std::string& id) const;

private:
    ChainString drawBits(const std::string& key);

    uint64_t seed_;
    unsigned hash_bits_;
    HashBackend backend_;
    BlockPtr genesis_;
    std::unordered_map<std::string, ChainString> hashes_;
    std::set<std::string> used_bits_;
    std::unordered_map<std::string, BlockPtr> blocks_;
    std::unordered_map<int, uint64_t> mint_counters_;
};

// Per-process view of received blocks, with arrival order and a child index.
class BlockStore {
public:
    explicit BlockStore(BlockPtr genesis);

    bool contains(const std::string& id) const { return entries_.count(id) != 0; }
    BlockPtr get(const std::string& id) const;
    size_t arrivalIndex(const std::string& id) const;
    size_t size() const { return entries_.size(); }
    BlockPtr genesis() const { return genesis_; }

    // Inserts a block (parents must already be present); no-op if known.
    void insert(const BlockPtr& b);
    // Inserts b and any unknown ancestors, oldest first.
    void insertChain(const BlockPtr& tip);

    const std::vector<BlockPtr>& childrenOf(const std::string& id) const;

private:
    BlockPtr genesis_;
    std::unordered_map<std::string, BlockPtr> entries_;
    std::unordered_map<std::string, size_t> arrival_;
    std::unordered_map<std::string, std::vector<BlockPtr>> children_;
    std::vector<BlockPtr> empty_;
    size_t next_arrival_ = 0;
};

// H_B: concatenated hashes if the sequence is a parent-linked chain rooted at
// genesis, else the empty string.
ChainString hashConcat(const std::vector<BlockPtr>& chain, const BlockPtr& genesis);

struct Resolution {
    BlockPtr last;       // deepest store-resident block covered by sigma
    size_t reduct_len;   // |H(b0) * ... * H(last)| == last->cum.size()
    std::vector<BlockPtr> chain() const;  // genesis .. last
    ChainString reduct() const { return last->cum; }
};

// chain/reduct/last for sigma against a store, with the genesis fallback.
Resolution resolvePrefix(const ChainString& sigma, const BlockStore& store);

// E: children b of last(pref) with pref an initial segment of reduct(pref)*H(b),
// in arrival order.
std::vector<BlockPtr> childrenExtending(const ChainString& pref, const BlockStore& store);

}  // namespace frosty
