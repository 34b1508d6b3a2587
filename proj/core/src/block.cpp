#include "frosty/block.hpp"

#include <algorithm>
#include <stdexcept>

namespace frosty {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t mixKey(uint64_t seed, const std::string& key, uint64_t salt) {
    uint64_t h = splitmix64(seed ^ (salt * 0x9e3779b97f4a7c15ULL));
    for (char c : key) h = splitmix64(h ^ static_cast<unsigned char>(c));
    return h;
}

std::string bitsFrom(uint64_t seed, const std::string& key, uint64_t salt, unsigned nbits) {
    std::string bits;
    bits.reserve(nbits);
    uint64_t word = 0;
    unsigned have = 0;
    uint64_t ctr = 0;
    while (bits.size() < nbits) {
        if (have == 0) {
            word = mixKey(seed, key, salt ^ (ctr++ << 32));
            have = 64;
        }
        bits.push_back((word & 1) ? '1' : '0');
        word >>= 1;
        --have;
    }
    return bits;
}

}  // namespace

BlockUniverse::BlockUniverse(uint64_t seed, unsigned hash_bits, HashBackend backend)
    : seed_(seed), hash_bits_(hash_bits), backend_(backend) {
    auto g = std::make_shared<Block>();
    g->id = "b0";
    g->payload = "genesis";
    g->hash = hashOf(g->id);
    g->cum = g->hash;
    g->depth = 0;
    genesis_ = g;
    blocks_[g->id] = g;
}

ChainString BlockUniverse::drawBits(const std::string& key) {
    for (uint64_t salt = 0;; ++salt) {
        std::string bits = bitsFrom(seed_, key, salt, hash_bits_);
        if (used_bits_.insert(bits).second) return ChainString::fromBits(std::move(bits));
        if (backend_ == HashBackend::TruncatedReal) {
            throw std::runtime_error("hash collision at L=" + std::to_string(hash_bits_) +
                                     " bits for key " + key + "; aborting run");
        }
    }
}

ChainString BlockUniverse::hashOf(const std::string& key) {
    auto it = hashes_.find(key);
    if (it != hashes_.end()) return it->second;
    ChainString h = drawBits(key);
    hashes_.emplace(key, h);
    return h;
}

void BlockUniverse::aliasHash(const std::string& key, const std::string& existing) {
    auto it = hashes_.find(key);
    if (it != hashes_.end()) return;  // first assignment wins, deterministic
    hashes_.emplace(key, hashOf(existing));
}

BlockPtr BlockUniverse::makeBlock(const std::string& id, const BlockPtr& parent,
                                  std::string payload) {
    auto it = blocks_.find(id);
    if (it != blocks_.end()) return it->second;
    if (!parent) throw std::invalid_argument("makeBlock: parent required");
    auto b = std::make_shared<Block>();
    b->id = id;
    b->parent = parent;
    b->payload = std::move(payload);
    b->hash = hashOf(id);
    b->cum = parent->cum.concat(b->hash);
    b->depth = parent->depth + 1;
    blocks_[id] = b;
    return b;
}

BlockPtr BlockUniverse::mintChild(const BlockPtr& parent, std::string payload, int minter) {
    uint64_t c = mint_counters_[minter]++;
    std::string id = "m" + std::to_string(minter) + ":" + std::to_string(c);
    return makeBlock(id, parent, std::move(payload));
}

BlockPtr BlockUniverse::find(const std::string& id) const {
    auto it = blocks_.find(id);
    return it == blocks_.end() ? nullptr : it->second;
}

BlockStore::BlockStore(BlockPtr genesis) : genesis_(std::move(genesis)) {
    entries_[genesis_->id] = genesis_;
    arrival_[genesis_->id] = next_arrival_++;
}

BlockPtr BlockStore::get(const std::string& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : it->second;
}

size_t BlockStore::arrivalIndex(const std::string& id) const {
    return arrival_.at(id);
}

void BlockStore::insert(const BlockPtr& b) {
    if (entries_.count(b->id)) return;
    if (b->parent && !entries_.count(b->parent->id)) {
        throw std::logic_error("BlockStore::insert: parent not present for " + b->id);
    }
    entries_[b->id] = b;
    arrival_[b->id] = next_arrival_++;
    if (b->parent) children_[b->parent->id].push_back(b);
}

void BlockStore::insertChain(const BlockPtr& tip) {
    std::vector<BlockPtr> missing;
    for (BlockPtr cur = tip; cur && !entries_.count(cur->id); cur = cur->parent) {
        missing.push_back(cur);
    }
    for (auto it = missing.rbegin(); it != missing.rend(); ++it) insert(*it);
}

const std::vector<BlockPtr>& BlockStore::childrenOf(const std::string& id) const {
    auto it = children_.find(id);
    return it == children_.end() ? empty_ : it->second;
}

ChainString hashConcat(const std::vector<BlockPtr>& chain, const BlockPtr& genesis) {
    if (chain.empty()) return ChainString();
    if (chain.front()->id != genesis->id) return ChainString();
    for (size_t i = 1; i < chain.size(); ++i) {
        if (!chain[i]->parent || chain[i]->parent->id != chain[i - 1]->id) return ChainString();
    }
    return chain.back()->cum;
}

std::vector<BlockPtr> Resolution::chain() const {
    std::vector<BlockPtr> out;
    for (BlockPtr cur = last; cur; cur = cur->parent) out.push_back(cur);
    std::reverse(out.begin(), out.end());
    return out;
}

Resolution resolvePrefix(const ChainString& sigma, const BlockStore& store) {
    const size_t L = store.genesis()->hash.size();
    BlockPtr cur = store.genesis();
    if (!cur->hash.isPrefixOf(sigma)) {
        return Resolution{cur, cur->cum.size()};  // fallback: chain(sigma) := b0
    }
    size_t pos = L;
    for (;;) {
        if (sigma.size() < pos + L) break;
        BlockPtr next;
        for (const auto& c : store.childrenOf(cur->id)) {
            // compare only the next full hash segment
            if (std::memcmp(sigma.data() + pos, c->hash.data(), L) == 0) {
                next = c;
                break;
            }
        }
        if (!next) break;
        cur = next;
        pos += L;
    }
    return Resolution{cur, pos};
}

std::vector<BlockPtr> childrenExtending(const ChainString& pref, const BlockStore& store) {
    Resolution r = resolvePrefix(pref, store);
    const ChainString& reduct = r.last->cum;
    std::vector<BlockPtr> out;
    // pref must agree with reduct on their overlap, else no reduct*H(b) can
    // extend it (covers the genesis fallback).
    size_t head = std::min(pref.size(), r.reduct_len);
    if (head > 0 && std::memcmp(pref.data(), reduct.data(), head) != 0) return out;
    size_t tail = pref.size() > r.reduct_len ? pref.size() - r.reduct_len : 0;
    for (const auto& c : store.childrenOf(r.last->id)) {
        if (tail > c->hash.size()) continue;
        if (tail == 0 ||
            std::memcmp(pref.data() + r.reduct_len, c->hash.data(), tail) == 0) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace frosty
