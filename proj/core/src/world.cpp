#include "frosty/world.hpp"

#include <algorithm>

namespace frosty {

void TraceSink::event(int t, int node, const std::string& kind, const std::string& detail) {
    text_ += "{\"seq\":" + std::to_string(seq_++) + ",\"t\":" + std::to_string(t) +
             ",\"p\":" + std::to_string(node) + ",\"kind\":\"" + kind + "\",\"detail\":\"" +
             detail + "\"}\n";
}

World::World(uint64_t seed, const ProtocolParams& params_, BlockUniverse::HashBackend backend)
    : params(params_), blocks(seed, params_.hash_bits, backend) {
    params.validate();
    metrics.init(params.n, {});
}

void World::setByzantine(std::set<int> ids) {
    byz_ = std::move(ids);
    metrics.init(params.n, byz_);
}

void World::recordSigned(int signer, const std::string& digest) {
    signed_[signer].insert(digest);
}

bool World::verifySigned(int signer, const std::string& digest) const {
    if (signer < 0 || signer >= params.n) return false;
    if (isByz(signer)) return true;
    auto it = signed_.find(signer);
    return it != signed_.end() && it->second.count(digest) != 0;
}

void World::violation(int t, const std::string& what) {
    violations_.push_back("t=" + std::to_string(t) + " " + what);
    trace.event(t, -1, "violation", what);
}

SBlockPtr World::dummyBlock(Epoch e, int h) {
    std::string token = "dummy|" + std::to_string(e) + "|" + std::to_string(h);
    auto it = sblocks_.find(token);
    if (it != sblocks_.end()) return it->second;
    auto b = std::make_shared<SimplexBlock>();
    b->e = e;
    b->h = h;
    b->dummy = true;
    b->token = token;
    sblocks_[token] = b;
    return b;
}

SBlockPtr World::makeSimplexBlock(Epoch e, int h, const std::string& parent_token,
                                  std::string txs, StartCertPtr cert) {
    std::string token = "sb|" + std::to_string(e) + "|" + std::to_string(h) + "|" +
                        parent_token + "|" + txs;
    auto it = sblocks_.find(token);
    if (it != sblocks_.end()) return it->second;
    auto b = std::make_shared<SimplexBlock>();
    b->e = e;
    b->h = h;
    b->dummy = false;
    b->parent = parent_token;
    b->txs = std::move(txs);
    b->cert = std::move(cert);
    b->token = token;
    b->hash = blocks.hashOf(token);
    sblocks_[token] = b;
    return b;
}

std::string World::chainToken(const std::vector<SBlockPtr>& chain) {
    std::string t = "chain";
    for (const auto& b : chain) {
        t += "#";
        t += b->token;
    }
    return t;
}

}  // namespace frosty
