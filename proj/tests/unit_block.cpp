#include <doctest.h>

#include <random>
#include <vector>

#include "frosty/block.hpp"

using namespace frosty;

namespace {

// Reference resolver: scan every stored block for the deepest one whose
// cumulative hash string is an initial segment of sigma.
BlockPtr bruteResolve(const ChainString& sigma, const BlockStore& store,
                      const std::vector<BlockPtr>& all) {
    BlockPtr best = store.genesis();
    for (const auto& b : all) {
        if (!store.contains(b->id)) continue;
        if (b->cum.isPrefixOf(sigma) && b->depth > best->depth) best = b;
    }
    return best;
}

}  // namespace

TEST_CASE("hash oracle yields unique fixed-width values and stable aliases") {
    BlockUniverse u(42, 16);
    ChainString a = u.hashOf("x");
    ChainString b = u.hashOf("y");
    CHECK(a.size() == 16);
    CHECK(a != b);
    CHECK(u.hashOf("x") == a);
    u.aliasHash("z", "x");
    CHECK(u.hashOf("z") == a);
    u.aliasHash("z", "y");  // first alias wins
    CHECK(u.hashOf("z") == a);
}

TEST_CASE("blocks accumulate cumulative hashes along parent links") {
    BlockUniverse u(7, 8);
    BlockPtr g = u.genesis();
    BlockPtr b1 = u.makeBlock("b1", g, "p1");
    BlockPtr b2 = u.makeBlock("b2", b1, "p2");
    CHECK(b1->cum == g->cum.concat(b1->hash));
    CHECK(b2->cum == b1->cum.concat(b2->hash));
    CHECK(b2->depth == 2);
    CHECK(u.makeBlock("b1", g, "ignored") == b1);

    CHECK(hashConcat({g, b1, b2}, g) == b2->cum);
    CHECK(hashConcat({g, b2}, g).empty());   // not parent-linked
    CHECK(hashConcat({b1, b2}, g).empty());  // not rooted at genesis
}

TEST_CASE("store insertChain pulls in missing ancestors in order") {
    BlockUniverse u(7, 8);
    BlockPtr g = u.genesis();
    BlockPtr b1 = u.makeBlock("c1", g, "");
    BlockPtr b2 = u.makeBlock("c2", b1, "");
    BlockStore store(g);
    store.insertChain(b2);
    CHECK(store.contains("c1"));
    CHECK(store.contains("c2"));
    CHECK(store.arrivalIndex("c1") < store.arrivalIndex("c2"));
    CHECK(store.childrenOf(g->id).size() == 1);
}

TEST_CASE("resolvePrefix matches the exhaustive oracle on random trees") {
    std::mt19937_64 gen(99);
    for (int iter = 0; iter < 200; ++iter) {
        BlockUniverse u(1000 + iter, 6);
        BlockPtr g = u.genesis();
        BlockStore store(g);
        std::vector<BlockPtr> all = {g};
        int count = 1 + gen() % 12;
        for (int i = 0; i < count; ++i) {
            BlockPtr parent = all[gen() % all.size()];
            BlockPtr b = u.makeBlock("t" + std::to_string(iter) + "_" + std::to_string(i),
                                     parent, "");
            all.push_back(b);
            if (gen() % 4 != 0) store.insertChain(b);  // some blocks stay unseen
        }
        for (int q = 0; q < 20; ++q) {
            BlockPtr target = all[gen() % all.size()];
            ChainString sigma = target->cum;
            size_t extra = gen() % 10;
            for (size_t i = 0; i < extra; ++i) sigma = sigma.appendBit((gen() & 1) ? '1' : '0');
            if (gen() % 3 == 0) sigma = sigma.prefix(gen() % (sigma.size() + 1));

            Resolution r = resolvePrefix(sigma, store);
            BlockPtr want = bruteResolve(sigma, store, all);
            REQUIRE(r.last->id == want->id);
            REQUIRE(r.reduct_len == want->cum.size());
            REQUIRE(r.reduct() == want->cum);
            auto chain = r.chain();
            REQUIRE(chain.front()->id == g->id);
            REQUIRE(chain.back()->id == want->id);

            // every reported extender really extends and is stored
            for (const auto& c : childrenExtending(sigma, store)) {
                REQUIRE(c->parent->id == r.last->id);
                REQUIRE(sigma.isPrefixOf(c->cum));
                REQUIRE(store.contains(c->id));
            }
        }
    }
}

TEST_CASE("resolvePrefix falls back to genesis on foreign strings") {
    BlockUniverse u(5, 8);
    BlockStore store(u.genesis());
    ChainString alien = ChainString::fromBits("0101010101");
    Resolution r = resolvePrefix(alien, store);
    CHECK(r.last->id == u.genesis()->id);
}
