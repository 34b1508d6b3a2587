#include <doctest.h>

#include <string>
#include <vector>

#include "frosty/simplex_odd.hpp"
#include "frosty/world.hpp"

using namespace frosty;

namespace {

StartCertPtr fakeCert(const ChainString& pref) {
    auto sc = std::make_shared<StartCert>();
    sc->e = 1;
    sc->pref = pref;
    sc->token = "test-sc";
    return sc;
}

}  // namespace

TEST_CASE("leader rotation wraps and never goes negative") {
    CHECK(lead(0, 25) == 0);
    CHECK(lead(24, 25) == 24);
    CHECK(lead(25, 25) == 0);
    CHECK(lead(26, 25) == 1);
    for (int h = 0; h < 200; ++h) {
        int l = lead(h, 7);
        CHECK(l >= 0);
        CHECK(l < 7);
    }
}

TEST_CASE("chain reduction and the handed-over string, all patterns to height 6") {
    ProtocolParams p;
    World w(11, p);
    ChainString anchor = ChainString::fromBits("0011");
    StartCertPtr cert = fakeCert(anchor);

    for (int height = 1; height <= 6; ++height) {
        for (int mask = 0; mask < (1 << height); ++mask) {
            std::vector<SBlockPtr> chain;
            std::string parent = World::chainToken({});
            for (int h = 1; h <= height; ++h) {
                bool dummy = (mask >> (h - 1)) & 1;
                SBlockPtr b = dummy ? w.dummyBlock(1, h)
                                    : w.makeSimplexBlock(1, h, parent, "tx" + std::to_string(h),
                                                         cert);
                chain.push_back(b);
                parent = World::chainToken(chain);
            }

            // oracle: walk the pattern directly
            std::vector<SBlockPtr> want_red;
            for (int h = 1; h <= height; ++h)
                if (!((mask >> (h - 1)) & 1)) want_red.push_back(chain[h - 1]);

            auto red = reduceChain(chain);
            REQUIRE(red.size() == want_red.size());
            for (size_t i = 0; i < red.size(); ++i) REQUIRE(red[i]->token == want_red[i]->token);

            for (unsigned mu = 1; mu <= red.size(); ++mu) {
                ChainString want = anchor;
                for (unsigned i = 0; i < mu; ++i) want = want.concat(want_red[i]->hash);
                REQUIRE(finOf(chain, mu) == want);
            }
        }
    }
}

TEST_CASE("shared block factories are content addressed") {
    ProtocolParams p;
    World w(3, p);
    auto d1 = w.dummyBlock(1, 4);
    auto d2 = w.dummyBlock(1, 4);
    CHECK(d1 == d2);
    CHECK(d1->dummy);

    auto cert = fakeCert(ChainString::fromBits("1"));
    auto b1 = w.makeSimplexBlock(1, 2, "chain", "tx", cert);
    auto b2 = w.makeSimplexBlock(1, 2, "chain", "tx", cert);
    auto b3 = w.makeSimplexBlock(1, 2, "chain", "tx2", cert);
    CHECK(b1 == b2);
    CHECK(b1->token != b3->token);
    CHECK(b1->hash != b3->hash);
    CHECK(b1->hash.size() == p.hash_bits);

    CHECK(World::chainToken({}) == "chain");
    CHECK(World::chainToken({b1}) != World::chainToken({b3}));
}
