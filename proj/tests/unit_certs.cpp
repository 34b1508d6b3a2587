#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "frosty/certs.hpp"

using namespace frosty;

namespace {

std::string bruteMajority(const std::vector<std::string>& prefs) {
    size_t need = prefs.size() / 2 + 1;
    std::string best;
    for (const auto& cand : prefs) {
        for (size_t len = 0; len <= cand.size(); ++len) {
            size_t support = 0;
            for (const auto& v : prefs)
                if (v.size() >= len && v.compare(0, len, cand, 0, len) == 0) support++;
            if (support >= need && len > best.size()) best = cand.substr(0, len);
        }
    }
    return best;
}

std::vector<Signed<StartVoteBody>> makeVotes(const std::vector<std::string>& prefs) {
    std::vector<Signed<StartVoteBody>> votes;
    int signer = 0;
    for (const auto& s : prefs)
        votes.push_back({signer++, StartVoteBody{1, ChainString::fromBits(s)}});
    return votes;
}

}  // namespace

TEST_CASE("start-certificate anchor matches the brute-force majority oracle") {
    std::mt19937_64 g(777);
    for (int iter = 0; iter < 10000; ++iter) {
        size_t n = 1 + g() % 12;
        std::vector<std::string> prefs(n);
        std::string seed;
        size_t seed_len = g() % 17;
        for (size_t i = 0; i < seed_len; ++i) seed.push_back((g() & 1) ? '1' : '0');
        for (auto& s : prefs) {
            s = seed.substr(0, g() % (seed.size() + 1));
            size_t extra = g() % 5;
            for (size_t i = 0; i < extra && s.size() < 16; ++i)
                s.push_back((g() & 1) ? '1' : '0');
        }
        ChainString got = prefOfSc(makeVotes(prefs));
        REQUIRE(got.str() == bruteMajority(prefs));
    }
}

TEST_CASE("accumulator thresholds fire exactly once at the crossing") {
    ProtocolParams p;  // n = 25: ec 5, sc 20, notar 21
    World w(1, p);
    CertAccumulator acc(p, &w);

    ChainString sigma = ChainString::fromBits("0101");
    SUBCASE("epoch certs need 5 distinct signers") {
        for (int s = 0; s < 4; ++s) CHECK(!acc.addStuck({s, StuckBody{0, sigma}}));
        CHECK(!acc.addStuck({2, StuckBody{0, sigma}}));  // duplicate signer
        auto ec = acc.addStuck({4, StuckBody{0, sigma}});
        REQUIRE(ec.has_value());
        CHECK((*ec)->e == 1);
        CHECK((*ec)->sigma == sigma);
        CHECK((*ec)->votes.size() == 5);
        CHECK(!acc.addStuck({5, StuckBody{0, sigma}}));  // already produced
        // different sigma accumulates separately
        for (int s = 0; s < 4; ++s) CHECK(!acc.addStuck({s, StuckBody{0, ChainString()}}));
    }

    SUBCASE("start certs embed the majority anchor") {
        std::optional<StartCertPtr> sc;
        for (int s = 0; s < 25 && !sc; ++s) sc = acc.addStartVote({s, StartVoteBody{1, sigma}});
        REQUIRE(sc.has_value());
        CHECK((*sc)->votes.size() == 20);
        CHECK((*sc)->pref == sigma);
        CHECK(validateStartCert(**sc, p, w) == false);  // signatures never recorded
    }

    SUBCASE("notarizations and finalizations need 21 votes") {
        auto b = w.dummyBlock(1, 3);
        std::optional<NotarPtr> nt;
        for (int s = 0; s < 25 && !nt; ++s) nt = acc.addVote({s, VoteBody{1, 3, b}});
        REQUIRE(nt.has_value());
        CHECK((*nt)->votes.size() == 21);
        std::optional<FinalPtr> fn;
        for (int s = 0; s < 25 && !fn; ++s) fn = acc.addFinalize({s, FinalizeBody{1, 3}});
        REQUIRE(fn.has_value());
        CHECK((*fn)->votes.size() == 21);
    }
}

TEST_CASE("certificate validation checks signatures, counts and statement shape") {
    ProtocolParams p;
    World w(2, p);
    ChainString sigma = ChainString::fromBits("11");

    EpochCert ec;
    ec.e = 1;
    ec.sigma = sigma;
    for (int s = 0; s < 5; ++s) {
        Signed<StuckBody> v{s, StuckBody{0, sigma}};
        w.recordSigned(s, digest(v.body));
        ec.votes.push_back(v);
    }
    CHECK(validateEpochCert(ec, p, w));

    SUBCASE("even target epoch rejected") {
        ec.e = 2;
        CHECK(!validateEpochCert(ec, p, w));
    }
    SUBCASE("mismatched statement rejected") {
        ec.votes[0].body.final_ = ChainString();
        CHECK(!validateEpochCert(ec, p, w));
    }
    SUBCASE("forged correct-signer vote rejected") {
        ec.votes[0].body.e = 0;
        ec.votes[0].signer = 7;  // 7 never signed anything
        CHECK(!validateEpochCert(ec, p, w));
    }
    SUBCASE("duplicate signers do not reach the distinct count") {
        ec.votes[0] = ec.votes[1];
        CHECK(!validateEpochCert(ec, p, w));
    }
    SUBCASE("byzantine signers pass unconditionally") {
        w.setByzantine({0});
        ec.votes[0].body.final_ = sigma;  // keep statement consistent
        ec.votes[0].signer = 0;
        CHECK(validateEpochCert(ec, p, w));
    }
}
