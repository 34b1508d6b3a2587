#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "frosty/chainstring.hpp"

using namespace frosty;

namespace {

// Reference implementation: try every prefix length of every value.
std::pair<bool, std::string> bruteMajorityPrefix(const std::vector<std::string>& vals, size_t m) {
    bool defined = false;
    std::string best;
    for (const auto& cand : vals) {
        for (size_t len = 0; len <= cand.size(); ++len) {
            std::string sigma = cand.substr(0, len);
            size_t support = 0;
            for (const auto& v : vals)
                if (v.size() >= len && v.compare(0, len, sigma) == 0) support++;
            if (support >= m && (!defined || len > best.size())) {
                defined = true;
                best = sigma;
            }
        }
    }
    return {defined, best};
}

}  // namespace

TEST_CASE("prefix views share storage and compare correctly") {
    ChainString a = ChainString::fromBits("0110100111");
    CHECK(a.size() == 10);
    ChainString p = a.prefix(4);
    CHECK(p.str() == "0110");
    CHECK(p.isPrefixOf(a));
    CHECK(!a.isPrefixOf(p));
    CHECK(p.data() == a.data());
    CHECK(a.lcp(ChainString::fromBits("0111")) == 3);
    CHECK(a.prefix(0).isPrefixOf(p));
    CHECK(a.prefix(10) == a);
}

TEST_CASE("concat and appendBit") {
    ChainString a = ChainString::fromBits("01");
    ChainString b = ChainString::fromBits("10");
    CHECK(a.concat(b).str() == "0110");
    CHECK(a.appendBit('1').str() == "011");
    CHECK(ChainString().concat(a) == a);
    CHECK(a.concat(ChainString()) == a);
}

TEST_CASE("ordering is length first then content") {
    ChainString a = ChainString::fromBits("1");
    ChainString b = ChainString::fromBits("00");
    CHECK(a < b);
    CHECK(!(b < a));
    CHECK(ChainString() < a);
}

TEST_CASE("majorityPrefix matches the brute-force oracle on random inputs") {
    std::mt19937_64 g(12345);
    for (int iter = 0; iter < 3000; ++iter) {
        size_t count = 1 + g() % 9;
        std::vector<std::string> raw(count);
        std::vector<ChainString> owned;
        for (auto& s : raw) {
            size_t len = g() % 12;
            for (size_t i = 0; i < len; ++i) s.push_back((g() & 1) ? '1' : '0');
        }
        // correlated values make long common prefixes likely
        if (iter % 2 == 0 && count > 2) {
            for (size_t i = 1; i < count; ++i)
                raw[i] = raw[0].substr(0, g() % (raw[0].size() + 1)) + raw[i];
        }
        for (auto& s : raw) owned.push_back(ChainString::fromBits(s));
        std::vector<const ChainString*> ptrs;
        for (auto& c : owned) ptrs.push_back(&c);
        size_t m = count / 2 + 1 + g() % 2;
        auto got = majorityPrefix(ptrs, m);
        auto want = bruteMajorityPrefix(raw, m);
        REQUIRE(got.defined == want.first);
        if (got.defined) REQUIRE(got.value.str() == want.second);
    }
}

TEST_CASE("majorityPrefix edge cases") {
    std::vector<ChainString> owned;
    std::vector<const ChainString*> ptrs;
    CHECK(!majorityPrefix(ptrs, 1).defined);
    CHECK(!majorityPrefix(ptrs, 0).defined);

    owned.push_back(ChainString::fromBits("0101"));
    owned.push_back(ChainString::fromBits("0111"));
    owned.push_back(ChainString::fromBits("0100"));
    for (auto& c : owned) ptrs.push_back(&c);
    auto r = majorityPrefix(ptrs, 2);
    CHECK(r.defined);
    CHECK(r.value.str() == "010");
    auto all = majorityPrefix(ptrs, 3);
    CHECK(all.value.str() == "01");
    CHECK(!majorityPrefix(ptrs, 4).defined);
}

TEST_CASE("majorityPrefix handles long unanimous runs past the chunk size") {
    std::string base(200, '1');
    std::vector<ChainString> owned = {ChainString::fromBits(base + "0"),
                                      ChainString::fromBits(base + "0"),
                                      ChainString::fromBits(base + "1")};
    std::vector<const ChainString*> ptrs;
    for (auto& c : owned) ptrs.push_back(&c);
    auto r = majorityPrefix(ptrs, 2);
    CHECK(r.value.str() == base + "0");
}
