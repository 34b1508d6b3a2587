#include "frosty/chainstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace frosty {

ChainString ChainString::fromBits(std::string bits) {
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("ChainString: bit must be 0 or 1");
    }
    ChainString out;
    out.len_ = bits.size();
    out.base_ = std::make_shared<const std::string>(std::move(bits));
    return out;
}

size_t ChainString::lcp(const ChainString& other) const {
    size_t n = std::min(len_, other.len_);
    if (n == 0) return 0;
    if (base_ == other.base_) return n;
    const char* a = base_->data();
    const char* b = other.base_->data();
    size_t i = 0;
    // word-at-a-time scan, then byte tail
    for (; i + 8 <= n; i += 8) {
        if (std::memcmp(a + i, b + i, 8) != 0) break;
    }
    for (; i < n; ++i) {
        if (a[i] != b[i]) break;
    }
    return i;
}

ChainString ChainString::concat(const ChainString& other) const {
    if (other.empty()) return *this;
    std::string s;
    s.reserve(len_ + other.len_);
    s.append(data(), len_);
    s.append(other.data(), other.len_);
    return fromBits(std::move(s));
}

ChainString ChainString::appendBit(char b) const {
    std::string s;
    s.reserve(len_ + 1);
    s.append(data(), len_);
    s.push_back(b);
    return fromBits(std::move(s));
}

MajorityPrefix majorityPrefix(const std::vector<const ChainString*>& vals, size_t m) {
    MajorityPrefix out;
    if (m == 0 || vals.size() < m) return out;
    std::vector<size_t> active(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) active[i] = i;
    out.defined = true;
    size_t pos = 0;
    const ChainString* ref = vals[active[0]];
    while (true) {
        // unanimous fast path: everyone agrees with ref on the next chunk
        if (ref->size() >= pos + 64) {
            bool skip = true;
            for (size_t i : active) {
                const ChainString* v = vals[i];
                if (v->size() < pos + 64 ||
                    (v->data() != ref->data() &&
                     std::memcmp(v->data() + pos, ref->data() + pos, 64) != 0)) {
                    skip = false;
                    break;
                }
            }
            if (skip) {
                pos += 64;
                continue;
            }
        }
        size_t c0 = 0, c1 = 0;
        for (size_t i : active) {
            const ChainString* v = vals[i];
            if (v->size() <= pos) continue;
            (v->bit(pos) == '0' ? c0 : c1)++;
        }
        char b;
        if (c0 >= m) b = '0';
        else if (c1 >= m) b = '1';
        else break;
        std::vector<size_t> next;
        next.reserve(active.size());
        for (size_t i : active) {
            const ChainString* v = vals[i];
            if (v->size() > pos && v->bit(pos) == b) next.push_back(i);
        }
        active.swap(next);
        ref = vals[active[0]];
        ++pos;
    }
    out.value = ref->prefix(pos);
    return out;
}

}  // namespace frosty
