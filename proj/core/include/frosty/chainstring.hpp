#pragma once

#include <cstddef>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

namespace frosty {

// A finite bit string over {'0','1'}, used for concatenated block-hash
// chains and their prefixes. Values are immutable and share storage: a
// ChainString is a length-limited view into a refcounted character buffer,
// so taking prefixes is O(1) and copies are cheap.
class ChainString {
public:
    ChainString() = default;

    static ChainString fromBits(std::string bits);

    size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    char bit(size_t i) const { return (*base_)[i]; }

    const char* data() const { return base_ ? base_->data() : ""; }

    // Prefix relation: *this is an initial segment of other.
    bool isPrefixOf(const ChainString& other) const {
        if (len_ > other.len_) return false;
        if (len_ == 0) return true;
        if (base_ == other.base_) return true;
        return std::memcmp(base_->data(), other.base_->data(), len_) == 0;
    }

    // View of the first n bits (n <= size()), sharing storage.
    ChainString prefix(size_t n) const {
        ChainString out = *this;
        out.len_ = n < len_ ? n : len_;
        return out;
    }

    // Length of the longest common prefix.
    size_t lcp(const ChainString& other) const;

    ChainString concat(const ChainString& other) const;
    ChainString appendBit(char b) const;

    bool operator==(const ChainString& o) const {
        if (len_ != o.len_) return false;
        if (len_ == 0) return true;
        if (base_ == o.base_) return true;
        return std::memcmp(base_->data(), o.base_->data(), len_) == 0;
    }
    bool operator!=(const ChainString& o) const { return !(*this == o); }

    // Total order for use as a map key: length first, then content.
    bool operator<(const ChainString& o) const {
        if (len_ != o.len_) return len_ < o.len_;
        if (len_ == 0 || base_ == o.base_) return false;
        return std::memcmp(base_->data(), o.base_->data(), len_) < 0;
    }

    std::string str() const { return base_ ? base_->substr(0, len_) : std::string(); }

private:
    std::shared_ptr<const std::string> base_;
    size_t len_ = 0;
};

// Longest sigma such that at least m of the given values have sigma as a
// prefix; no value at all qualifies when fewer than m values are present.
// With m > vals.size()/2 the result is unique. Implemented as a winnowing
// walk that skips 64-character chunks while the active set is unanimous.
struct MajorityPrefix {
    bool defined = false;
    ChainString value;
};
MajorityPrefix majorityPrefix(const std::vector<const ChainString*>& vals, size_t m);

inline bool extends(const ChainString& prefix, const ChainString& value) {
    return prefix.isPrefixOf(value);
}

// Prefix strictly shorter than value.
inline bool properlyExtends(const ChainString& prefix, const ChainString& value) {
    return prefix.size() < value.size() && prefix.isPrefixOf(value);
}

}  // namespace frosty
