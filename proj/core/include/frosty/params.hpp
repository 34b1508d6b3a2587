#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frosty {

using Epoch = long;

// Protocol and model parameters. Defaults are the analyzed setting
// (k=80, a1=41, a2=72, a3=48, beta=14, gamma=300).
struct ProtocolParams {
    int n = 25;
    int f = 0;
    unsigned k = 80;
    unsigned alpha1 = 41;
    unsigned alpha2 = 72;
    unsigned alpha3 = 48;
    unsigned beta = 14;
    unsigned gamma = 300;
    unsigned mu = 3;          // odd-epoch block quota
    int delta = 1;            // post-GST delivery bound, in timeslots
    unsigned hash_bits = 32;  // L

    void validate() const {
        if (n < 1) throw std::invalid_argument("params: n must be positive");
        if (f < 0 || 5 * f >= n) throw std::invalid_argument("params: need f < n/5");
        if (!(k >= alpha2 && alpha2 >= alpha1 && 2 * alpha1 > k))
            throw std::invalid_argument("params: need k >= a2 >= a1 > k/2");
        if (alpha3 > k) throw std::invalid_argument("params: need a3 <= k");
        if (beta < 1 || gamma < 1 || mu < 1)
            throw std::invalid_argument("params: beta, gamma, mu must be >= 1");
        if (delta < 1) throw std::invalid_argument("params: delta must be >= 1");
        if (hash_bits < 1) throw std::invalid_argument("params: hash_bits must be >= 1");
    }

    // "at least n/5" stuck messages
    int ecThreshold() const { return (n + 4) / 5; }
    // "at least 4n/5" starting votes
    int scThreshold() const { return (4 * n + 4) / 5; }
    // "> 4n/5" votes / finalize messages
    int notarThreshold() const { return (4 * n) / 5 + 1; }
};

}  // namespace frosty
