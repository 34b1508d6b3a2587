#pragma once

#include <gmpxx.h>

#include <string>

namespace frosty {

enum class TailDirection { AtLeast, AtMost, Exactly };

struct TailQuery {
    unsigned k = 0;          // trial count
    mpq_class x;             // per-trial probability, exact rational
    unsigned m = 0;          // threshold count
    TailDirection direction = TailDirection::AtLeast;
};

// Parses a decimal or fraction literal ("0.2", "3/5", "1") into an exact
// rational.
mpq_class parseRational(const std::string& text);

// Exact binomial tail/pmf value.
mpq_class bin(const TailQuery& query);

inline mpq_class binAtLeast(unsigned k, const mpq_class& x, unsigned m) {
    return bin(TailQuery{k, x, m, TailDirection::AtLeast});
}

// Scientific-notation rendering of an exact rational with the given number
// of significant digits.
std::string toSci(const mpq_class& q, unsigned sig_digits = 6);

struct ParamSafetyReport {
    unsigned k = 0, alpha3 = 0;
    mpq_class f_frac;
    unsigned gamma = 0;

    mpq_class one_round;           // Bin(k, f_frac, >= alpha3)
    mpq_class two_round;           // one_round^2
    mpz_class envelope;            // process-rounds in the operational envelope
    mpq_class union_bound;         // two_round * envelope
    mpq_class pair_success;        // Bin(k, 3/5, >= alpha3), lower-bound check
    mpq_class two_round_success;   // pair_success^2
    mpq_class window_fail_derived; // (1 - two_round_success)^(gamma/2)
    mpq_class window_fail_stated;   // (71/100)^(gamma/2)

    bool one_round_ok = false;        // < 1e-14
    bool two_round_ok = false;        // < 1e-28
    bool union_bound_ok = false;      // < 2e-13
    bool pair_success_ok = false;     // >= 0.548 (and >= 0.3 squared)
    bool window_fail_ok = false;      // 0.71^150-style bound < 1e-22
    bool derived_vs_stated_differ = false;

    std::string text() const;
    std::string json() const;
};

// Reproduces the parameter-safety and liveness arithmetic for the epoch
// machinery: the alpha3 two-round failure bound, its union bound over the
// operational envelope (10^4 processes, 1000 years at 5 rounds/second), and
// the gamma-window success/failure bounds.
ParamSafetyReport paramSafetyReport(unsigned k, unsigned alpha3, const mpq_class& f_frac,
                                    unsigned gamma = 300);

}  // namespace frosty
