#include "frosty/binomial.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace frosty {

mpq_class parseRational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpq_class q(text, 10);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        mpq_class q{mpz_class(text, 10)};
        return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_digits = text.size() - dot - 1;
    if (digits.empty()) throw std::invalid_argument("bad rational: " + text);
    bool neg = false;
    if (digits[0] == '-') {
        neg = true;
        digits = digits.substr(1);
    }
    mpz_class num(digits.empty() ? "0" : digits, 10);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_digits; ++i) den *= 10;
    mpq_class q(neg ? -num : num, den);
    q.canonicalize();
    return q;
}

namespace {

mpq_class pmf(unsigned k, const mpq_class& x, unsigned i) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), k, i);
    mpq_class p = c;
    mpq_class xn(x), xm(1 - x);
    mpq_class acc = 1;
    for (unsigned j = 0; j < i; ++j) acc *= xn;
    for (unsigned j = 0; j < k - i; ++j) acc *= xm;
    return p * acc;
}

mpq_class powq(mpq_class base, unsigned n) {
    mpq_class acc = 1;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

mpq_class pow10q(int e) {
    mpz_class t = 1;
    for (int i = 0; i < std::abs(e); ++i) t *= 10;
    return e >= 0 ? mpq_class(t) : mpq_class(1, t);
}

}  // namespace

mpq_class bin(const TailQuery& query) {
    if (query.x < 0 || query.x > 1) throw std::domain_error("bin: x outside [0,1]");
    if (query.m > query.k) {
        // impossible count: the at-least tail is empty, at-most covers everything
        if (query.direction == TailDirection::AtMost) return 1;
        return 0;
    }
    mpq_class total = 0;
    switch (query.direction) {
        case TailDirection::Exactly:
            return pmf(query.k, query.x, query.m);
        case TailDirection::AtLeast:
            for (unsigned i = query.m; i <= query.k; ++i) total += pmf(query.k, query.x, i);
            return total;
        case TailDirection::AtMost:
            for (unsigned i = 0; i <= query.m; ++i) total += pmf(query.k, query.x, i);
            return total;
    }
    throw std::logic_error("bin: bad direction");
}

std::string toSci(const mpq_class& q, unsigned sig_digits) {
    if (q == 0) return "0";
    mpf_class f(q, 256);
    mp_exp_t exp10 = 0;
    std::string mant = f.get_str(exp10, 10, sig_digits);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant = mant.substr(1);
    while (mant.size() < sig_digits) mant.push_back('0');
    std::ostringstream out;
    if (neg) out << '-';
    out << mant[0] << '.' << mant.substr(1) << "e" << (exp10 - 1);
    return out.str();
}

ParamSafetyReport paramSafetyReport(unsigned k, unsigned alpha3, const mpq_class& f_frac,
                                    unsigned gamma) {
    ParamSafetyReport r;
    r.k = k;
    r.alpha3 = alpha3;
    r.f_frac = f_frac;
    r.gamma = gamma;

    r.one_round = binAtLeast(k, f_frac, alpha3);
    r.two_round = r.one_round * r.one_round;
    // 10^4 processes, 1000 years of 366 days, 5 rounds per second
    r.envelope = mpz_class(10000) * 5 * 60 * 60 * 24 * 366 * 1000;
    r.union_bound = r.two_round * r.envelope;

    r.pair_success = binAtLeast(k, mpq_class(3, 5), alpha3);
    r.two_round_success = r.pair_success * r.pair_success;
    unsigned pairs = gamma / 2;
    r.window_fail_derived = powq(1 - r.two_round_success, pairs);
    r.window_fail_stated = powq(mpq_class(71, 100), pairs);

    r.one_round_ok = r.one_round < pow10q(-14);
    r.two_round_ok = r.two_round < pow10q(-28);
    r.union_bound_ok = r.union_bound < 2 * pow10q(-13);
    r.pair_success_ok = r.pair_success >= mpq_class(548, 1000) &&
                        r.two_round_success >= mpq_class(3, 10);
    r.window_fail_ok = r.window_fail_stated < pow10q(-22);
    r.derived_vs_stated_differ = r.window_fail_derived != r.window_fail_stated;
    return r;
}

std::string ParamSafetyReport::text() const {
    std::ostringstream o;
    auto line = [&](const std::string& label, const std::string& value, bool ok) {
        o << (ok ? "  [ok]   " : "  [FAIL] ") << label << " = " << value << "\n";
    };
    o << "parameter safety report (k=" << k << ", alpha3=" << alpha3
      << ", f=" << f_frac.get_str() << ", gamma=" << gamma << ")\n";
    line("Bin(k, f, >=alpha3)            < 1e-14 ", toSci(one_round), one_round_ok);
    line("two consecutive rounds         < 1e-28 ", toSci(two_round), two_round_ok);
    line("union bound over envelope      < 2e-13 ", toSci(union_bound), union_bound_ok);
    line("Bin(k, 3/5, >=alpha3)          >= 0.548", toSci(pair_success), pair_success_ok);
    line("pair success squared           >= 0.3  ", toSci(two_round_success), pair_success_ok);
    line("gamma-window failure (stated)  < 1e-22 ", toSci(window_fail_stated), window_fail_ok);
    o << "  [note] gamma-window failure, derived (1 - s^2)^" << gamma / 2 << " = "
      << toSci(window_fail_derived)
      << (derived_vs_stated_differ ? "  (differs from stated 0.71-based bound)" : "") << "\n";
    o << "  envelope = " << envelope.get_str() << " process-rounds\n";
    return o.str();
}

std::string ParamSafetyReport::json() const {
    std::ostringstream o;
    o << "{"
      << "\"k\":" << k << ",\"alpha3\":" << alpha3 << ",\"f\":\"" << f_frac.get_str()
      << "\",\"gamma\":" << gamma << ",\"one_round\":\"" << toSci(one_round)
      << "\",\"two_round\":\"" << toSci(two_round) << "\",\"union_bound\":\""
      << toSci(union_bound) << "\",\"pair_success\":\"" << toSci(pair_success)
      << "\",\"two_round_success\":\"" << toSci(two_round_success)
      << "\",\"window_fail_stated\":\"" << toSci(window_fail_stated)
      << "\",\"window_fail_derived\":\"" << toSci(window_fail_derived)
      << "\",\"one_round_ok\":" << (one_round_ok ? "true" : "false")
      << ",\"two_round_ok\":" << (two_round_ok ? "true" : "false")
      << ",\"union_bound_ok\":" << (union_bound_ok ? "true" : "false")
      << ",\"pair_success_ok\":" << (pair_success_ok ? "true" : "false")
      << ",\"window_fail_ok\":" << (window_fail_ok ? "true" : "false") << "}";
    return o.str();
}

}  // namespace frosty
