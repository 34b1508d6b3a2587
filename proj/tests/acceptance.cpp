// End-to-end acceptance gate: one pass/fail line per criterion, nonzero exit
// if any criterion fails.

#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frosty/binomial.hpp"
#include "frosty/certs.hpp"
#include "frosty/scenario.hpp"
#include "frosty/simplex_odd.hpp"

using namespace frosty;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& note = "") {
    std::cout << "criterion " << id << " (" << name << "): " << (pass ? "PASS" : "FAIL");
    if (!note.empty()) std::cout << "  [" << note << "]";
    std::cout << std::endl;
    if (!pass) failures++;
}

// ---------------------------------------------------------------- criterion 1

void c1_exact_arithmetic() {
    ParamSafetyReport r = paramSafetyReport(80, 48, mpq_class(1, 5), 300);
    bool pass = r.one_round_ok && r.two_round_ok && r.union_bound_ok && r.pair_success_ok &&
                r.window_fail_ok;
    std::ostringstream note;
    note << "tail=" << toSci(r.one_round) << " union=" << toSci(r.union_bound)
         << " pair=" << toSci(r.pair_success) << " window=" << toSci(r.window_fail_stated);
    report(1, "exact tail arithmetic", pass, note.str());
}

// ------------------------------------------------------------ shared checkers

bool pacingOk(const RunMetrics& m, const ProtocolParams& p) {
    for (int q = 0; q < m.n; ++q) {
        if (!m.correct(q)) continue;
        const auto& starts = m.round_starts[q];
        for (size_t i = 1; i < starts.size(); ++i) {
            if (starts[i].e != starts[i - 1].e) continue;
            if (starts[i].t - starts[i - 1].t > 2 * p.delta + 1) return false;
        }
    }
    return true;
}

// Longest finalized-string length held by every correct process at each
// timeslot, plus the epoch each process is in.
struct Timeline {
    std::vector<size_t> floor_len;   // indexed by t
    std::vector<Epoch> min_epoch;    // lowest epoch among correct at t
    std::vector<Epoch> max_epoch;
};

Timeline buildTimeline(const RunMetrics& m, int horizon) {
    Timeline tl;
    tl.floor_len.assign(horizon + 1, 0);
    tl.min_epoch.assign(horizon + 1, 0);
    tl.max_epoch.assign(horizon + 1, 0);
    std::vector<size_t> len_now;
    std::vector<Epoch> ep_now;
    std::vector<size_t> fin_idx;
    std::vector<std::map<Epoch, int>::const_iterator> ep_it;
    std::vector<int> ids;
    for (int q = 0; q < m.n; ++q) {
        if (!m.correct(q)) continue;
        ids.push_back(q);
        len_now.push_back(0);
        ep_now.push_back(0);
        fin_idx.push_back(0);
        ep_it.push_back(m.epoch_entry[q].begin());
    }
    for (int t = 0; t <= horizon; ++t) {
        for (size_t i = 0; i < ids.size(); ++i) {
            int q = ids[i];
            while (fin_idx[i] < m.finals[q].size() && m.finals[q][fin_idx[i]].t <= t) {
                len_now[i] = std::max(len_now[i], m.finals[q][fin_idx[i]].value.size());
                fin_idx[i]++;
            }
            while (ep_it[i] != m.epoch_entry[q].end() && ep_it[i]->second <= t) {
                ep_now[i] = ep_it[i]->first;
                ++ep_it[i];
            }
        }
        size_t fl = SIZE_MAX;
        Epoch lo = LONG_MAX, hi = LONG_MIN;
        for (size_t i = 0; i < ids.size(); ++i) {
            fl = std::min(fl, len_now[i]);
            lo = std::min(lo, ep_now[i]);
            hi = std::max(hi, ep_now[i]);
        }
        tl.floor_len[t] = fl;
        tl.min_epoch[t] = lo;
        tl.max_epoch[t] = hi;
    }
    return tl;
}

// At any post-GST timeslot with every correct process in the same even
// epoch, within 4*delta*gamma timeslots the finalized floor grows or every
// correct process has moved to the next epoch.
bool claim3Holds(const RunMetrics& m, const ProtocolParams& p, int gst, int horizon) {
    Timeline tl = buildTimeline(m, horizon);
    int span = 4 * p.delta * (int)p.gamma;
    for (int t = std::max(gst, 0); t + span <= horizon; ++t) {
        Epoch e = tl.min_epoch[t];
        if (e != tl.max_epoch[t] || e % 2 != 0) continue;
        bool extended = tl.floor_len[t + span] > tl.floor_len[t];
        bool advanced = tl.min_epoch[t + span] >= e + 1;
        if (!extended && !advanced) return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 2

std::vector<RunResult> happy_runs;  // kept for the claim-3 sweep

void c2_happy_path() {
    bool pass = true;
    std::string note;
    for (uint64_t seed = 1; seed <= 20 && pass; ++seed) {
        Scenario sc;
        sc.name = "happy";
        sc.horizon = 2000;
        sc.seed = seed;
        RunResult r = runScenario(sc);
        happy_runs.push_back(r);
        if (!r.consistent || !r.violations.empty()) {
            pass = false;
            note = "consistency failure at seed " + std::to_string(seed);
        } else if (r.min_final_blocks < 5) {
            pass = false;
            note = "only " + std::to_string(r.min_final_blocks) + " blocks at seed " +
                   std::to_string(seed);
        } else if (!pacingOk(r.metrics, sc.params)) {
            pass = false;
            note = "round pacing broken at seed " + std::to_string(seed);
        }
    }
    if (pass)
        note = "20 seeds, min " +
               std::to_string(std::min_element(happy_runs.begin(), happy_runs.end(),
                                               [](const RunResult& a, const RunResult& b) {
                                                   return a.min_final_blocks < b.min_final_blocks;
                                               })
                                  ->min_final_blocks) +
               " blocks";
    report(2, "fault-free finalization", pass, note);
}

// ---------------------------------------------------------------- criterion 3

Scenario liarScenario(uint64_t seed) {
    Scenario sc;
    sc.name = "liar";
    sc.horizon = 900;
    sc.seed = seed;
    sc.params.f = 4;
    sc.params.gamma = 50;
    sc.byz_kind = "sample_liar";
    sc.byz_ids = {21, 22, 23, 24};
    return sc;
}

std::vector<RunResult> liar_runs;

void c3_epoch_change() {
    bool pass = true;
    std::string note;
    for (uint64_t seed = 1; seed <= 20 && pass; ++seed) {
        Scenario sc = liarScenario(seed);
        RunResult r = runScenario(sc);
        liar_runs.push_back(r);
        const RunMetrics& m = r.metrics;
        auto fail = [&](const std::string& why) {
            pass = false;
            note = why + " at seed " + std::to_string(seed);
        };
        if (!r.consistent || !r.violations.empty()) { fail("consistency"); continue; }
        if (m.stuck_sent.empty()) { fail("no stuck message"); continue; }
        if (m.ec_formed.empty()) { fail("no epoch certificate"); continue; }
        int t1 = INT_MAX;
        for (const auto& ev : m.ec_formed)
            if (ev.e == 1) t1 = std::min(t1, ev.t);
        if (t1 == INT_MAX) { fail("no epoch-1 certificate"); continue; }
        bool entries_ok = true, concludes_ok = true, e2_ok = true;
        for (int q = 0; q < m.n && pass; ++q) {
            if (!m.correct(q)) continue;
            auto it1 = m.epoch_entry[q].find(1);
            if (it1 == m.epoch_entry[q].end() || it1->second > t1 + sc.params.delta)
                entries_ok = false;
            bool concluded = false;
            for (const auto& c : m.concludes)
                if (c.node == q && c.e == 1 && c.reduced >= sc.params.mu) concluded = true;
            concludes_ok = concludes_ok && concluded;
            e2_ok = e2_ok && m.epoch_entry[q].count(2) > 0;
        }
        if (!entries_ok) { fail("late epoch-1 entry"); continue; }
        if (!concludes_ok) { fail("fallback epoch did not conclude"); continue; }
        if (!e2_ok) { fail("missing epoch-2 entry"); continue; }

        // every epoch-2 final must extend every correct epoch-0 final
        for (int q = 0; q < m.n && pass; ++q) {
            if (!m.correct(q)) continue;
            int entry2 = m.epoch_entry[q].at(2);
            ChainString f2;
            for (const auto& fr : m.finals[q])
                if (fr.t <= entry2) f2 = fr.value;
            for (int w = 0; w < m.n && pass; ++w) {
                if (!m.correct(w)) continue;
                int entry1 = m.epoch_entry[w].at(1);
                ChainString f0;
                for (const auto& fr : m.finals[w])
                    if (fr.t <= entry1 && fr.value.size() > f0.size()) f0 = fr.value;
                if (!f0.isPrefixOf(f2) || f2.size() <= f0.size())
                    fail("epoch-2 final does not extend an epoch-0 final");
            }
        }
    }
    if (pass) note = "20 seeds: stuck -> EC -> fallback conclude -> epoch 2";
    report(3, "epoch-change liveness", pass, note);
}

// ---------------------------------------------------------------- criterion 4

void c4_progress_shape() {
    bool pass = true;
    std::string note;
    for (size_t i = 0; i < happy_runs.size() && pass; ++i) {
        ProtocolParams p;  // defaults, gamma 300
        if (!claim3Holds(happy_runs[i].metrics, p, 0, 2000)) {
            pass = false;
            note = "fault-free run " + std::to_string(i + 1);
        }
    }
    for (size_t i = 0; i < liar_runs.size() && pass; ++i) {
        Scenario sc = liarScenario(1);
        if (!claim3Holds(liar_runs[i].metrics, sc.params, 0, sc.horizon)) {
            pass = false;
            note = "liar run " + std::to_string(i + 1);
        }
    }
    if (pass) note = "40 runs swept";
    report(4, "bounded progress window", pass, note);
}

// ---------------------------------------------------------------- criterion 5

void c5_equivocation() {
    bool pass = true;
    std::string note;
    for (uint64_t seed = 1; seed <= 50 && pass; ++seed) {
        Scenario sc;
        sc.name = "equiv";
        sc.horizon = 900;
        sc.seed = seed;
        sc.params.f = 4;
        sc.params.gamma = 50;
        sc.byz_kind = "equivocating_leader";
        sc.byz_ids = {1, 2, 3, 4};  // early leaders of the fallback epoch
        RunResult r = runScenario(sc);
        if (!r.consistent || !r.violations.empty()) {
            pass = false;
            note = "consistency failure at seed " + std::to_string(seed);
            break;
        }
        // no two distinct notarized non-dummy blocks at any (epoch, height)
        std::map<std::pair<Epoch, int>, std::set<std::string>> seen;
        for (const auto& nt : r.metrics.notars)
            if (!nt.dummy) seen[{nt.e, nt.h}].insert(nt.token);
        for (const auto& [key, toks] : seen) {
            if (toks.size() > 1) {
                pass = false;
                note = "conflicting notarizations at seed " + std::to_string(seed) + " height " +
                       std::to_string(key.second);
            }
        }
    }
    if (pass) note = "50 seeds, unique notarization per height";
    report(5, "quorum intersection under equivocation", pass, note);
}

// ---------------------------------------------------------------- criterion 6

void c6_asynchrony() {
    bool pass = true;
    std::string note;
    for (uint64_t seed = 1; seed <= 50 && pass; ++seed) {
        Scenario sc;
        sc.name = "async";
        sc.horizon = 1100;
        sc.seed = seed;
        sc.gst = 500;
        sc.max_delay_pre_gst = true;
        sc.params.f = 4;
        sc.params.gamma = 50;
        sc.byz_kind = "split_liar";
        sc.byz_ids = {21, 22, 23, 24};
        RunResult r = runScenario(sc);
        if (!r.consistent || !r.violations.empty()) {
            pass = false;
            note = "consistency failure at seed " + std::to_string(seed);
        }
    }

    // negative control: past the tolerated fraction, the checker must be
    // able to catch a violation (thresholds scaled so one is reachable)
    bool caught = false;
    for (uint64_t seed = 1; seed <= 50 && !caught; ++seed) {
        Scenario sc;
        sc.name = "negative";
        sc.horizon = 600;
        sc.seed = seed;
        sc.params.k = 5;
        sc.params.alpha1 = 3;
        sc.params.alpha2 = 5;
        sc.params.alpha3 = 3;
        sc.params.gamma = 100000;  // stay in the sampling epoch
        sc.byz_kind = "split_liar";
        sc.byz_ids = {19, 20, 21, 22, 23, 24};  // ceil(n/5) + 1
        RunResult r = runScenario(sc);
        caught = !r.consistent || !r.violations.empty();
    }
    if (!caught) {
        pass = false;
        note = "negative control produced no violation";
    }
    if (pass) note = "50 adversarial-scheduling seeds safe; checker catches overload";
    report(6, "safety under pre-GST asynchrony", pass, note);
}

// ---------------------------------------------------------------- criterion 7

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

void c7_oracle_equivalence() {
    bool pass = true;
    std::string note;
    std::mt19937_64 g(20260826);
    for (int iter = 0; iter < 10000 && pass; ++iter) {
        size_t n = 1 + g() % 12;
        std::string seed;
        size_t seed_len = g() % 17;
        for (size_t i = 0; i < seed_len; ++i) seed.push_back((g() & 1) ? '1' : '0');
        std::vector<std::string> prefs(n);
        std::vector<Signed<StartVoteBody>> votes;
        int signer = 0;
        for (auto& s : prefs) {
            s = seed.substr(0, g() % (seed.size() + 1));
            size_t extra = g() % 5;
            for (size_t i = 0; i < extra && s.size() < 16; ++i)
                s.push_back((g() & 1) ? '1' : '0');
            votes.push_back({signer++, StartVoteBody{1, ChainString::fromBits(s)}});
        }
        if (prefOfSc(votes).str() != bruteMajority(prefs)) {
            pass = false;
            note = "anchor mismatch at iteration " + std::to_string(iter);
        }
    }

    if (pass) {
        ProtocolParams p;
        World w(404, p);
        auto cert = std::make_shared<StartCert>();
        cert->e = 1;
        cert->pref = ChainString::fromBits("0110");
        for (int height = 1; height <= 6 && pass; ++height) {
            for (int mask = 0; mask < (1 << height) && pass; ++mask) {
                std::vector<SBlockPtr> chain;
                std::string parent = World::chainToken({});
                std::vector<SBlockPtr> want_red;
                for (int h = 1; h <= height; ++h) {
                    bool dummy = (mask >> (h - 1)) & 1;
                    SBlockPtr b = dummy ? w.dummyBlock(1, h)
                                        : w.makeSimplexBlock(1, h, parent,
                                                             "t" + std::to_string(h),
                                                             StartCertPtr(cert));
                    chain.push_back(b);
                    parent = World::chainToken(chain);
                    if (!dummy) want_red.push_back(b);
                }
                auto red = reduceChain(chain);
                if (red != want_red) { pass = false; note = "reduction mismatch"; }
                for (unsigned mu = 1; mu <= red.size() && pass; ++mu) {
                    ChainString want = cert->pref;
                    for (unsigned i = 0; i < mu; ++i) want = want.concat(want_red[i]->hash);
                    if (finOf(chain, mu) != want) { pass = false; note = "handover mismatch"; }
                }
            }
        }
    }
    if (pass) note = "10000 anchor multisets + all chain patterns to height 6";
    report(7, "oracle equivalence", pass, note);
}

// ---------------------------------------------------------------- criterion 8

void c8_determinism() {
    bool pass = true;
    std::string note;
    std::vector<Scenario> scenarios;
    {
        Scenario a; a.name = "d-happy"; a.horizon = 300; a.seed = 11; scenarios.push_back(a);
        Scenario b = liarScenario(12); b.name = "d-liar"; b.horizon = 500; scenarios.push_back(b);
        Scenario c; c.name = "d-crash"; c.horizon = 300; c.seed = 13; c.params.f = 4;
        c.byz_kind = "crash"; c.byz_ids = {21, 22, 23, 24}; scenarios.push_back(c);
        Scenario d; d.name = "d-equiv"; d.horizon = 500; d.seed = 14; d.params.f = 4;
        d.params.gamma = 50; d.byz_kind = "equivocating_leader"; d.byz_ids = {1, 2, 3, 4};
        scenarios.push_back(d);
        Scenario e; e.name = "d-async"; e.horizon = 600; e.seed = 15; e.gst = 250;
        e.max_delay_pre_gst = true; e.params.f = 4; e.byz_kind = "split_liar";
        e.byz_ids = {21, 22, 23, 24}; scenarios.push_back(e);
    }
    for (const auto& sc : scenarios) {
        RunResult first = runScenario(sc, true);
        if (first.trace.empty()) { pass = false; note = sc.name + ": empty trace"; break; }
        for (int rep = 0; rep < 2; ++rep) {
            RunResult again = runScenario(sc, true);
            if (again.trace != first.trace) {
                pass = false;
                note = sc.name + ": trace differs on replay " + std::to_string(rep + 2);
            }
        }
        if (!pass) break;
    }
    if (pass) note = "5 scenarios x 3 runs byte-identical";
    report(8, "deterministic replay", pass, note);
}

// ---------------------------------------------------------------- criterion 9

void c9_spam_containment() {
    bool pass = true;
    std::string note;
    for (int n = 6; n <= 50 && pass; ++n) {
        int f = (n + 4) / 5 - 1;
        ProtocolParams p;
        p.n = n;
        p.f = f;
        World w(n, p);
        CertAccumulator acc(p, &w);
        ChainString sigma = ChainString::fromBits("010");
        // f distinct forged signers, each repeated, on two statements
        for (int rep = 0; rep < 3; ++rep) {
            for (int s = 0; s < f; ++s) {
                if (acc.addStuck({n - 1 - s, StuckBody{0, sigma}}) ||
                    acc.addStuck({n - 1 - s, StuckBody{0, ChainString()}})) {
                    pass = false;
                    note = "EC formed from " + std::to_string(f) + " signers at n=" +
                           std::to_string(n);
                }
            }
        }
        // sanity: one more distinct signer crosses the threshold
        if (pass && f + 1 >= p.ecThreshold()) {
            if (!acc.addStuck({0, StuckBody{0, sigma}})) {
                pass = false;
                note = "threshold unreachable at n=" + std::to_string(n);
            }
        }
    }
    if (pass) note = "n in [6,50], f = ceil(n/5) - 1 exhaustive";
    report(9, "forged-stuck containment", pass, note);
}

}  // namespace

int main() {
    c1_exact_arithmetic();
    c2_happy_path();
    c3_epoch_change();
    c4_progress_shape();
    c5_equivocation();
    c6_asynchrony();
    c7_oracle_equivalence();
    c8_determinism();
    c9_spam_containment();
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
