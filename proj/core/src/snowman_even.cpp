#include "frosty/snowman_even.hpp"

#include <algorithm>
#include <cassert>

namespace frosty {

namespace {

// Inserts sigma into a set of mutually incomparable maximal strings.
void addMaximal(std::vector<ChainString>& marks, const ChainString& sigma) {
    for (auto& m : marks) {
        if (sigma.isPrefixOf(m)) return;
        if (m.isPrefixOf(sigma)) {
            m = sigma;
            return;
        }
    }
    marks.push_back(sigma);
}

// acc := maximal common prefixes of (acc x marks).
void meetInto(std::vector<ChainString>& acc, const std::vector<ChainString>& marks) {
    std::vector<ChainString> out;
    for (const auto& a : acc) {
        for (const auto& m : marks) {
            addMaximal(out, a.prefix(a.lcp(m)));
        }
    }
    acc.swap(out);
}

size_t maxLen(const std::vector<ChainString>& v) {
    size_t best = 0;
    for (const auto& c : v) best = std::max(best, c.size());
    return best;
}

}  // namespace

SnowmanEven::SnowmanEven(const ProtocolParams& p, World* w, BlockStore* store, int self,
                         Rng* rng)
    : p_(p), world_(w), store_(store), self_(self), rng_(rng) {
    final_ = store_->genesis()->cum;
    pref_ = final_;
}

void SnowmanEven::initEpoch(Epoch e, int t) {
    if (ready_ && e_ == e) {
        world_->trace.event(t, self_, "init_even_repeat", "e=" + std::to_string(e));
        return;
    }
    e_ = e;
    ready_ = true;
    s_ = 0;
    newround_ = true;
    low_water_ = 0;
    last_frozen_ = -1;
    pref_ = final_;
    rounds_.clear();
    rounds_.emplace_back();
    pref_hist_.clear();
    val_.clear();
    locks_.clear();
    locked_frontier_ = 0;
    stored_cands_.clear();
    windows_.clear();
    frozen_pairs_.clear();
    answered_.clear();
    req_queue_.clear();
    lastfinalized_ = 0;
    last_stuck_round_ = -1;
    last_mint_parent_.clear();
    final_version_++;
    res_ = resolvePrefix(final_, *store_);
    world_->trace.event(t, self_, "init_even",
                        "e=" + std::to_string(e) + " final_len=" + std::to_string(final_.size()));
}

void SnowmanEven::onSampleResponse(int t, int from, const SampleResponse& r) {
    (void)t;
    if (!ready_ || r.e != e_) return;
    if (r.s < 0 || r.s > s_) return;
    Round& rd = rounds_[r.s];
    if (rd.closed || rd.start < 0) return;
    rd.pending.emplace_back(from, r);
}

void SnowmanEven::onSampleRequest(int t, int from, const SampleRequest& r) {
    (void)t;
    if (!ready_ || r.e != e_) return;
    if (!answered_.insert({from, r.s}).second) return;
    req_queue_.emplace_back(from, r.s);
}

void SnowmanEven::tick(int t, std::vector<Envelope>& out) {
    if (!ready_) return;
    if (newround_) beginRound(t, out);
    ingestWindow(t);
    updateLocks(t);
    rebuildPref(t);
    maybeMint(t);
    advanceRound(t);
    finalizeCheck(t);
    stuckCheck(t, out);
    answerRequests(t, out);
}

void SnowmanEven::beginRound(int t, std::vector<Envelope>& out) {
    Round& r = rounds_[s_];
    r.start = t;
    r.sample.resize(p_.k);
    r.rpref.assign(p_.k, {});
    r.rlock.assign(p_.k, {});
    r.rfin.assign(p_.k, {});
    r.defined.assign(p_.k, 0);
    r.supp_final.assign(p_.k, 0);
    r.final_version = final_version_;
    auto req = wrap(SampleRequest{s_, e_});
    for (unsigned j = 0; j < p_.k; ++j) {
        r.sample[j] = (int)rng_->below((uint64_t)p_.n);
        out.push_back({self_, r.sample[j], req});
    }
    newround_ = false;
    world_->metrics.round_starts[self_].push_back({e_, s_, t});
}

void SnowmanEven::ingestWindow(int t) {
    for (int s = low_water_; s <= s_; ++s) {
        Round& r = rounds_[s];
        if (r.start < 0) break;
        if (!r.closed && r.start < t - 2 * p_.delta) {
            freezeRound(s);
            continue;
        }
        if (r.closed || t <= r.start) continue;
        for (auto& [from, resp] : r.pending) ingestOne(t, r, from, resp);
        r.pending.clear();
        if (r.dirty) {
            refreshSummaries(r);
            // suppfin: every sigma <= pref with alpha2 rlock support
            if (r.tau_rlock.defined) {
                size_t m = pref_.lcp(r.tau_rlock.value);
                addSuppMark(r, pref_.prefix(m));
            }
        }
    }
    while (low_water_ <= s_ && rounds_[low_water_].closed) low_water_++;
}

void SnowmanEven::ingestOne(int t, Round& r, int from, const SampleResponse& resp) {
    (void)t;
    if (!resp.tip) return;
    const ChainString& hb = resp.tip->cum;
    if (!resp.lock.isPrefixOf(hb) || !resp.fin.isPrefixOf(hb)) return;  // malformed
    bool any = false;
    for (unsigned j = 0; j < p_.k; ++j) {
        if (r.sample[j] == from && !r.defined[j]) {
            any = true;
            break;
        }
    }
    if (!any) return;
    store_->insertChain(resp.tip);
    uint8_t sf = final_.isPrefixOf(hb) ? 1 : 0;
    for (unsigned j = 0; j < p_.k; ++j) {
        if (r.sample[j] != from || r.defined[j]) continue;
        r.rpref[j] = hb;
        r.rlock[j] = resp.lock;
        r.rfin[j] = resp.fin;
        r.defined[j] = 1;
        r.supp_final[j] = sf;
        r.defined_count++;
    }
    r.dirty = true;
}

void SnowmanEven::refreshSummaries(Round& r) {
    std::vector<const ChainString*> vp, vl, vf;
    vp.reserve(r.defined_count);
    vl.reserve(r.defined_count);
    vf.reserve(r.defined_count);
    for (unsigned j = 0; j < p_.k; ++j) {
        if (!r.defined[j]) continue;
        vp.push_back(&r.rpref[j]);
        vl.push_back(&r.rlock[j]);
        vf.push_back(&r.rfin[j]);
    }
    r.tau_rpref = majorityPrefix(vp, p_.alpha2);
    r.tau_rlock = majorityPrefix(vl, p_.alpha2);
    r.psi_rfin = majorityPrefix(vf, p_.alpha3);
    r.dirty = false;
}

void SnowmanEven::refreshSuppFinal(Round& r) {
    if (r.final_version == final_version_) return;
    for (unsigned j = 0; j < p_.k; ++j) {
        if (r.defined[j]) r.supp_final[j] = final_.isPrefixOf(r.rpref[j]) ? 1 : 0;
    }
    r.final_version = final_version_;
}

void SnowmanEven::addSuppMark(Round& r, const ChainString& sigma) {
    addMaximal(r.supp_marks, sigma);
}

void SnowmanEven::freezeRound(int s_idx) {
    Round& r = rounds_[s_idx];
    if (r.dirty) refreshSummaries(r);
    r.closed = true;
    r.pending.clear();
    last_frozen_ = std::max(last_frozen_, s_idx);

    // rule (i) window folds: this round serves windows (s_idx - beta, s_idx]
    int w0 = std::max(0, s_idx - (int)p_.beta + 1);
    for (int w = w0; w <= s_idx; ++w) {
        if (w == s_idx) {
            if (r.supp_marks.empty()) continue;  // window dead from birth
            WindowFold wf;
            wf.meet = r.supp_marks;
            wf.folded_through = s_idx;
            wf.seeded = true;
            windows_.emplace(w, std::move(wf));
            continue;
        }
        auto it = windows_.find(w);
        if (it == windows_.end()) continue;  // dead or pruned
        meetInto(it->second.meet, r.supp_marks);
        it->second.folded_through = s_idx;
        if (it->second.meet.empty() || maxLen(it->second.meet) <= final_.size())
            windows_.erase(it);
    }

    // rule (ii) pair cache: (s_idx-1, s_idx) is now fully frozen
    if (s_idx >= 1) {
        const Round& prev = rounds_[s_idx - 1];
        if (prev.psi_rfin.defined && r.psi_rfin.defined) {
            size_t c = prev.psi_rfin.value.lcp(r.psi_rfin.value);
            if (c > final_.size())
                frozen_pairs_.emplace(s_idx - 1, prev.psi_rfin.value.prefix(c));
        }
    }

    // release per-slot storage; summaries, marks and dec survive
    r.sample.clear();
    r.sample.shrink_to_fit();
    r.rpref.clear();
    r.rpref.shrink_to_fit();
    r.rlock.clear();
    r.rlock.shrink_to_fit();
    r.rfin.clear();
    r.rfin.shrink_to_fit();
    r.defined.clear();
    r.defined.shrink_to_fit();
    r.supp_final.clear();
    r.supp_final.shrink_to_fit();
    r.dec.clear();
}

bool SnowmanEven::continuityHolds(const ChainString& sigma, int s_prime) const {
    for (int s = s_prime; s < s_; ++s) {
        if (!sigma.isPrefixOf(pref_hist_[s])) return false;
    }
    return true;
}

void SnowmanEven::tryLock(const ChainString& sigma, int s_prime, int t, bool check_continuity) {
    LockEnt& ent = locks_[sigma];
    if (ent.locked) return;
    if (s_prime < ent.lockbound) return;
    if (check_continuity && !continuityHolds(sigma, s_prime)) return;
    ent.locked = true;
    ent.lockbound = s_prime + 1;
    ent.locktime = t;
    if (sigma.size() == locked_frontier_ + 1 && sigma.isPrefixOf(pref_)) {
        locked_frontier_++;
        while (locked_frontier_ < pref_.size()) {
            auto it = locks_.find(pref_.prefix(locked_frontier_ + 1));
            if (it == locks_.end() || !it->second.locked) break;
            locked_frontier_++;
        }
    }
}

void SnowmanEven::updateLocks(int t) {
    for (int s = low_water_; s <= s_; ++s) {
        Round& r = rounds_[s];
        if (r.start < 0) break;
        if (r.closed || !r.tau_rpref.defined) continue;
        const ChainString& tau = r.tau_rpref.value;
        if (tau.size() <= r.tau_seen_len) continue;
        size_t agree = tau.lcp(pref_);
        for (size_t l = r.tau_seen_len + 1; l <= tau.size(); ++l) {
            if (l <= agree && l <= locked_frontier_) continue;  // already locked on spine
            ChainString sigma = (l <= agree) ? pref_.prefix(l) : tau.prefix(l);
            if (l <= agree) {
                tryLock(sigma, s, t, true);
            } else if (continuityHolds(sigma, s)) {
                // support exists but sigma is off the current preference;
                // keep as a candidate until pref returns or history breaks it
                stored_cands_.emplace(sigma, s);
            }
        }
        r.tau_seen_len = tau.size();
    }
    // candidates whose sigma has come back onto the preferred spine
    for (auto it = stored_cands_.begin(); it != stored_cands_.end();) {
        const ChainString& sigma = it->first;
        if (sigma.size() <= pref_.size() && sigma.isPrefixOf(pref_)) {
            tryLock(sigma, it->second, t, false);  // continuity kept by round-end pruning
            it = stored_cands_.erase(it);
        } else {
            ++it;
        }
    }
}

void SnowmanEven::rebuildPref(int t) {
    res_ = resolvePrefix(final_, *store_);
    BlockPtr cur = res_.last;
    size_t cum_len = res_.reduct_len;
    ChainString pref = final_;
    size_t pos = final_.size();
    walk_hit_leaf_ = false;
    all_dec_ = true;

    Round& rd = rounds_[s_];
    refreshSuppFinal(rd);
    std::vector<unsigned> active;
    for (unsigned j = 0; j < p_.k; ++j) {
        if (rd.defined[j] && rd.supp_final[j]) active.push_back(j);
    }
    int d = rd.defined_count;

    // children of cur consistent with pref's tail beyond cum_len
    auto filterChildren = [&](std::vector<BlockPtr>& e) {
        e.clear();
        if (pos - cum_len > p_.hash_bits) return;  // a gap block is missing
        size_t tail = pos - cum_len;
        for (const auto& c : store_->childrenOf(cur->id)) {
            if (tail == 0 || std::memcmp(c->hash.data(), pref.data() + cum_len, tail) == 0)
                e.push_back(c);
        }
    };

    std::vector<BlockPtr> e;
    filterChildren(e);
    bool dec_broken = false;

    while (true) {
        if (e.empty()) {
            walk_hit_leaf_ = true;
            break;
        }
        size_t off = pos - cum_len;  // bit offset inside the children's hashes
        auto vit = val_.find(pref);
        char v;
        if (vit == val_.end()) {
            v = e.front()->hash.bit(off);  // first block in E by arrival order
            val_.emplace(pref, v);
        } else {
            v = vit->second;
        }
        char opp = v == '0' ? '1' : '0';

        // counts over this round's responses at bit `pos`
        int cnt[2] = {0, 0};       // rpref extending pref*bit
        int cnt_lock[2] = {0, 0};  // rlock extending pref*bit
        for (unsigned j : active) {
            const ChainString& rp = rd.rpref[j];
            if (rp.size() <= pos) continue;
            int b = rp.bit(pos) - '0';
            cnt[b]++;
            if (rd.rlock[j].size() >= pos + 1) cnt_lock[b]++;
        }

        auto pickChild = [&](char bit) -> BlockPtr {
            for (const auto& c : e) {
                if (c->hash.bit(off) == bit) return c;
            }
            return nullptr;
        };

        auto sigmaFor = [&](char bit) -> ChainString {
            BlockPtr c = pickChild(bit);
            if (c) return c->cum.prefix(pos + 1);
            return pref.appendBit(bit);
        };

        int oi = opp - '0';
        auto lkit = locks_.find(sigmaFor(v));
        bool locked = lkit != locks_.end() && lkit->second.locked;
        if (!locked) {
            if (d - cnt[oi] >= (int)(p_.k - p_.alpha1 + 1)) rd.dec.insert(sigmaFor(v));
            if (cnt[oi] >= (int)p_.alpha1) {
                std::swap(v, opp);
                oi = opp - '0';
                val_[pref] = v;
                rd.dec.insert(sigmaFor(v));
            }
        } else {
            if (d - cnt_lock[oi] >= (int)(p_.k - p_.alpha2 + 1)) rd.dec.insert(sigmaFor(v));
            if (cnt_lock[oi] >= (int)p_.alpha2) {
                std::swap(v, opp);
                oi = opp - '0';
                val_[pref] = v;
                rd.dec.insert(sigmaFor(v));
                // unlock everything strictly extending the flip point
                for (auto& [sig, ent] : locks_) {
                    if (ent.locked && pref.size() < sig.size() && pref.isPrefixOf(sig)) {
                        ent.locked = false;
                        ent.locktime = -1;
                    }
                }
                if (locked_frontier_ > pref.size()) locked_frontier_ = pref.size();
            }
        }

        // pref := pref * val
        BlockPtr c = pickChild(v);
        ChainString next = c ? c->cum.prefix(pos + 1) : pref.appendBit(v);
        if (!rd.dec.count(next)) dec_broken = true;
        pref = next;
        pos++;
        if (!c) {
            walk_hit_leaf_ = true;
            break;
        }
        if (pos - cum_len == p_.hash_bits) {
            cur = c;
            cum_len += p_.hash_bits;
            pref = cur->cum;  // same content, canonical storage
        }
        // winnow the active set by the chosen bit
        std::vector<unsigned> nxt;
        nxt.reserve(active.size());
        for (unsigned j : active) {
            const ChainString& rp = rd.rpref[j];
            if (rp.size() > pos - 1 && rp.bit(pos - 1) == v) nxt.push_back(j);
        }
        active.swap(nxt);
        filterChildren(e);
    }

    all_dec_ = !dec_broken;
    size_t rho = pref.lcp(pref_);
    if (locked_frontier_ > rho) locked_frontier_ = rho;
    pref_ = pref;
    res_ = {cur, cum_len};
    while (locked_frontier_ < pref_.size()) {
        auto it = locks_.find(pref_.prefix(locked_frontier_ + 1));
        if (it == locks_.end() || !it->second.locked) break;
        locked_frontier_++;
    }
    (void)t;
}

void SnowmanEven::maybeMint(int t) {
    (void)t;
    if (!mint_enabled || !walk_hit_leaf_) return;
    if (pref_ != final_) return;                  // propose only at the finalized frontier
    if (pref_.size() != res_.reduct_len) return;  // cannot extend a partial tail
    if (last_mint_parent_ == res_.last->id) return;
    BlockPtr b = world_->blocks.mintChild(res_.last, "tx:" + std::to_string(self_), self_);
    store_->insert(b);
    last_mint_parent_ = res_.last->id;
}

void SnowmanEven::advanceRound(int t) {
    Round& r = rounds_[s_];
    if (r.start < 0) return;
    // timeout, or every sigma with final < sigma <= pref decided (vacuously
    // true when pref == final)
    bool timeout = r.start <= t - 2 * p_.delta;
    if (!timeout && !all_dec_) return;
    pref_hist_.push_back(pref_);
    assert((int)pref_hist_.size() == s_ + 1);
    for (auto it = stored_cands_.begin(); it != stored_cands_.end();) {
        if (!it->first.isPrefixOf(pref_)) it = stored_cands_.erase(it);
        else ++it;
    }
    s_++;
    rounds_.emplace_back();
    newround_ = true;
}

void SnowmanEven::finalizeCheck(int t) {
    size_t best_len = final_.size();
    int best_s = -1;

    auto consider = [&](const ChainString& cand, int s_prime) {
        if (cand.size() <= best_len) return;
        size_t l = cand.lcp(pref_);  // the qualifying sigma must extend into pref
        if (l > best_len) {
            best_len = l;
            best_s = s_prime;
        }
    };

    // rule (i), windows with at least one frozen round
    for (auto it = windows_.begin(); it != windows_.end();) {
        int w = it->first;
        WindowFold& wf = it->second;
        int end = w + (int)p_.beta - 1;
        if (maxLen(wf.meet) <= final_.size()) {
            if (wf.folded_through >= end) {
                it = windows_.erase(it);
                continue;
            }
            ++it;
            continue;
        }
        if (end <= s_) {
            bool ok = true;
            std::vector<ChainString> acc = wf.meet;
            for (int r = wf.folded_through + 1; r <= end && ok; ++r) {
                if (rounds_[r].supp_marks.empty()) ok = false;
                else meetInto(acc, rounds_[r].supp_marks);
            }
            if (ok) {
                for (const auto& c : acc) consider(c, w);
            }
        }
        ++it;
    }
    // rule (i), windows made only of still-active rounds
    for (int w = std::max(0, last_frozen_ + 1); w + (int)p_.beta - 1 <= s_; ++w) {
        bool ok = true;
        std::vector<ChainString> acc;
        for (int r = w; r < w + (int)p_.beta && ok; ++r) {
            if (rounds_[r].supp_marks.empty()) {
                ok = false;
            } else if (r == w) {
                acc = rounds_[r].supp_marks;
            } else {
                meetInto(acc, rounds_[r].supp_marks);
            }
        }
        if (!ok) continue;
        for (const auto& c : acc) consider(c, w);
    }

    // rule (ii), frozen pairs
    for (auto it = frozen_pairs_.begin(); it != frozen_pairs_.end();) {
        if (it->second.size() <= final_.size()) {
            it = frozen_pairs_.erase(it);
            continue;
        }
        consider(it->second, it->first);
        ++it;
    }
    // rule (ii), pairs touching active rounds
    for (int s = std::max(0, last_frozen_); s + 1 <= s_; ++s) {
        const Round& a = rounds_[s];
        const Round& b = rounds_[s + 1];
        if (!a.psi_rfin.defined || !b.psi_rfin.defined) continue;
        size_t c = a.psi_rfin.value.lcp(b.psi_rfin.value);
        if (c > final_.size()) consider(a.psi_rfin.value.prefix(c), s);
    }

    if (best_s >= 0 && best_len > final_.size()) {
        setFinalInternal(t, pref_.prefix(best_len), best_s);
    }
}

void SnowmanEven::setFinalInternal(int t, const ChainString& sigma, int s_prime) {
    final_ = sigma;
    lastfinalized_ = s_prime;
    final_version_++;
    world_->metrics.finals[self_].push_back({t, final_});
    std::string tail = final_.str().substr(final_.size() > 32 ? final_.size() - 32 : 0);
    world_->trace.event(t, self_, "final",
                        "e=" + std::to_string(e_) + " len=" + std::to_string(final_.size()) +
                            " tail=" + tail);
}

void SnowmanEven::stuckCheck(int t, std::vector<Envelope>& out) {
    if (s_ - lastfinalized_ < (int)p_.gamma) return;
    if (last_stuck_round_ == s_) return;
    last_stuck_round_ = s_;
    Signed<StuckBody> v{self_, {e_, final_}};
    world_->recordSigned(self_, digest(v.body));
    out.push_back({self_, -1, wrap(StuckMsg{v})});
    world_->metrics.stuck_sent.push_back({t, self_, e_});
    world_->trace.event(t, self_, "stuck", "e=" + std::to_string(e_) + " s=" + std::to_string(s_));
}

void SnowmanEven::answerRequests(int t, std::vector<Envelope>& out) {
    if (req_queue_.empty()) return;
    // longest prefix of pref locked for at least 4*delta
    ChainString lockrep = final_;
    for (auto it = locks_.rbegin(); it != locks_.rend(); ++it) {
        if (it->first.size() > pref_.size()) continue;
        if (it->first.size() <= lockrep.size()) break;
        if (!it->second.locked || t - it->second.locktime < 4 * p_.delta) continue;
        if (it->first.isPrefixOf(pref_)) {
            lockrep = it->first;
            break;
        }
    }
    // crop to whole stored blocks so sigma, fin <= H_B holds at the receiver
    size_t rl = res_.reduct_len;
    ChainString lock_out = lockrep.prefix(std::min(lockrep.size(), rl));
    ChainString fin_out = final_.prefix(std::min(final_.size(), rl));
    auto payload = [&](int s) { return wrap(SampleResponse{s, e_, res_.last, lock_out, fin_out}); };
    for (auto& [from, s] : req_queue_) out.push_back({self_, from, payload(s)});
    req_queue_.clear();
}

}  // namespace frosty
