#include "pmc/decode.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace pmc {

namespace {

struct TableBuilder {
    const ErrorModel& dem;
    LookupTable& t;
    std::size_t budget;
    bool accepted_only;
    std::size_t visited = 0;
    std::unordered_set<BitVec, BitVecHash> reported;
    std::vector<std::size_t> stack;

    void insert(const BitVec& s, std::uint64_t logical) {
        if (++visited > budget) throw ResourceError("lookup table: enumeration budget exceeded");
        auto [it, fresh] = t.entries.try_emplace(s, LookupEntry{logical, stack});
        if (fresh || it->second.logical == logical) return;
        if (reported.insert(s).second) t.collisions.push_back({s, it->second.logical, logical, it->second.rep, stack});
    }

    // configs of exactly `left` more faults on locations after `min_loc`
    void recurse(int left, std::size_t min_loc, const BitVec& s, std::uint64_t logical) {
        for (std::size_t l = min_loc; l < dem.n_locations(); ++l)
            for (std::size_t v = dem.first[l]; v < dem.first[l + 1]; ++v) {
                if (accepted_only && dem.pre[v].any()) continue;
                BitVec s2 = s ^ dem.syndrome[v];
                stack.push_back(v);
                if (left == 1)
                    insert(s2, logical ^ dem.logical[v]);
                else
                    recurse(left - 1, l + 1, s2, logical ^ dem.logical[v]);
                stack.pop_back();
            }
    }
};

}  // namespace

LookupTable build_lookup(const ErrorModel& dem, int degree, std::size_t budget, bool accepted_only) {
    if (degree < 1) throw UsageError("build_lookup: degree must be at least 1");
    LookupTable t;
    t.degree = degree;
    TableBuilder b{dem, t, budget, accepted_only};
    b.insert(BitVec(dem.n_detectors), 0);
    for (int w = 1; w <= degree; ++w) b.recurse(w, 0, BitVec(dem.n_detectors), 0);
    return t;
}

LookupTable build_lookup(const Circuit& c, const DetectorSet& d, const LogicalActionMap& map, int degree,
                         const NoiseModel& noise, const std::vector<FrameRule>& rules) {
    return build_lookup(build_error_model(c, noise, d, DetectorSet{}, map, rules), degree);
}

DistanceResult fault_distance(const ErrorModel& dem, int max_degree, std::size_t budget) {
    if (max_degree < 1) throw UsageError("fault_distance: max_degree must be at least 1");
    DistanceResult res;
    const std::size_t nv = dem.n_variants();
    for (std::size_t v = 0; v < nv; ++v)
        if (dem.syndrome[v].none() && dem.logical[v]) {
            res.d_f = 1;
            res.searched = 1;
            res.witness = {v};
            return res;
        }
    res.searched = 1;
    std::unordered_map<BitVec, std::vector<std::size_t>, BitVecHash> bucket;
    for (std::size_t v = 0; v < nv; ++v) bucket[dem.syndrome[v]].push_back(v);
    std::size_t visited = 0;
    auto charge = [&](std::size_t k) {
        visited += k;
        if (visited > budget)
            throw ResourceError("fault_distance: budget exceeded, d_f > " + std::to_string(res.searched));
    };
    if (max_degree >= 2) {
        for (auto& [s, vs] : bucket) {
            charge(vs.size() * vs.size());
            for (std::size_t i = 0; i < vs.size(); ++i)
                for (std::size_t j = i + 1; j < vs.size(); ++j) {
                    std::size_t a = vs[i], b = vs[j];
                    if (dem.loc_of[a] != dem.loc_of[b] && dem.logical[a] != dem.logical[b]) {
                        res.d_f = 2;
                        res.searched = 2;
                        res.witness = {a, b};
                        return res;
                    }
                }
        }
        res.searched = 2;
    }
    // degree k >= 3: (k-1)-subsets on increasing locations plus a lookup
    for (int k = 3; k <= max_degree; ++k) {
        std::vector<std::size_t> stack;
        bool found = false;
        std::function<void(int, std::size_t, const BitVec&, std::uint64_t)> rec =
            [&](int left, std::size_t min_loc, const BitVec& s, std::uint64_t lg) {
                for (std::size_t l = min_loc; l < dem.n_locations() && !found; ++l)
                    for (std::size_t v = dem.first[l]; v < dem.first[l + 1] && !found; ++v) {
                        BitVec s2 = s ^ dem.syndrome[v];
                        std::uint64_t lg2 = lg ^ dem.logical[v];
                        stack.push_back(v);
                        if (left > 1) {
                            rec(left - 1, l + 1, s2, lg2);
                        } else {
                            charge(1);
                            auto it = bucket.find(s2);
                            if (it != bucket.end())
                                for (auto c : it->second) {
                                    std::size_t lc = dem.loc_of[c];
                                    if (lc <= l) continue;  // last fault on the latest location
                                    if ((lg2 ^ dem.logical[c]) == 0) continue;
                                    res.witness = stack;
                                    res.witness.push_back(c);
                                    found = true;
                                    break;
                                }
                        }
                        stack.pop_back();
                    }
            };
        rec(k - 1, 0, BitVec(dem.n_detectors), 0);
        if (found) {
            res.d_f = k;
            res.searched = k;
            return res;
        }
        res.searched = k;
    }
    return res;
}

DecodeOutcome decode_with_postselection(const LookupTable& table, const BitVec& syndrome) {
    if (auto* e = table.find(syndrome)) return {Status::corrected, e->logical};
    return {Status::rejected, 0};
}

bool majority_vote(const std::vector<bool>& bits) {
    if (bits.size() % 2 == 0) throw UsageError("majority_vote: need an odd number of bits");
    std::size_t ones = std::count(bits.begin(), bits.end(), true);
    return 2 * ones > bits.size();
}

std::string export_table(const LookupTable& t) {
    std::vector<std::pair<std::string, std::uint64_t>> rows;
    for (auto& [s, e] : t.entries) rows.emplace_back(s.hex(), e.logical);
    std::sort(rows.begin(), rows.end());
    std::ostringstream out;
    out << std::hex;
    for (auto& [s, l] : rows) out << "S " << s << " L " << l << "\n";
    out << "# collisions\n";
    for (auto& c : t.collisions) out << "S " << c.syndrome.hex() << " L " << c.logical_a << " L " << c.logical_b << "\n";
    return out.str();
}

WindowDecoder::WindowDecoder(const ErrorModel& dem, const std::vector<std::size_t>& det_round, std::size_t n_rounds,
                             WindowPlan plan)
    : dem_(&dem), n_rounds_(n_rounds), plan_(plan) {
    if (plan.length < 3) throw UsageError("window length must be at least 3");
    if (!std::is_sorted(det_round.begin(), det_round.end())) throw UsageError("detectors must be sorted by round");
    start_.assign(n_rounds + 1, det_round.size());
    for (std::size_t r = 0; r <= n_rounds; ++r)
        start_[r] = std::size_t(std::lower_bound(det_round.begin(), det_round.end(), r) - det_round.begin());
    long_.resize(n_rounds);
    short_.resize(n_rounds);
    const std::size_t L = std::size_t(plan.length);
    for (std::size_t v = 0; v < dem.n_variants(); ++v) {
        std::size_t r = dem.round[dem.loc_of[v]];
        if (r >= n_rounds) throw UsageError("window decoder: fault round out of range");
        BitVec kl = key(dem.syndrome[v], r, r + L - 2);
        BitVec ks = key(dem.syndrome[v], r, r + L - 3);
        if (kl.any()) long_[r].try_emplace(kl, v);
        if (ks.any()) short_[r].try_emplace(ks, v);
    }
}

BitVec WindowDecoder::key(const BitVec& s, std::size_t lo, std::size_t hi) const {
    if (lo >= n_rounds_) return BitVec(0);
    hi = std::min(hi, n_rounds_ - 1);
    return s.slice(start_[lo], start_[hi + 1]);
}

WindowDecoder::Result WindowDecoder::decode(const BitVec& syndrome) const {
    Result r{syndrome, 0};
    const std::size_t L = std::size_t(plan_.length);
    auto commit = [&](std::size_t v) {
        r.residual ^= dem_->syndrome[v];
        r.correction ^= dem_->logical[v];
    };
    for (std::size_t i = 0; i < n_rounds_; ++i) {
        bool quiet = key(r.residual, i, i).none();
        if (quiet && i + 1 < n_rounds_) {
            BitVec k = key(r.residual, i + 1, i + L - 2);
            if (k.any() && short_[i + 1].count(k)) continue;  // wait for the next step
        }
        BitVec kl = key(r.residual, i, i + L - 2);
        if (kl.none()) continue;
        if (auto it = long_[i].find(kl); it != long_[i].end()) {
            commit(it->second);
            continue;
        }
        BitVec ks = key(r.residual, i, i + L - 3);
        if (ks.none()) continue;
        if (auto it = short_[i].find(ks); it != short_[i].end()) commit(it->second);
    }
    return r;
}

DecoderMode decoder_from_string(const std::string& s) {
    if (s == "ec") return DecoderMode::ec;
    if (s == "ec-postselect" || s == "ec+postselect") return DecoderMode::ec_postselect;
    throw UsageError("unknown decoder '" + s + "'");
}

std::string to_string(DecoderMode m) { return m == DecoderMode::ec ? "ec" : "ec-postselect"; }

ExperimentDecoder::ExperimentDecoder(const Experiment& e, const ErrorModel& dem) : e_(&e) {
    if (e.whole_lookup) table_ = build_lookup(dem, 1, 200'000'000, true);
    if (e.windowed) window_.emplace(dem, e.det_round, e.n_rounds);
}

ShotOutcome ExperimentDecoder::decode(const BitVec& syndrome, const BitVec& pre, std::uint64_t logical,
                                      DecoderMode mode) const {
    ShotOutcome o;
    if (pre.any()) {
        o.pre_rejected = true;
        return o;
    }
    std::uint64_t correction = 0;
    bool residual = syndrome.any();
    bool done = false;
    if (e_->whole_lookup) {
        if (auto* t = table_.find(syndrome)) {
            correction = t->logical;
            residual = false;
            done = true;
        }
    }
    if (!done && window_) {
        auto w = window_->decode(syndrome);
        correction = w.correction;
        residual = w.residual.any();
    }
    if (mode == DecoderMode::ec_postselect && residual) {
        o.post_rejected = true;
        return o;
    }
    o.failed = e_->failed(logical ^ correction);
    return o;
}

}  // namespace pmc
