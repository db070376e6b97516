#include "pmc/detectors.hpp"

#include <algorithm>
#include <sstream>

namespace pmc {

void DetectorSet::add(const BitVec& mask) {
    if (mask.none()) throw UsageError("DetectorSet: empty detector");
    BitVec m = mask;
    m.resize(n_meas);
    Detector d;
    for (auto i : m.ones()) d.members.push_back(i);
    detectors.push_back(std::move(d));
    masks.push_back(std::move(m));
}

LogicalObservable make_logical(std::string name, const PauliString& obs, const BitVec& tag, std::size_t n_meas) {
    LogicalObservable l{std::move(name), obs, {}, BitVec(n_meas)};
    for (auto i : tag.ones())
        if (i < n_meas) {
            l.members.push_back(i);
            l.mask.set(i);
        }
    return l;
}

void reduce_weight(DetectorSet& d) {
    std::vector<std::size_t> order(d.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return d.detectors[a].latest() < d.detectors[b].latest(); });
    for (std::size_t a = 0; a < order.size(); ++a) {
        BitVec& m = d.masks[order[a]];
        std::size_t latest = d.detectors[order[a]].latest();
        bool improved = true;
        while (improved) {
            improved = false;
            std::size_t w = m.count();
            for (std::size_t b = 0; b < a; ++b) {
                const BitVec& e = d.masks[order[b]];
                if (d.detectors[order[b]].latest() >= latest) continue;
                std::size_t w2 = (m ^ e).count();
                if (w2 < w) {
                    m ^= e;
                    w = w2;
                    improved = true;
                }
            }
        }
        d.detectors[order[a]].members.clear();
        for (auto i : m.ones()) d.detectors[order[a]].members.push_back(i);
    }
}

DetectorSet detectors_from_relations(const TrackResult& r, bool reduce) {
    DetectorSet d;
    d.n_meas = r.n_meas;
    d.basis_note = reduce ? "tracker relations, greedy weight reduction" : "tracker relations";
    for (auto& rel : r.relations) {
        bool virt = false;
        for (std::size_t j = 0; j < r.n_virtual; ++j) virt |= rel.get(r.n_meas + j);
        if (!virt) d.add(rel);
    }
    if (reduce) reduce_weight(d);
    return d;
}

DetectorSet find_detectors(const Circuit& c, const TrackSetup& setup, bool reduce) {
    return detectors_from_relations(track(c, setup), reduce);
}

BitVec syndrome_of(const DetectorSet& d, const BitVec& flips) {
    BitVec s(d.size());
    for (std::size_t k = 0; k < d.size(); ++k)
        if (flips.dot(d.masks[k])) s.set(k);
    return s;
}

BitVec syndrome_of(const Circuit& c, const DetectorSet& d, const FaultConfig& f, const std::vector<FrameRule>& rules) {
    return syndrome_of(d, propagate(c, f, rules).flips);
}

std::uint64_t logical_bits(const LogicalActionMap& map, const Propagation& p) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < map.size(); ++k) {
        auto& o = map.observables[k];
        bool b = p.flips.dot(o.mask);
        if (o.obs.n() == p.residual.n()) b ^= p.residual.anticommutes(o.obs);
        if (b) out |= std::uint64_t{1} << k;
    }
    return out;
}

BitVec logical_action_of(const Circuit& c, const LogicalActionMap& map, const FaultConfig& f,
                         const std::vector<FrameRule>& rules) {
    auto bits = logical_bits(map, propagate(c, f, rules));
    BitVec v(map.size());
    for (std::size_t k = 0; k < map.size(); ++k)
        if ((bits >> k) & 1) v.set(k);
    return v;
}

std::string dump_detectors(const DetectorSet& d) {
    std::ostringstream out;
    for (auto& det : d.detectors) {
        for (std::size_t k = 0; k < det.members.size(); ++k) out << (k ? " " : "") << det.members[k];
        out << "\n";
    }
    return out.str();
}

}  // namespace pmc
