#include "pmc/dem.hpp"

#include <algorithm>
#include <thread>

namespace pmc {

FaultConfig ErrorModel::config(const Circuit& c, const std::vector<std::size_t>& vs) const {
    FaultConfig f;
    for (auto v : vs) f.faults.push_back(fault(c, v));
    return f;
}

namespace {

std::vector<BitVec> incidence(const DetectorSet& d, std::size_t n_meas) {
    std::vector<BitVec> col(n_meas, BitVec(d.size()));
    for (std::size_t k = 0; k < d.size(); ++k)
        for (auto i : d.detectors[k].members) col[i].set(k);
    return col;
}

}  // namespace

ErrorModel build_error_model(const Circuit& c, const NoiseModel& m, const DetectorSet& d, const DetectorSet& pre,
                             const LogicalActionMap& map, const std::vector<FrameRule>& rules, int workers) {
    ErrorModel e;
    e.locations = fault_locations(c, m);
    e.n_detectors = d.size();
    e.first.push_back(0);
    for (std::size_t l = 0; l < e.locations.size(); ++l) {
        std::size_t k = variant_count(e.locations[l].kind);
        for (std::size_t j = 0; j < k; ++j) e.loc_of.push_back(l);
        e.first.push_back(e.first.back() + k);
    }
    std::size_t nv = e.loc_of.size();
    e.syndrome.assign(nv, BitVec(d.size()));
    e.pre.assign(nv, BitVec(pre.size()));
    e.logical.assign(nv, 0);
    e.round.assign(e.locations.size(), 0);
    auto col = incidence(d, c.n_meas());
    auto pcol = incidence(pre, c.n_meas());

    unsigned nw = workers > 0 ? unsigned(workers) : std::max(1u, std::thread::hardware_concurrency());
    auto work = [&](unsigned w) {
        for (std::size_t v = w; v < nv; v += nw) {
            FaultConfig f;
            f.faults.push_back(e.fault(c, v));
            Propagation p = propagate(c, f, rules);
            for (auto i : p.flips.ones()) {
                e.syndrome[v] ^= col[i];
                e.pre[v] ^= pcol[i];
            }
            e.logical[v] = logical_bits(map, p);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
    return e;
}

ErrorModel build_error_model(const Experiment& x, int workers) {
    ErrorModel e = build_error_model(x.circuit, x.noise(0.0), x.detectors, x.pre_detectors, x.logicals, x.rules, workers);
    for (std::size_t l = 0; l < e.locations.size(); ++l) e.round[l] = x.location_round(e.locations[l]);
    return e;
}

}  // namespace pmc
