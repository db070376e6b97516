#include "pmc/oracle.hpp"

#include <optional>
#include <random>

#include "pmc/tableau.hpp"

namespace pmc {

OracleReport compare_with_oracle(const Circuit& c, const FaultConfig& f, const std::vector<FrameRule>& rules,
                                 std::uint64_t seed) {
    const std::size_t M = c.n_meas();
    std::mt19937_64 rng0(seed);
    Tableau t0 = Tableau::init_zero(c.n_qubits()), fin0;
    OutcomeRecord clean = run(t0, c, FaultConfig{}, rng0, RunOptions{&rules, nullptr, &fin0});

    Propagation pr = propagate(c, f, rules);
    std::vector<bool> readout(M, false);
    for (auto& e : f.faults)
        if (e.loc.kind != LocKind::idle && e.flip) readout[e.loc.ref] = !readout[e.loc.ref];
    std::vector<std::optional<bool>> forced(M);
    for (std::size_t i = 0; i < M; ++i) forced[i] = clean.outcome[i] ^ pr.flips.get(i) ^ readout[i];

    std::mt19937_64 rng1(seed);
    Tableau t1 = Tableau::init_zero(c.n_qubits()), fin1;
    OutcomeRecord noisy = run(t1, c, f, rng1, RunOptions{&rules, &forced, &fin1});

    OracleReport rep;
    for (std::size_t i = 0; i < M; ++i) {
        if (!noisy.deterministic[i]) continue;
        ++rep.deterministic;
        if (noisy.outcome[i] != (clean.outcome[i] ^ pr.flips.get(i))) ++rep.mismatches;
    }
    fin0.apply_pauli(pr.residual);
    rep.state_ok = fin0.same_state(fin1);
    return rep;
}

}  // namespace pmc
