#pragma once

#include <optional>
#include <random>
#include <vector>

#include "pmc/circuit.hpp"
#include "pmc/pauli.hpp"

namespace pmc {

struct FaultConfig;
struct FrameRule;

struct MeasureResult {
    bool outcome = false;
    bool deterministic = false;
};

// Stabilizer tableau with signs (Aaronson-Gottesman layout).
class Tableau {
public:
    Tableau() = default;
    static Tableau init_zero(int n);

    int n() const { return n_; }
    const PauliString& stabilizer(int i) const { return stab_[std::size_t(i)]; }
    const PauliString& destabilizer(int i) const { return destab_[std::size_t(i)]; }
    bool sign(int i) const { return sign_[std::size_t(i)]; }

    // Random outcomes come from rng; `forced` overrides the random branch
    // (ignored when the outcome is deterministic).
    MeasureResult measure(const PauliString& obs, std::mt19937_64& rng, std::optional<bool> forced = std::nullopt);
    // outcome if obs is ± a product of stabilizers
    std::optional<bool> peek(const PauliString& obs) const;
    void apply_pauli(const PauliString& p);

    // same stabilizer group including signs
    bool same_state(const Tableau& o) const;
    bool valid() const;

private:
    int n_ = 0;
    std::vector<PauliString> stab_, destab_;
    std::vector<bool> sign_, dsign_;
};

struct OutcomeRecord {
    std::vector<bool> outcome;
    std::vector<bool> deterministic;
};

struct RunOptions {
    const std::vector<FrameRule>* rules = nullptr;   // physical feed-forward
    const std::vector<std::optional<bool>>* forced = nullptr;  // per measurement
    Tableau* final_state = nullptr;
};

OutcomeRecord run(Tableau& t, const Circuit& c, const FaultConfig& fault, std::mt19937_64& rng,
                  const RunOptions& opt = {});

}  // namespace pmc
