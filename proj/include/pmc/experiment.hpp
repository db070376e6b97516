#pragma once

#include <string>
#include <vector>

#include "pmc/circuit.hpp"
#include "pmc/detectors.hpp"
#include "pmc/faults.hpp"

namespace pmc {

enum class FailureRule { any, majority };
enum class RoundKind { five_three_square, five_three_straightline, five_two };

// Everything a decoder and a sampler need about one protocol.
struct Experiment {
    std::string name;
    Circuit circuit;
    std::vector<FrameRule> rules;
    int T = 0;

    IdleConvention idle = IdleConvention::none;
    std::vector<bool> exempt_meas, exempt_step;
    std::uint64_t idle_qubits = ~std::uint64_t{0};

    DetectorSet detectors;      // sorted by round
    DetectorSet pre_detectors;  // pre-selection checks
    LogicalActionMap logicals;
    FailureRule failure = FailureRule::any;

    std::size_t n_rounds = 0;
    std::vector<std::size_t> step_round, meas_round, det_round;
    bool whole_lookup = true;
    bool windowed = false;

    NoiseModel noise(double p) const;
    std::size_t location_round(const FaultLocation& l) const;
    bool failed(std::uint64_t logical) const;
};

// Logical idle: ideal round, `noisy_rounds` noisy rounds, ideal round.
Experiment make_window_experiment(RoundKind kind, int noisy_rounds, IdleConvention idle);
// 2T noisy rounds, normalized later by T.
Experiment make_idle_experiment(RoundKind kind, int T, IdleConvention idle);
Experiment make_xx_experiment(int T, IdleConvention idle);
Experiment make_closed_experiment(IdleConvention idle);
// Pauli errors on data qubits between two ideal rounds.
Experiment make_data_only_experiment();

// Any circuit started in |0...0>: detectors from the tracker, one logical
// bit per final stabilizer generator.
Experiment make_circuit_experiment(const Circuit& c, IdleConvention idle);

RoundKind round_kind_from_string(const std::string& s);
// Resolves --circuit names used by the command line.
Experiment make_experiment(const std::string& circuit, int T, IdleConvention idle);

}  // namespace pmc
