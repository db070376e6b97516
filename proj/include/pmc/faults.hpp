#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmc/bits.hpp"
#include "pmc/circuit.hpp"
#include "pmc/pauli.hpp"

namespace pmc {

enum class LocKind { meas1, meas2, idle };

struct FaultLocation {
    LocKind kind = LocKind::meas1;
    std::size_t step = 0;
    std::size_t ref = 0;  // measurement index, or qubit for idle
    bool operator==(const FaultLocation&) const = default;
};

struct ElementaryFault {
    FaultLocation loc;
    PauliString pauli;
    bool flip = false;
};

struct FaultConfig {
    std::vector<ElementaryFault> faults;
    std::size_t degree() const { return faults.size(); }
};

// Classical feed-forward: once `step` has finished, if the parity of the
// outcomes in `group` is odd, `pauli` is applied.
struct FrameRule {
    std::size_t step = 0;
    std::vector<std::size_t> group;
    PauliString pauli;
};

struct NoiseModel {
    double p = 0.0;
    IdleConvention idle = IdleConvention::none;
    std::vector<bool> exempt_meas;   // noiseless measurements
    std::vector<bool> exempt_step;   // steps without idle noise
    std::uint64_t idle_qubits = ~std::uint64_t{0};

    static NoiseModel uniform(const Circuit& c, double p, IdleConvention idle);
};

// All noisy locations of the circuit, in time order.
std::vector<FaultLocation> fault_locations(const Circuit& c, const NoiseModel& m);

std::vector<ElementaryFault> enumerate_variants(const Circuit& c, const FaultLocation& loc);
std::size_t variant_count(LocKind k);
ElementaryFault variant(const Circuit& c, const FaultLocation& loc, std::size_t v);

FaultConfig sample_config(const Circuit& c, const NoiseModel& m, std::mt19937_64& rng);
FaultConfig sample_uniform_degree(const Circuit& c, const NoiseModel& m, std::size_t w, std::mt19937_64& rng);

struct Propagation {
    PauliString residual;
    BitVec flips;
};

void validate(const Circuit& c, const FaultConfig& f);
Propagation propagate(const Circuit& c, const FaultConfig& f, const std::vector<FrameRule>& rules = {});

// Propagation where the auxiliary part of the frame is moved onto data
// qubits through aux-data pair measurements it matches on the aux side.
PauliString pushed_residual(const Circuit& c, const FaultConfig& f, std::uint64_t data_qubits);

std::string format_fault_config(const FaultConfig& f);
FaultConfig parse_fault_config(const Circuit& c, const std::string& text);
std::string kind_name(LocKind k);

}  // namespace pmc
