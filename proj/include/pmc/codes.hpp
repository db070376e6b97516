#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "pmc/circuit.hpp"
#include "pmc/faults.hpp"
#include "pmc/pauli.hpp"

namespace pmc {

// Qubit numbering for one patch: data 1-5 -> 0-4, A,B,C -> 5,6,7.
inline constexpr int kPatchQubits = 8;
inline constexpr int kAuxA = 5, kAuxB = 6, kAuxC = 7;
inline constexpr std::uint64_t kDataMask = 0x1f;

struct CodeSpec {
    int n_data = 5;
    int n_aux = 3;
    std::vector<PauliString> stabilizers;
    std::vector<PauliString> logical_x_reps;
    std::vector<PauliString> logical_z_reps;

    // [[5,1,3]] embedded in n qubits starting at `offset`
    static CodeSpec five_qubit(int n_qubits = kPatchQubits, int offset = 0, int n_aux = 3);
    // throws UsageError when a commutation invariant fails
    void validate() const;
};

// Embeds a string written over data qubits into n qubits at `offset`.
PauliString embed(const PauliString& p, int n, int offset = 0);

// Parses a block description such as "ZA | XA.X1 XC ZB | ...": steps are
// separated by '|', measurements by spaces, pair factors by '.'. Labels
// map through `label` (defaults: 1-5 data, A/B/C auxiliaries, plus offset).
using LabelMap = std::function<int(const std::string&)>;
Circuit parse_block(int n, const std::string& desc, const LabelMap& label);
LabelMap patch_labels(int offset = 0);

// Unions two circuits step by step (supports must be disjoint).
Circuit overlay(const Circuit& a, const Circuit& b);
// Concatenates blocks merging boundary steps, then folds the final step
// into the first one. Annotates "close" and "wrap".
Circuit cyclic_round(const std::vector<Circuit>& blocks);

enum class Layout { straightline, square };
enum class Boundary { ideal_padded, bare };

// generator order of the square layout
extern const std::array<const char*, 4> kSquareOrder;
// generator order of the closed circuit
extern const std::array<const char*, 4> kClosedOrder;

Circuit square_block(const std::string& stabilizer, int n = kPatchQubits, int offset = 0);
Circuit straightline_block(int shift, int n = kPatchQubits, int offset = 0);

Circuit build_53_round(Layout layout);
Circuit build_52_round();
Circuit build_repeated(const Circuit& round, int r, Boundary boundary);

// Weight-3 logical measurement block on one patch; annotates "outcome".
Circuit build_logical_measurement(const PauliString& rep, int n = kPatchQubits, int offset = 0);

// T repetitions of the six-block two-patch sequence with ideal padding.
// `three_repetitions` builds the single-shot protocol with three seam
// measurements instead.
Circuit build_xx_sequence(int T, bool three_repetitions = false);
// two seam measurements followed by one round on both patches
Circuit build_xx_half_block();
std::uint64_t seam_qubits();

struct ClosedCircuit {
    Circuit circuit;
    std::vector<FrameRule> rules;  // stage (1) fix-up
    std::array<std::size_t, 7> stage_step{};  // first step of stage k (1-based), [6] = end
    // first and last step of each representative block in stages (2) and (5)
    std::array<std::array<std::size_t, 2>, 3> check_blocks{}, readout_blocks{};
};
ClosedCircuit build_prep_idle_measure_full();
Circuit build_prep_idle_measure();

struct ShProtocol {
    Circuit circuit;
    std::array<int, 5> role_holder{};  // physical qubit holding data role k after the protocol
    std::array<int, 5> relabel{};      // physical data slot that data slot k maps to
};
ShProtocol build_sh_protocol();

// D = 0, C = 1, A = 2
Circuit build_teleport();

// data 1-8 -> 0-7, A,B,C -> 8,9,10
Circuit build_color832_x8();
std::vector<PauliString> color832_z_generators();
PauliString color832_x_stabilizer();

std::vector<std::string> circuit_names();
Circuit build_by_name(const std::string& name);

}  // namespace pmc
