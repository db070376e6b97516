#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmc/pauli.hpp"

namespace pmc {

struct Measurement {
    int arity = 1;
    int q[2] = {0, 0};
    Pauli b[2] = {Pauli::Z, Pauli::Z};

    static Measurement one(Pauli b0, int q0) { return {1, {q0, 0}, {b0, Pauli::Z}}; }
    static Measurement two(Pauli b0, int q0, Pauli b1, int q1) { return {2, {q0, q1}, {b0, b1}}; }
    std::uint64_t support() const {
        std::uint64_t s = std::uint64_t{1} << q[0];
        if (arity == 2) s |= std::uint64_t{1} << q[1];
        return s;
    }
    PauliString observable(int n) const {
        PauliString p(n);
        p.set(q[0], b[0]);
        if (arity == 2) p.set(q[1], b[1]);
        return p;
    }
    bool operator==(const Measurement& o) const {
        if (arity != o.arity || q[0] != o.q[0] || b[0] != o.b[0]) return false;
        return arity == 1 || (q[1] == o.q[1] && b[1] == o.b[1]);
    }
};

struct Step {
    std::vector<Measurement> meas;
    std::uint64_t support() const {
        std::uint64_t s = 0;
        for (auto& m : meas) s |= m.support();
        return s;
    }
    bool operator==(const Step&) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class IdleConvention { none, untouched };
IdleConvention idle_from_string(const std::string& s);
std::string to_string(IdleConvention c);

struct LocationCounts {
    long n_meas = 0, n_idle = 0, n_total = 0;
};

// Time-stepped list of single and pairwise Pauli measurements.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int n_qubits);

    int n_qubits() const { return n_; }
    const std::vector<Step>& steps() const { return steps_; }
    std::size_t n_steps() const { return steps_.size(); }
    std::size_t n_meas() const { return meas_.size(); }

    // global measurement index bookkeeping (step-major)
    const Measurement& meas(std::size_t i) const { return meas_[i].m; }
    std::size_t step_of(std::size_t i) const { return meas_[i].step; }
    std::size_t first_index(std::size_t step) const { return step_first_[step]; }
    PauliString observable(std::size_t i) const { return meas_[i].m.observable(n_); }

    void add_step(Step s);
    // appends to the last step, checking disjointness
    void add_to_last(const Measurement& m);
    void append(const Circuit& other, bool merge_boundary);

    std::map<std::string, std::vector<std::size_t>>& annotations() { return annot_; }
    const std::map<std::string, std::vector<std::size_t>>& annotations() const { return annot_; }
    void annotate(const std::string& name, std::vector<std::size_t> idx);
    const std::vector<std::size_t>& annotation(const std::string& name) const;
    bool has_annotation(const std::string& name) const { return annot_.count(name) > 0; }

    bool operator==(const Circuit& o) const { return n_ == o.n_ && steps_ == o.steps_ && annot_ == o.annot_; }

private:
    struct Entry {
        Measurement m;
        std::size_t step;
    };
    void check(const Step& s) const;

    int n_ = 0;
    std::vector<Step> steps_;
    std::vector<Entry> meas_;
    std::vector<std::size_t> step_first_;
    std::map<std::string, std::vector<std::size_t>> annot_;
};

Circuit parse_circuit(const std::string& text);
std::string serialize_circuit(const Circuit& c);
LocationCounts count_locations(const Circuit& c, IdleConvention idle);

}  // namespace pmc
