#include "pmc/circuit.hpp"

#include <sstream>

namespace pmc {

IdleConvention idle_from_string(const std::string& s) {
    if (s == "none" || s == "off") return IdleConvention::none;
    if (s == "untouched") return IdleConvention::untouched;
    throw UsageError("unknown idle convention '" + s + "'");
}

std::string to_string(IdleConvention c) { return c == IdleConvention::none ? "none" : "untouched"; }

Circuit::Circuit(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 0 || n_qubits > PauliString::kMaxQubits) throw UsageError("Circuit: qubit count out of range");
}

void Circuit::check(const Step& s) const {
    std::uint64_t seen = 0;
    for (auto& m : s.meas) {
        for (int k = 0; k < m.arity; ++k) {
            if (m.q[k] < 0 || m.q[k] >= n_) throw UsageError("Circuit: qubit index out of range");
            if (m.b[k] == Pauli::I) throw UsageError("Circuit: identity basis");
        }
        if (m.arity == 2 && m.q[0] == m.q[1]) throw UsageError("Circuit: repeated target in pairwise measurement");
        if (seen & m.support()) throw UsageError("Circuit: overlapping measurements within a step");
        seen |= m.support();
    }
}

void Circuit::add_step(Step s) {
    check(s);
    step_first_.push_back(meas_.size());
    for (auto& m : s.meas) meas_.push_back({m, steps_.size()});
    steps_.push_back(std::move(s));
}

void Circuit::add_to_last(const Measurement& m) {
    if (steps_.empty()) {
        add_step(Step{{m}});
        return;
    }
    Step s = steps_.back();
    s.meas.push_back(m);
    check(s);
    steps_.back() = s;
    meas_.push_back({m, steps_.size() - 1});
}

void Circuit::append(const Circuit& other, bool merge_boundary) {
    if (other.n_ != n_) throw UsageError("Circuit::append: qubit count mismatch");
    std::size_t offset = meas_.size();
    std::size_t k = 0;
    if (merge_boundary && !steps_.empty() && !other.steps_.empty() &&
        (steps_.back().support() & other.steps_.front().support()) == 0) {
        for (auto& m : other.steps_.front().meas) add_to_last(m);
        k = 1;
    }
    for (; k < other.steps_.size(); ++k) add_step(other.steps_[k]);
    for (auto& [name, idx] : other.annot_) {
        auto& dst = annot_[name];
        for (auto i : idx) dst.push_back(i + offset);
    }
}

void Circuit::annotate(const std::string& name, std::vector<std::size_t> idx) {
    for (auto i : idx)
        if (i >= meas_.size()) throw UsageError("Circuit: annotation index out of range");
    annot_[name] = std::move(idx);
}

const std::vector<std::size_t>& Circuit::annotation(const std::string& name) const {
    auto it = annot_.find(name);
    if (it == annot_.end()) throw UsageError("Circuit: no annotation '" + name + "'");
    return it->second;
}

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    Circuit c;
    bool have_header = false;
    Step cur;
    bool open = false;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> annots;
    std::vector<int> annot_lines;
    auto flush = [&](int ln) {
        try {
            c.add_step(cur);
        } catch (const UsageError& e) {
            throw ParseError(ln, e.what());
        }
        cur = Step{};
    };
    auto basis = [&](const std::string& tok) {
        if (tok.size() != 1 || tok[0] == 'I') throw ParseError(lineno, "unknown basis '" + tok + "'");
        try {
            return pauli_from_char(tok[0]);
        } catch (const std::invalid_argument&) {
            throw ParseError(lineno, "unknown basis '" + tok + "'");
        }
    };
    auto qubit = [&](const std::string& tok) {
        std::size_t pos = 0;
        long v = -1;
        try {
            v = std::stol(tok, &pos);
        } catch (...) {
            throw ParseError(lineno, "bad qubit index '" + tok + "'");
        }
        if (pos != tok.size() || v < 0) throw ParseError(lineno, "bad qubit index '" + tok + "'");
        if (v >= c.n_qubits()) throw ParseError(lineno, "qubit index " + tok + " out of range");
        return int(v);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (!have_header) {
            if (tok[0] != "qubits" || tok.size() != 2) throw ParseError(lineno, "expected 'qubits <n>'");
            long n = -1;
            try {
                n = std::stol(tok[1]);
            } catch (...) {
            }
            if (n < 0 || n > PauliString::kMaxQubits) throw ParseError(lineno, "bad qubit count");
            c = Circuit(int(n));
            have_header = true;
            continue;
        }
        const std::string& op = tok[0];
        if (op == "tick") {
            if (tok.size() != 1) throw ParseError(lineno, "tick takes no arguments");
            flush(lineno);
            open = false;
        } else if (op == "M") {
            if (tok.size() != 3) throw ParseError(lineno, "expected 'M <B> <q>'");
            Measurement m = Measurement::one(basis(tok[1]), qubit(tok[2]));
            for (auto& e : cur.meas)
                if (e.support() & m.support()) throw ParseError(lineno, "duplicate qubit within a step");
            cur.meas.push_back(m);
            open = true;
        } else if (op == "M2") {
            if (tok.size() != 5) throw ParseError(lineno, "expected 'M2 <B1> <q1> <B2> <q2>'");
            Measurement m = Measurement::two(basis(tok[1]), qubit(tok[2]), basis(tok[3]), qubit(tok[4]));
            if (m.q[0] == m.q[1]) throw ParseError(lineno, "duplicate qubit within a step");
            for (auto& e : cur.meas)
                if (e.support() & m.support()) throw ParseError(lineno, "duplicate qubit within a step");
            cur.meas.push_back(m);
            open = true;
        } else if (op == "annot") {
            if (tok.size() < 2) throw ParseError(lineno, "expected 'annot <name> <idx>...'");
            std::vector<std::size_t> idx;
            for (std::size_t k = 2; k < tok.size(); ++k) {
                try {
                    idx.push_back(std::stoul(tok[k]));
                } catch (...) {
                    throw ParseError(lineno, "bad annotation index '" + tok[k] + "'");
                }
            }
            annots.emplace_back(tok[1], std::move(idx));
            annot_lines.push_back(lineno);
        } else {
            throw ParseError(lineno, "unknown directive '" + op + "'");
        }
    }
    if (!have_header) throw ParseError(lineno, "missing 'qubits' header");
    if (open) flush(lineno);
    for (std::size_t k = 0; k < annots.size(); ++k) {
        try {
            c.annotate(annots[k].first, annots[k].second);
        } catch (const UsageError& e) {
            throw ParseError(annot_lines[k], e.what());
        }
    }
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits() << "\n";
    for (std::size_t s = 0; s < c.n_steps(); ++s) {
        if (s) out << "tick\n";
        for (auto& m : c.steps()[s].meas) {
            if (m.arity == 1)
                out << "M " << pauli_char(m.b[0]) << ' ' << m.q[0] << "\n";
            else
                out << "M2 " << pauli_char(m.b[0]) << ' ' << m.q[0] << ' ' << pauli_char(m.b[1]) << ' ' << m.q[1] << "\n";
        }
    }
    for (auto& [name, idx] : c.annotations()) {
        out << "annot " << name;
        for (auto i : idx) out << ' ' << i;
        out << "\n";
    }
    return out.str();
}

LocationCounts count_locations(const Circuit& c, IdleConvention idle) {
    LocationCounts r;
    r.n_meas = long(c.n_meas());
    if (idle == IdleConvention::untouched)
        for (auto& s : c.steps()) r.n_idle += c.n_qubits() - std::popcount(s.support());
    r.n_total = r.n_meas + r.n_idle;
    return r;
}

}  // namespace pmc
