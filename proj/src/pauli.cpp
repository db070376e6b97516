#include "pmc/pauli.hpp"

namespace pmc {

char pauli_char(Pauli p) {
    static const char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[std::uint8_t(p)];
}

Pauli pauli_from_char(char c) {
    switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
    }
}

PauliString PauliString::parse(std::string_view s) {
    PauliString r(int(s.size()));
    for (std::size_t q = 0; q < s.size(); ++q) r.set(int(q), pauli_from_char(s[q]));
    return r;
}

std::string PauliString::str() const {
    std::string s(std::size_t(n_), 'I');
    for (int q = 0; q < n_; ++q) s[std::size_t(q)] = pauli_char(get(q));
    return s;
}

}  // namespace pmc
