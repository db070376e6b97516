#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pmc {

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline Pauli operator*(Pauli a, Pauli b) { return Pauli(std::uint8_t(a) ^ std::uint8_t(b)); }
inline bool has_x(Pauli p) { return std::uint8_t(p) & 1; }
inline bool has_z(Pauli p) { return std::uint8_t(p) & 2; }
inline Pauli make_pauli(bool x, bool z) { return Pauli((x ? 1 : 0) | (z ? 2 : 0)); }
char pauli_char(Pauli p);
Pauli pauli_from_char(char c);  // throws std::invalid_argument

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Phase-free Pauli operator on up to 64 qubits.
class PauliString {
public:
    static constexpr int kMaxQubits = 64;

    PauliString() = default;
    explicit PauliString(int n) : n_(n) {
        if (n < 0 || n > kMaxQubits) throw UsageError("PauliString: qubit count out of range");
    }
    PauliString(int n, std::uint64_t xs, std::uint64_t zs) : PauliString(n) {
        xs_ = xs & mask();
        zs_ = zs & mask();
    }
    static PauliString parse(std::string_view s);
    static PauliString single(int n, int q, Pauli p) {
        PauliString r(n);
        r.set(q, p);
        return r;
    }
    static PauliString pair(int n, int q1, Pauli p1, int q2, Pauli p2) {
        PauliString r(n);
        r.set(q1, p1);
        r.set(q2, p2);
        return r;
    }

    int n() const { return n_; }
    std::uint64_t xs() const { return xs_; }
    std::uint64_t zs() const { return zs_; }
    Pauli get(int q) const { return make_pauli((xs_ >> q) & 1, (zs_ >> q) & 1); }
    void set(int q, Pauli p) {
        std::uint64_t b = std::uint64_t{1} << q;
        xs_ = has_x(p) ? xs_ | b : xs_ & ~b;
        zs_ = has_z(p) ? zs_ | b : zs_ & ~b;
    }
    bool is_identity() const { return (xs_ | zs_) == 0; }
    int weight() const { return std::popcount(xs_ | zs_); }
    std::uint64_t support() const { return xs_ | zs_; }

    PauliString& operator*=(const PauliString& o) {
        check(o);
        xs_ ^= o.xs_;
        zs_ ^= o.zs_;
        return *this;
    }
    friend PauliString operator*(PauliString a, const PauliString& b) { return a *= b; }
    bool operator==(const PauliString& o) const = default;

    // symplectic form; true when the two strings anticommute
    bool anticommutes(const PauliString& o) const {
        return std::popcount((xs_ & o.zs_) ^ (zs_ & o.xs_)) & 1;
    }
    bool commutes_with(const PauliString& o) const {
        check(o);
        return !anticommutes(o);
    }

    PauliString restricted(std::uint64_t qubits) const { return PauliString(n_, xs_ & qubits, zs_ & qubits); }
    PauliString x_part() const { return PauliString(n_, xs_, 0); }
    PauliString z_part() const { return PauliString(n_, 0, zs_); }

    std::string str() const;

private:
    void check(const PauliString& o) const {
        if (o.n_ != n_) throw UsageError("PauliString: length mismatch");
    }
    std::uint64_t mask() const { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

    int n_ = 0;
    std::uint64_t xs_ = 0, zs_ = 0;
};

inline PauliString mul(const PauliString& a, const PauliString& b) { return a * b; }
inline bool commutes(const PauliString& a, const PauliString& b) { return a.commutes_with(b); }

}  // namespace pmc
