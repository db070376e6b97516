#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pmc {

// Dynamic bitset over GF(2) with word-level xor.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool any() const {
        for (auto x : w_) if (x) return true;
        return false;
    }
    bool none() const { return !any(); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool parity() const {
        std::uint64_t acc = 0;
        for (auto x : w_) acc ^= x;
        return std::popcount(acc) & 1;
    }
    // parity of (this AND mask)
    bool dot(const BitVec& mask) const {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & mask.w_[k];
        return std::popcount(acc) & 1;
    }
    // index of the highest set bit, or -1
    long last() const {
        for (std::size_t k = w_.size(); k-- > 0;)
            if (w_[k]) return long(k * 64 + 63 - std::countl_zero(w_[k]));
        return -1;
    }
    long first() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return long(k * 64 + std::countr_zero(w_[k]));
        return -1;
    }
    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                out.push_back(k * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
        return out;
    }
    // bits [lo, hi) as a new vector
    BitVec slice(std::size_t lo, std::size_t hi) const {
        BitVec r(hi - lo);
        for (std::size_t i = lo; i < hi; ++i)
            if (get(i)) r.set(i - lo);
        return r;
    }
    void resize(std::size_t n) {
        n_ = n;
        w_.resize((n + 63) / 64, 0);
        if (n & 63) w_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::uint64_t* data() { return w_.data(); }

    // little-endian hex, bit 0 is the low nibble of the first character
    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string s;
        std::size_t nib = (n_ + 3) / 4;
        if (nib == 0) return "0";
        for (std::size_t j = 0; j < nib; ++j) {
            unsigned v = 0;
            for (unsigned b = 0; b < 4; ++b) {
                std::size_t i = j * 4 + b;
                if (i < n_ && get(i)) v |= 1u << b;
            }
            s.push_back(digits[v]);
        }
        return s;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
        for (auto x : w_) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return std::size_t(h ^ (h >> 29));
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace pmc
