#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gtladder {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-capacity dynamic bitset. Capacity is chosen once (number of grid
// edges or points); all binary ops assume identical capacity.
class Bitset {
public:
    Bitset() : nbits_(0) {}
    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator-=(const Bitset& o) {  // set difference
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }
    friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }
    friend Bitset operator-(Bitset a, const Bitset& b) { a -= b; return a; }

    bool operator==(const Bitset& o) const { return words_ == o.words_; }
    bool operator!=(const Bitset& o) const { return words_ != o.words_; }
    bool operator<(const Bitset& o) const { return words_ < o.words_; }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    std::size_t or_count(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(words_[i] | o.words_[i]));
        return c;
    }
    std::size_t and_count(const Bitset& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(words_[i] & o.words_[i]));
        return c;
    }
    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::size_t hash() const {
        std::size_t h = nbits_;
        for (auto w : words_)
            h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    // Iterate set bits, ascending.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

private:
    std::size_t nbits_;
    std::vector<std::uint64_t> words_;
};

struct BitsetHash {
    std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

// Exact rational arithmetic, enough for generic points of faces.
// Values stay tiny (denominators bounded by grid size), so int64 with
// int128 cross-multiplied comparisons is plenty.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num_) * b.den_ <
               static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

}  // namespace gtladder
