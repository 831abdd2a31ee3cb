#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gtladder/common.hpp"

namespace gtladder {

// A partition written in weakly increasing order, e.g. 1,1,2,4,4.
struct Partition {
    std::vector<long long> parts;
};

// lambda = (1^{a_1}, 2^{a_2}, ..., m^{a_m}) up to relabeling of the distinct
// values; only the multiplicities matter combinatorially.
struct MultiplicityVector {
    std::vector<int> mults;

    int m() const { return static_cast<int>(mults.size()); }
    int n() const {
        int s = 0;
        for (int a : mults) s += a;
        return s;
    }
    // s_0 = 0, s_j = a_1 + ... + a_j, s_m = n.
    std::vector<int> prefix() const {
        std::vector<int> s(mults.size() + 1, 0);
        for (std::size_t j = 0; j < mults.size(); ++j) s[j + 1] = s[j] + mults[j];
        return s;
    }

    bool operator==(const MultiplicityVector& o) const { return mults == o.mults; }
    bool operator!=(const MultiplicityVector& o) const { return mults != o.mults; }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < mults.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(mults[i]);
        }
        return out + ")";
    }
};

// Grammar:  part ("," part)*   where part = INT | INT "^" INT, all ints >= 1.
// "1^2,2,4^2" means 1,1,2,4,4. Parts must be weakly increasing once expanded.
inline Partition parse_partition(const std::string& text) {
    Partition p;
    if (text.empty()) throw parse_error("empty partition");
    std::size_t i = 0;
    auto read_int = [&](const char* what) -> long long {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start)
            throw parse_error(std::string("expected ") + what + " at position " +
                              std::to_string(start) + " in '" + text + "'");
        if (i - start > 12) throw parse_error("integer too large: '" + text.substr(start, i - start) + "'");
        long long v = std::stoll(text.substr(start, i - start));
        if (v < 1)
            throw parse_error(std::string(what) + " must be >= 1, got " + std::to_string(v));
        return v;
    };
    while (true) {
        long long value = read_int("part value");
        long long mult = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            mult = read_int("multiplicity");
        }
        if (mult > 64) throw parse_error("multiplicity too large: " + std::to_string(mult));
        for (long long k = 0; k < mult; ++k) p.parts.push_back(value);
        if (i == text.size()) break;
        if (text[i] != ',')
            throw parse_error(std::string("unexpected character '") + text[i] +
                              "' at position " + std::to_string(i) + " in '" + text + "'");
        ++i;
        if (i == text.size()) throw parse_error("trailing ',' in '" + text + "'");
    }
    for (std::size_t k = 1; k < p.parts.size(); ++k)
        if (p.parts[k] < p.parts[k - 1])
            throw parse_error("parts must be weakly increasing: " +
                              std::to_string(p.parts[k]) + " after " +
                              std::to_string(p.parts[k - 1]));
    return p;
}

inline MultiplicityVector normalize(const Partition& p) {
    MultiplicityVector mv;
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        if (i == 0 || p.parts[i] != p.parts[i - 1])
            mv.mults.push_back(1);
        else
            ++mv.mults.back();
    }
    return mv;
}

// All multiplicity vectors with a_1 + ... + a_m = n, lexicographic.
inline std::vector<MultiplicityVector> compositions(int n) {
    std::vector<MultiplicityVector> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left) -> void {
        if (left == 0) {
            out.push_back(MultiplicityVector{cur});
            return;
        }
        for (int a = 1; a <= left; ++a) {
            cur.push_back(a);
            self(self, left - a);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

inline MultiplicityVector reverse(const MultiplicityVector& mv) {
    MultiplicityVector r = mv;
    std::reverse(r.mults.begin(), r.mults.end());
    return r;
}

inline bool is_reverse_symmetric(const MultiplicityVector& mv) {
    return mv == reverse(mv);
}

inline long long choose2(long long k) { return k * (k - 1) / 2; }

// dim GT_lambda = C(n,2) - sum_i C(a_i,2).
inline long long dimension(const MultiplicityVector& mv) {
    long long d = choose2(mv.n());
    for (int a : mv.mults) d -= choose2(a);
    return d;
}

// Diameter of the 1-skeleton: 2m - 2 - [a_1 = 1] - [a_m = 1], and 0 for m = 1.
// The lone exception is (1,1), whose skeleton is a single edge (diameter 1).
inline long long diameter_formula(const MultiplicityVector& mv) {
    int m = mv.m();
    if (m <= 1) return 0;
    long long d = 2LL * m - 2;
    if (mv.mults.front() == 1) d -= 1;
    if (mv.mults.back() == 1) d -= 1;
    return d;
}

namespace detail {
inline unsigned long long mul_checked(unsigned long long a, unsigned long long b) {
    unsigned long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw budget_error("automorphism group order overflows 64 bits");
    return r;
}
inline unsigned long long factorial_checked(long long k) {
    unsigned long long r = 1;
    for (long long i = 2; i <= k; ++i) r = mul_checked(r, static_cast<unsigned long long>(i));
    return r;
}
}  // namespace detail

// Order of the combinatorial automorphism group of GT_lambda.
//   m = 1: trivial (a point).
//   m = 2 with min(a_1,a_2) = 1: the polytope is a d-simplex, order (d+1)!.
//   m = 2, a = (2,2): order 16.
//   m = 2 otherwise: 16, doubled when a_1 = a_2.
//   m >= 3: (a_2!)^[a_1=1] * (a_{m-1}!)^[a_m=1] * 2^(r+1) * 2^[palindromic]
//           with r = #{k : a_k >= 2 and a_{k+1} >= 2}.
inline unsigned long long aut_order_formula(const MultiplicityVector& mv) {
    using detail::factorial_checked;
    using detail::mul_checked;
    int m = mv.m();
    const auto& a = mv.mults;
    if (m <= 1) return 1;
    if (m == 2) {
        if (a[0] == 1 || a[1] == 1) return factorial_checked(dimension(mv) + 1);
        if (a[0] == 2 && a[1] == 2) return 16;
        unsigned long long o = 16;
        if (a[0] == a[1]) o = mul_checked(o, 2);
        return o;
    }
    unsigned long long o = 1;
    if (a[0] == 1) o = mul_checked(o, factorial_checked(a[1]));
    if (a[m - 1] == 1) o = mul_checked(o, factorial_checked(a[m - 2]));
    int r = 0;
    for (int k = 0; k + 1 < m; ++k)
        if (a[k] >= 2 && a[k + 1] >= 2) ++r;
    for (int i = 0; i < r + 1; ++i) o = mul_checked(o, 2);
    if (is_reverse_symmetric(mv)) o = mul_checked(o, 2);
    return o;
}

}  // namespace gtladder
