#pragma once

// Independent closed-form oracles for the unit and acceptance suites.
// Everything here works from explicit cyclic decompositions and plain
// arithmetic, never from the library's presentation machinery.

#include <algorithm>
#include <map>
#include <vector>

#include "homkk/int_matrix.hpp"

namespace homkk::oracle {

// Orders of cyclic summands; 0 is a free Z summand.
using Orders = std::vector<long>;

inline long gcd_long(long a, long b) { return b == 0 ? a : gcd_long(b, a % b); }

// Invariant-factor normal form of a direct sum of cyclic groups: torsion
// factors ascending in the divisibility chain (entries > 1), then one 0 per
// free summand. Computed by merging prime-power components.
inline std::vector<Int> invariant_factor_form(const Orders& orders) {
    std::map<long, std::vector<int>> exps;  // prime -> exponents, later sorted
    std::size_t free_rank = 0;
    for (long m : orders) {
        if (m == 0) {
            ++free_rank;
            continue;
        }
        long v = m;
        for (long p = 2; p * p <= v; ++p) {
            if (v % p) continue;
            int e = 0;
            while (v % p == 0) {
                v /= p;
                ++e;
            }
            exps[p].push_back(e);
        }
        if (v > 1) exps[v].push_back(1);
    }
    std::size_t k = 0;
    for (auto& [p, es] : exps) {
        std::sort(es.rbegin(), es.rend());
        k = std::max(k, es.size());
    }
    std::vector<Int> factors;
    for (std::size_t j = 0; j < k; ++j) {
        Int f = 1;
        for (auto& [p, es] : exps)
            if (j < es.size())
                for (int e = 0; e < es[j]; ++e) f *= p;
        if (f > 1) factors.push_back(f);
    }
    std::reverse(factors.begin(), factors.end());  // ascending divisibility
    for (std::size_t i = 0; i < free_rank; ++i) factors.push_back(0);
    return factors;
}

// Hom(Z/m, Z/n) with the conventions m = 0 for Z.
inline Orders hom_cyclic(long m, long n) {
    if (m == 0) return {n};                       // Hom(Z, H) = H
    if (n == 0) return {};                        // Hom(Z/m, Z) = 0
    return {gcd_long(m, n)};
}

// Ext(Z/m, Z/n).
inline Orders ext_cyclic(long m, long n) {
    if (m == 0) return {};                        // free source
    if (n == 0) return {m};                       // Ext(Z/m, Z) = Z/m
    return {gcd_long(m, n)};
}

inline Orders pairwise(const Orders& a, const Orders& b, Orders (*f)(long, long)) {
    Orders out;
    for (long m : a)
        for (long n : b) {
            Orders piece = f(m, n);
            out.insert(out.end(), piece.begin(), piece.end());
        }
    return out;
}

inline std::vector<Int> hom_factors(const Orders& a, const Orders& b) {
    return invariant_factor_form(pairwise(a, b, hom_cyclic));
}

inline std::vector<Int> ext_factors(const Orders& a, const Orders& b) {
    return invariant_factor_form(pairwise(a, b, ext_cyclic));
}

}  // namespace homkk::oracle
