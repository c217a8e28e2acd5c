#pragma once

// Slow reference implementations used only by tests. They share no code with
// the library beyond the Monomial/Polynomial containers.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "hitforge/polynomial.hpp"

namespace oracle {

using hitforge::Monomial;
using hitforge::Polynomial;

/// C(n, r) mod 2 from Pascal's triangle.
inline bool binom_odd(std::uint64_t n, std::uint64_t r) {
    static std::vector<std::vector<std::uint8_t>> rows{{1}};
    if (r > n) {
        return false;
    }
    while (rows.size() <= n) {
        const auto& prev = rows.back();
        std::vector<std::uint8_t> next(prev.size() + 1, 1);
        for (std::size_t j = 1; j < prev.size(); ++j) {
            next[j] = prev[j - 1] ^ prev[j];
        }
        rows.push_back(std::move(next));
    }
    return rows[n][r] != 0;
}

/// Sq^i on a monomial from Sq(x^a) = x^a (1 + x)^a in each variable,
/// multiplied out term by term.
inline Polynomial sq(std::uint64_t i, const Monomial& x) {
    const std::size_t k = x.vars();
    std::map<std::vector<std::uint64_t>, std::uint64_t> partial{{{}, 0}};
    // partial: prefix of chosen t_j -> sum of t_j so far
    for (std::size_t j = 1; j <= k; ++j) {
        std::map<std::vector<std::uint64_t>, std::uint64_t> next;
        const std::uint64_t a = x.nu(j);
        for (const auto& [prefix, used] : partial) {
            for (std::uint64_t t = 0; t <= a && used + t <= i; ++t) {
                if (binom_odd(a, t)) {
                    auto p = prefix;
                    p.push_back(t);
                    next.emplace(std::move(p), used + t);
                }
            }
        }
        partial = std::move(next);
    }
    std::vector<Monomial> terms;
    for (const auto& [split, used] : partial) {
        if (used != i) {
            continue;
        }
        Monomial m(k);
        for (std::size_t j = 1; j <= k; ++j) {
            m.set_nu(j, x.nu(j) + split[j - 1]);
        }
        terms.push_back(m);
    }
    return Polynomial::from_terms(k, std::move(terms));
}

inline Polynomial sq(std::uint64_t i, const Polynomial& f) {
    Polynomial out(f.vars());
    for (const auto& t : f.terms()) {
        out += oracle::sq(i, t);
    }
    return out;
}

/// Monomials of degree n by nested loops (k <= 4).
inline std::vector<Monomial> all_monomials(std::size_t k, std::uint64_t n) {
    std::vector<Monomial> out;
    std::vector<std::uint64_t> e(k, 0);
    auto rec = [&](auto&& self, std::size_t j, std::uint64_t left) -> void {
        if (j + 1 == k) {
            e[j] = left;
            out.emplace_back(std::span<const std::uint64_t>(e));
            return;
        }
        for (std::uint64_t a = 0; a <= left; ++a) {
            e[j] = a;
            self(self, j + 1, left - a);
        }
    };
    rec(rec, 0, n);
    return out;
}

/// Rank over F2 of a list of polynomials using sets of monomials as vectors.
inline std::size_t rank(std::vector<Polynomial> rows) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].is_zero()) {
            continue;
        }
        const Monomial lead = rows[i].terms().back();
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[j].contains(lead)) {
                rows[j] += rows[i];
            }
        }
        ++r;
    }
    return r;
}

/// Span membership: rank does not grow when target is added.
inline bool in_span(const std::vector<Polynomial>& gens, const Polynomial& target) {
    auto with = gens;
    with.push_back(target);
    return rank(with) == rank(gens);
}

inline Polynomial random_poly(std::mt19937_64& rng, std::size_t k, std::uint64_t max_exp, std::size_t max_terms) {
    std::uniform_int_distribution<std::uint64_t> e(0, max_exp);
    std::uniform_int_distribution<std::size_t> t(0, max_terms);
    std::vector<Monomial> terms;
    const std::size_t count = t(rng);
    for (std::size_t i = 0; i < count; ++i) {
        Monomial m(k);
        for (std::size_t j = 1; j <= k; ++j) {
            m.set_nu(j, e(rng));
        }
        terms.push_back(m);
    }
    return Polynomial::from_terms(k, std::move(terms));
}

}  // namespace oracle
