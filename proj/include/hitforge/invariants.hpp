#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hitforge/polynomial.hpp"

namespace hitforge {

/// alpha_i(a): the i-th dyadic digit of a.
constexpr unsigned alpha_bit(std::uint64_t a, unsigned i) noexcept {
    return i < 64 ? static_cast<unsigned>((a >> i) & 1U) : 0U;
}

/// alpha(a): the number of ones in the dyadic expansion of a.
unsigned alpha(std::uint64_t a) noexcept;

/// The weight vector (omega_1, omega_2, ...) with trailing zeros trimmed.
///
/// Comparison is left-lexicographic with implicit zero padding; because the
/// representation is trimmed, that coincides with plain lexicographic
/// comparison of the stored entries.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<std::uint32_t> entries);

    /// omega_i, 1-based; zero past the stored length.
    std::uint32_t operator[](std::size_t i) const noexcept;
    std::size_t length() const noexcept { return entries_.size(); }
    const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }

    /// deg omega = sum_i 2^(i-1) omega_i.
    std::uint64_t degree() const;

    auto operator<=>(const WeightVector&) const = default;
    bool operator==(const WeightVector&) const = default;

private:
    std::vector<std::uint32_t> entries_;
};

/// Run-length form, e.g. `(3^(2),1)`; the empty vector prints as `()`.
std::string to_string(const WeightVector& w);

/// Parses the run-length form written by to_string (plain lists work too).
WeightVector parse_weight_vector(const std::string& text);

WeightVector weight_vector(const Monomial& x);

/// n = 2^{d_1} + ... + 2^{d_s} - s with s = mu(n) and d_1 > ... > d_{s-1} >= d_s > 0.
struct MuDecomposition {
    std::uint64_t n = 0;
    unsigned s = 0;
    std::vector<unsigned> d;
};

/// mu(n): the least number of terms 2^d - 1 (d > 0) summing to n. mu(0) = 0.
MuDecomposition mu(std::uint64_t n);

/// The admissibility order: omega left-lex, then sigma left-lex.
std::strong_ordering compare(const Monomial& x, const Monomial& y);

struct AdmissibleLess {
    bool operator()(const Monomial& x, const Monomial& y) const { return compare(x, y) < 0; }
};

/// Every exponent has the form 2^s - 1.
bool is_spike(const Monomial& x);

/// The minimal spike of degree n in P_k. Throws DomainError when mu(n) > k.
Monomial minimal_spike(std::size_t k, std::uint64_t n);

/// Singer's criterion: omega(x) < omega(minimal spike) implies x is hit.
/// A false result carries no information. Throws DomainError when mu(deg x) > k.
bool singer_is_hit(const Monomial& x);

}  // namespace hitforge
