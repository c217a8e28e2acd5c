#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hitforge/polynomial.hpp"

namespace hitforge {

/// A pair (i;I) of N_k: 1 <= i < i_1 < ... < i_r <= k with 0 <= r < k.
struct IndexPair {
    std::size_t i = 1;
    std::vector<std::size_t> I;

    std::size_t length() const noexcept { return I.size(); }

    auto operator<=>(const IndexPair&) const = default;
    bool operator==(const IndexPair&) const = default;
};

/// Validates the ordering constraints for N_k; throws DomainError.
IndexPair make_index_pair(std::size_t k, std::size_t i, std::vector<std::size_t> I);

/// `(i;i1,i2,...)`, with `(i;)` for empty I.
std::string to_string(const IndexPair& pair);
IndexPair parse_index_pair(std::string_view text);

/// All of N_k ordered by i, then I lexicographically; 2^k - 1 pairs.
std::vector<IndexPair> enumerate_Nk(std::size_t k);

/// I u j (unchanged when j is already in I).
std::vector<std::size_t> union_with(const std::vector<std::size_t>& I, std::size_t j);
/// t_j = min(j, I).
std::size_t t_index(const std::vector<std::size_t>& I, std::size_t j);
/// I^(j) = (I u j) \ {t_j}.
std::vector<std::size_t> I_superscript(const std::vector<std::size_t>& I, std::size_t j);

/// f_i : P_{k-1} -> P_k, skipping x_i (k = y.vars() + 1).
Monomial f_sub(std::size_t i, const Monomial& y);
Polynomial f_sub(std::size_t i, const Polynomial& y);

/// The unique u (1 <= u <= r) for which x in P_{k-1} is u-compatible with
/// (i;I), or nullopt. Always 1 when I is empty. Throws InvariantError if two
/// values of u satisfy the conditions.
std::optional<std::size_t> compatible_u(const IndexPair& pair, const Monomial& x);

/// x_{(I,u)}: the divisor used by phi, as a monomial of P_k.
Monomial x_I_u(std::size_t k, const std::vector<std::size_t>& I, std::size_t u);

/// phi_(i;I)(x) for x in P_{k-1}: (x_i^(2^r - 1) f_i(x)) / x_(I,u) when x is
/// u-compatible, the zero polynomial of P_k otherwise.
Polynomial phi(const IndexPair& pair, const Monomial& x);

/// p_(i;I) : P_k -> P_{k-1}, x_j -> x_j (j < i), sum_{s in I} x_{s-1} (j = i),
/// x_{j-1} (j > i).
Polynomial p_proj(const IndexPair& pair, const Polynomial& f);

struct PhiFamilies {
    std::vector<Monomial> zero;  // Phi^0(B)
    std::vector<Monomial> plus;  // Phi^+(B)
    std::vector<Monomial> all;   // Phi(B)
};

/// Phi^0, Phi^+ and Phi of a set of monomials of P_{k-1}, k = vars + 1.
/// Each family is deduplicated and sorted ascending in the admissibility order.
PhiFamilies phi_families(const std::vector<Monomial>& B, std::size_t k);

/// psi(y) = X_emptyset y^2.
Monomial psi_up(const Monomial& y);
Polynomial psi_up(const Polynomial& y);

/// Kameko's down map: x1...xk y^2 -> y, other monomials -> 0.
std::optional<Monomial> kameko_down(const Monomial& x);
Polynomial kameko_down_poly(const Polynomial& f);

/// The GL_k generators: g = 1 sends x1 -> x1 + x2; g = i > 1 swaps x_{i-1}, x_i.
Polynomial linear_sub(std::size_t g, const Polynomial& f);

/// B_k(1^(s)): the admissible monomials of weight vector (1^(s)).
std::vector<Monomial> spike_stratum_basis(std::size_t k, unsigned s);

/// Closed-form admissible bases for k = 1, 2, 3, ascending in the admissibility order.
std::vector<Monomial> b1_basis(std::uint64_t n);
std::vector<Monomial> b2_basis(std::uint64_t n);
std::vector<Monomial> b3_basis(std::uint64_t n);

}  // namespace hitforge
