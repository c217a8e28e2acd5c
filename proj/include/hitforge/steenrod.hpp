#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "hitforge/polynomial.hpp"

namespace hitforge {

/// Sq^i(x) for a monomial x, via the Cartan formula and Lucas' theorem.
///
/// Each term of the result corresponds to one split i = t_1 + ... + t_k with
/// t_j a binary submask of nu_j(x); distinct splits give distinct monomials,
/// so no cancellation happens inside a single monomial's image.
Polynomial sq(std::uint64_t i, const Monomial& x);

/// Sq^i applied termwise (the operation is linear; f need not be homogeneous).
Polynomial sq(std::uint64_t i, const Polynomial& f);

/// Calls `fn` once for every term of Sq^i(x) without materialising it.
void for_each_sq_term(std::uint64_t i, const Monomial& x, const std::function<void(const Monomial&)>& fn);

/// Sq^{square}(source) together with its generator tag.
struct GeneratorImage {
    std::uint64_t square = 0;
    Monomial source;
    Polynomial image;
};

/// Sq^{2^j}(m) for every monomial m of degree n - 2^j and every j with
/// 2^j <= n and j <= max_j. Their span is the hit subspace A^+P_k in degree n.
std::vector<GeneratorImage> total_sq_images(std::size_t k, std::uint64_t n,
                                            unsigned max_j = std::numeric_limits<unsigned>::max());

/// Sq^u(m) for 1 <= u < 2^s and m of degree n - u; spans A_s^+ P_k in degree n.
std::vector<GeneratorImage> a_s_plus_images(std::size_t k, std::uint64_t n, unsigned s);

}  // namespace hitforge
