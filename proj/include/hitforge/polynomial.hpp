#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hitforge {

inline constexpr std::size_t kMaxVars = 8;
inline constexpr std::uint64_t kMaxExponent = (std::uint64_t{1} << 63) - 1;

using Exponent = std::uint64_t;

/// A monomial x1^a1 ... xk^ak of P_k. Variables are numbered from 1.
///
/// The exponent tuple is the sigma vector of the monomial; the default
/// three-way comparison orders monomials of the same ring by sigma-lex.
class Monomial {
public:
    Monomial() = default;

    /// The unit monomial 1 of P_k.
    explicit Monomial(std::size_t k);

    /// Monomial with the given exponents, one per variable.
    Monomial(std::initializer_list<Exponent> exponents);
    explicit Monomial(std::span<const Exponent> exponents);

    std::size_t vars() const noexcept { return k_; }

    /// nu_j(x): the exponent of x_j, 1 <= j <= k.
    Exponent nu(std::size_t j) const;
    void set_nu(std::size_t j, Exponent value);

    std::span<const Exponent> exponents() const noexcept { return {exps_.data(), k_}; }

    std::uint64_t degree() const;
    bool is_unit() const noexcept;

    /// True when every exponent is positive (x lies in P_k^+).
    bool all_positive() const noexcept;

    Monomial operator*(const Monomial& other) const;

    /// Exact quotient; throws InvariantError when `other` does not divide.
    Monomial divided_by(const Monomial& other) const;
    bool divides(const Monomial& other) const noexcept;

    /// x^(2^s).
    Monomial frobenius(unsigned s) const;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::uint8_t k_ = 0;
    std::array<Exponent, kMaxVars> exps_{};
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

/// A polynomial of P_k over F2: a set of monomials.
///
/// Terms are kept sorted ascending in sigma-lex order without duplicates.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t k) : k_(k) {}
    Polynomial(const Monomial& m);  // NOLINT(google-explicit-constructor)

    /// Builds a polynomial from a list of monomials; repeated monomials cancel.
    static Polynomial from_terms(std::size_t k, std::vector<Monomial> terms);

    std::size_t vars() const noexcept { return k_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool contains(const Monomial& m) const;

    /// The common degree of all terms; nullopt for zero or mixed-degree input.
    std::optional<std::uint64_t> degree() const;
    bool is_homogeneous() const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator+=(const Monomial& m);
    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    Polynomial operator*(const Polynomial& other) const;

    /// f^(2^s); over F2 this squares every term.
    Polynomial frobenius(unsigned s) const;
    Polynomial pow(std::uint64_t e) const;

    bool operator==(const Polynomial&) const = default;

private:
    std::size_t k_ = 0;
    std::vector<Monomial> terms_;
};

/// X_J, the product of the variables x_j with j not in J (indices 1-based).
Monomial complement_monomial(std::size_t k, std::span<const std::size_t> excluded);

/// All monomials of degree n in k variables, ascending sigma-lex.
std::vector<Monomial> monomials_of_degree(std::size_t k, std::uint64_t n);

/// Visits every monomial of degree n in k variables in ascending sigma-lex order.
void for_each_monomial(std::size_t k, std::uint64_t n, const std::function<void(const Monomial&)>& fn);

/// Number of monomials of degree n in k variables, C(n+k-1, k-1).
std::uint64_t monomial_count(std::size_t k, std::uint64_t n);

/// Algebra map P_k -> P_target sending x_j to images[j-1].
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images, std::size_t target_k);

// Text forms. Monomials print as `x1^3*x2*x4^7` (unit prints as `1`);
// polynomials print their terms joined with ` + `, largest sigma first.
std::string to_string(const Monomial& m);
std::string to_string(const Polynomial& f);
std::string to_tuple_string(const Monomial& m);

/// Parses `x1^a*x2^b*...`, the tuple form `(a,b,...)`, `1`, `0`, and
/// `+`-separated sums of these. Whitespace is ignored. When `k` is not
/// given the variable count is the largest index seen (or the tuple length).
Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> k = std::nullopt);
Monomial parse_monomial(std::string_view text, std::optional<std::size_t> k = std::nullopt);

}  // namespace hitforge
