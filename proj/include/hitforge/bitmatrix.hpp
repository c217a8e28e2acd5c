#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hitforge/polynomial.hpp"

namespace hitforge {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
    return (bits + kWordBits - 1) / kWordBits;
}

/// An ordered set of monomials of degree n in P_k used as matrix columns.
///
/// Columns are sorted strictly descending in the admissibility order, so the
/// leading (lowest-index) bit of a row is its largest monomial.
class MonomialColumnBasis {
public:
    /// All monomials of degree n in k variables.
    static std::shared_ptr<const MonomialColumnBasis> full(std::size_t k, std::uint64_t n);

    /// An explicit subset of the degree-n monomials (duplicates are removed).
    static std::shared_ptr<const MonomialColumnBasis> of(std::size_t k, std::uint64_t n,
                                                          std::vector<Monomial> monomials);

    std::size_t vars() const noexcept { return k_; }
    std::uint64_t degree() const noexcept { return n_; }
    std::size_t size() const noexcept { return monomials_.size(); }
    const Monomial& operator[](std::size_t column) const { return monomials_[column]; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
    std::optional<std::size_t> index_of(const Monomial& m) const;

private:
    MonomialColumnBasis(std::size_t k, std::uint64_t n, std::vector<Monomial> monomials);

    std::size_t k_;
    std::uint64_t n_;
    std::vector<Monomial> monomials_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

using ColumnBasisPtr = std::shared_ptr<const MonomialColumnBasis>;

/// Dense GF(2) matrix whose columns are the monomials of a column basis.
///
/// Rows are packed little-endian: column c is bit c % 64 of word c / 64.
class BitMatrix {
public:
    explicit BitMatrix(ColumnBasisPtr basis);

    /// One row per polynomial. Throws DimensionError for a term outside the basis.
    static BitMatrix from_polynomials(ColumnBasisPtr basis, std::span<const Polynomial> polys);

    const MonomialColumnBasis& basis() const noexcept { return *basis_; }
    const ColumnBasisPtr& basis_ptr() const noexcept { return basis_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return basis_->size(); }
    std::size_t words_per_row() const noexcept { return stride_; }

    void append_row(const Polynomial& f);
    void append_row(std::span<const Word> bits);
    /// Appends a zero row and returns its words for direct filling.
    std::span<Word> append_zero_row();

    bool bit(std::size_t row, std::size_t col) const noexcept {
        return (data_[row * stride_ + col / kWordBits] >> (col % kWordBits)) & 1U;
    }
    std::span<const Word> row(std::size_t r) const noexcept { return {data_.data() + r * stride_, stride_}; }
    std::span<Word> row(std::size_t r) noexcept { return {data_.data() + r * stride_, stride_}; }
    Polynomial row_polynomial(std::size_t r) const;

    /// Bit vector of a polynomial in this matrix's column order.
    std::vector<Word> encode(const Polynomial& f) const;
    Polynomial decode(std::span<const Word> bits) const;

    bool is_reduced() const noexcept { return reduced_; }
    /// Pivot column of each row, increasing; valid only when reduced.
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
    std::size_t rank() const;

    /// Marks rows already in reduced echelon form with the given pivots.
    /// Verifies the claim and throws InvariantError when it is false.
    void adopt_reduced(std::vector<std::size_t> pivots);

    friend BitMatrix reduce(BitMatrix m, unsigned threads);

private:
    ColumnBasisPtr basis_;
    std::size_t stride_ = 0;
    std::size_t rows_ = 0;
    std::vector<Word> data_;
    bool reduced_ = false;
    std::vector<std::size_t> pivots_;
};

/// Reduced row echelon form; the row space is unchanged and zero rows are
/// dropped. Pivots are chosen deterministically (first row in current order
/// holding the column). `threads` = 0 uses the runtime default.
BitMatrix reduce(BitMatrix m, unsigned threads = 0);

/// Reduces `bits` against a reduced matrix in place; the result is zero iff
/// the original vector lies in the row space.
void reduce_vector(const BitMatrix& reduced, std::span<Word> bits);

/// Row-space membership. Throws DimensionError on a basis mismatch.
bool contains(const BitMatrix& reduced, const Polynomial& v);

/// Residue of v modulo the row space; supported on non-pivot columns only.
Polynomial normal_form(const BitMatrix& reduced, const Polynomial& v);

/// Column monomials that are not pivots, ascending in the admissibility order.
std::vector<Monomial> non_pivot_monomials(const BitMatrix& reduced);

/// Indices of a subset of `generators` summing to `target`, or nullopt when
/// `target` is outside their span.
std::optional<std::vector<std::size_t>> span_certificate(ColumnBasisPtr basis,
                                                         std::span<const Polynomial> generators,
                                                         const Polynomial& target);

}  // namespace hitforge
