#include "hitforge/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "hitforge/error.hpp"
#include "hitforge/invariants.hpp"

#ifdef HITFORGE_HAVE_OPENMP
#include <omp.h>
#endif

namespace hitforge {

MonomialColumnBasis::MonomialColumnBasis(std::size_t k, std::uint64_t n, std::vector<Monomial> monomials)
    : k_(k), n_(n), monomials_(std::move(monomials)) {
    for (const auto& m : monomials_) {
        if (m.vars() != k || m.degree() != n) {
            throw DimensionError("column monomial " + to_string(m) + " is not in (P_" + std::to_string(k) + ")_" +
                                 std::to_string(n));
        }
    }
    // Sort by cached weight vectors; compare() would recompute them each time.
    std::vector<std::pair<WeightVector, Monomial>> keyed;
    keyed.reserve(monomials_.size());
    for (auto& m : monomials_) {
        keyed.emplace_back(weight_vector(m), m);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return b < a; });
    keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
    monomials_.clear();
    index_.reserve(keyed.size());
    for (auto& [w, m] : keyed) {
        index_.emplace(m, monomials_.size());
        monomials_.push_back(m);
    }
}

std::shared_ptr<const MonomialColumnBasis> MonomialColumnBasis::full(std::size_t k, std::uint64_t n) {
    return of(k, n, monomials_of_degree(k, n));
}

std::shared_ptr<const MonomialColumnBasis> MonomialColumnBasis::of(std::size_t k, std::uint64_t n,
                                                                    std::vector<Monomial> monomials) {
    return std::shared_ptr<const MonomialColumnBasis>(new MonomialColumnBasis(k, n, std::move(monomials)));
}

std::optional<std::size_t> MonomialColumnBasis::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

BitMatrix::BitMatrix(ColumnBasisPtr basis) : basis_(std::move(basis)), stride_(words_for(basis_->size())) {}

BitMatrix BitMatrix::from_polynomials(ColumnBasisPtr basis, std::span<const Polynomial> polys) {
    BitMatrix m(std::move(basis));
    m.data_.reserve(polys.size() * m.stride_);
    for (const auto& f : polys) {
        m.append_row(f);
    }
    return m;
}

std::span<Word> BitMatrix::append_zero_row() {
    reduced_ = false;
    pivots_.clear();
    data_.resize(data_.size() + stride_, 0);
    ++rows_;
    return row(rows_ - 1);
}

void BitMatrix::append_row(std::span<const Word> bits) {
    if (bits.size() != stride_) {
        throw DimensionError("row width mismatch");
    }
    auto dst = append_zero_row();
    std::copy(bits.begin(), bits.end(), dst.begin());
}

void BitMatrix::append_row(const Polynomial& f) {
    auto bits = encode(f);
    append_row(bits);
}

std::vector<Word> BitMatrix::encode(const Polynomial& f) const {
    std::vector<Word> bits(stride_, 0);
    for (const auto& t : f.terms()) {
        auto c = basis_->index_of(t);
        if (!c) {
            throw DimensionError("monomial " + to_string(t) + " is not a column of (P_" +
                                 std::to_string(basis_->vars()) + ")_" + std::to_string(basis_->degree()));
        }
        bits[*c / kWordBits] |= Word{1} << (*c % kWordBits);
    }
    return bits;
}

Polynomial BitMatrix::decode(std::span<const Word> bits) const {
    std::vector<Monomial> terms;
    for (std::size_t w = 0; w < bits.size(); ++w) {
        for (Word x = bits[w]; x != 0; x &= x - 1) {
            terms.push_back((*basis_)[w * kWordBits + static_cast<std::size_t>(std::countr_zero(x))]);
        }
    }
    return Polynomial::from_terms(basis_->vars(), std::move(terms));
}

Polynomial BitMatrix::row_polynomial(std::size_t r) const {
    return decode(row(r));
}

std::size_t BitMatrix::rank() const {
    if (!reduced_) {
        throw InvariantError("rank() needs a reduced matrix");
    }
    return rows_;
}

void BitMatrix::adopt_reduced(std::vector<std::size_t> pivots) {
    if (pivots.size() != rows_) {
        throw InvariantError("pivot count does not match row count");
    }
    std::vector<Word> pivot_mask(stride_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (pivots[r] >= cols() || (r > 0 && pivots[r] <= pivots[r - 1])) {
            throw InvariantError("pivots must be strictly increasing column indices");
        }
        pivot_mask[pivots[r] / kWordBits] |= Word{1} << (pivots[r] % kWordBits);
    }
    // Each row must lead with its own pivot and meet no other pivot column.
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto rw = row(r);
        std::size_t lead = cols();
        int hits = 0;
        for (std::size_t w = 0; w < stride_; ++w) {
            if (lead == cols() && rw[w] != 0) {
                lead = w * kWordBits + static_cast<std::size_t>(std::countr_zero(rw[w]));
            }
            hits += std::popcount(rw[w] & pivot_mask[w]);
        }
        if (lead != pivots[r]) {
            throw InvariantError("row " + std::to_string(r) + " does not lead with its pivot");
        }
        if (hits != 1) {
            throw InvariantError("pivot column is not cleared in other rows");
        }
    }
    pivots_ = std::move(pivots);
    reduced_ = true;
}

BitMatrix reduce(BitMatrix m, unsigned threads) {
    if (m.reduced_) {
        return m;
    }
    const std::size_t stride = m.stride_;
    const std::size_t cols = m.cols();
    std::size_t rows = m.rows_;
    Word* data = m.data_.data();
    std::vector<std::size_t> pivots;

#ifdef HITFORGE_HAVE_OPENMP
    const int team = threads == 0 ? omp_get_max_threads() : static_cast<int>(threads);
#else
    (void)threads;
#endif

    // Zero rows never contribute a pivot; drop them before elimination.
    {
        std::size_t out = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            const Word* src = data + r * stride;
            if (std::any_of(src, src + stride, [](Word w) { return w != 0; })) {
                if (out != r) {
                    std::copy(src, src + stride, data + out * stride);
                }
                ++out;
            }
        }
        rows = out;
    }

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        const std::size_t w = c / kWordBits;
        const Word mask = Word{1} << (c % kWordBits);
        std::size_t p = rank;
        while (p < rows && (data[p * stride + w] & mask) == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != rank) {
            std::swap_ranges(data + p * stride, data + (p + 1) * stride, data + rank * stride);
        }
        const Word* pivot = data + rank * stride;
        const std::size_t tail = stride - w;
        const auto n_rows = static_cast<std::ptrdiff_t>(rows);
        const auto pivot_row = static_cast<std::ptrdiff_t>(rank);
#ifdef HITFORGE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(team) if (team > 1 && rows * tail > (1U << 18))
#endif
        for (std::ptrdiff_t r = 0; r < n_rows; ++r) {
            Word* dst = data + static_cast<std::size_t>(r) * stride;
            if (r != pivot_row && (dst[w] & mask) != 0) {
                for (std::size_t i = 0; i < tail; ++i) {
                    dst[w + i] ^= pivot[w + i];
                }
            }
        }
        pivots.push_back(c);
        ++rank;

        // Rows below the pivot that became zero are compacted away now and
        // then, which keeps the per-column scan proportional to live rows.
        if ((rank & 63U) == 0) {
            std::size_t out = rank;
            for (std::size_t r = rank; r < rows; ++r) {
                const Word* src = data + r * stride;
                if (std::any_of(src + w, src + stride, [](Word x) { return x != 0; })) {
                    if (out != r) {
                        std::copy(src, src + stride, data + out * stride);
                    }
                    ++out;
                }
            }
            rows = out;
        }
    }
    m.rows_ = rank;
    m.data_.resize(rank * stride);
    m.data_.shrink_to_fit();
    m.pivots_ = std::move(pivots);
    m.reduced_ = true;
    return m;
}

void reduce_vector(const BitMatrix& reduced, std::span<Word> bits) {
    if (!reduced.is_reduced()) {
        throw InvariantError("reduce_vector needs a reduced matrix");
    }
    if (bits.size() != reduced.words_per_row()) {
        throw DimensionError("vector width mismatch");
    }
    const auto& pivots = reduced.pivots();
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const std::size_t c = pivots[r];
        const std::size_t w = c / kWordBits;
        if ((bits[w] >> (c % kWordBits)) & 1U) {
            const auto rw = reduced.row(r);
            for (std::size_t i = w; i < bits.size(); ++i) {
                bits[i] ^= rw[i];
            }
        }
    }
}

namespace {

void check_same_component(const BitMatrix& m, const Polynomial& v) {
    if (v.is_zero()) {
        return;
    }
    if (v.vars() != m.basis().vars()) {
        throw DimensionError("polynomial in P_" + std::to_string(v.vars()) + ", matrix over P_" +
                             std::to_string(m.basis().vars()));
    }
    auto d = v.degree();
    if (!d || *d != m.basis().degree()) {
        throw DimensionError("polynomial is not homogeneous of degree " + std::to_string(m.basis().degree()));
    }
}

}  // namespace

bool contains(const BitMatrix& reduced, const Polynomial& v) {
    check_same_component(reduced, v);
    auto bits = reduced.encode(v);
    reduce_vector(reduced, bits);
    return std::all_of(bits.begin(), bits.end(), [](Word w) { return w == 0; });
}

Polynomial normal_form(const BitMatrix& reduced, const Polynomial& v) {
    check_same_component(reduced, v);
    auto bits = reduced.encode(v);
    reduce_vector(reduced, bits);
    return reduced.decode(bits);
}

std::vector<Monomial> non_pivot_monomials(const BitMatrix& reduced) {
    if (!reduced.is_reduced()) {
        throw InvariantError("non_pivot_monomials needs a reduced matrix");
    }
    const auto& pivots = reduced.pivots();
    std::vector<Monomial> out;
    std::size_t p = pivots.size();
    for (std::size_t c = reduced.cols(); c-- > 0;) {
        if (p > 0 && pivots[p - 1] == c) {
            --p;
            continue;
        }
        out.push_back(reduced.basis()[c]);
    }
    return out;
}

std::optional<std::vector<std::size_t>> span_certificate(ColumnBasisPtr basis, std::span<const Polynomial> generators,
                                                         const Polynomial& target) {
    BitMatrix enc(basis);
    const std::size_t stride = enc.words_per_row();
    const std::size_t tags = words_for(generators.size());

    struct Row {
        std::vector<Word> bits;
        std::vector<Word> combo;
    };
    std::map<std::size_t, Row> by_lead;

    auto lead_of = [](const std::vector<Word>& bits) -> std::optional<std::size_t> {
        for (std::size_t w = 0; w < bits.size(); ++w) {
            if (bits[w] != 0) {
                return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits[w]));
            }
        }
        return std::nullopt;
    };
    auto eliminate = [&](Row& row) {
        while (auto lead = lead_of(row.bits)) {
            auto it = by_lead.find(*lead);
            if (it == by_lead.end()) {
                return *lead;
            }
            for (std::size_t i = 0; i < stride; ++i) {
                row.bits[i] ^= it->second.bits[i];
            }
            for (std::size_t i = 0; i < tags; ++i) {
                row.combo[i] ^= it->second.combo[i];
            }
        }
        return enc.cols();
    };

    for (std::size_t g = 0; g < generators.size(); ++g) {
        Row row{enc.encode(generators[g]), std::vector<Word>(tags, 0)};
        row.combo[g / kWordBits] |= Word{1} << (g % kWordBits);
        const std::size_t lead = eliminate(row);
        if (lead != enc.cols()) {
            by_lead.emplace(lead, std::move(row));
        }
    }
    check_same_component(enc, target);
    Row t{enc.encode(target), std::vector<Word>(tags, 0)};
    if (eliminate(t) != enc.cols()) {
        return std::nullopt;
    }
    std::vector<std::size_t> subset;
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if ((t.combo[g / kWordBits] >> (g % kWordBits)) & 1U) {
            subset.push_back(g);
        }
    }
    return subset;
}

}  // namespace hitforge
