#include "hitforge/hit_engine.hpp"

#include <algorithm>
#include <bit>
#include <iostream>

#include "hitforge/cache.hpp"
#include "hitforge/error.hpp"
#include "hitforge/homomorphisms.hpp"
#include "hitforge/steenrod.hpp"

namespace hitforge {

namespace {

// Appends the bit row of Sq^square(source) restricted to the matrix columns;
// terms outside the column set are dropped.
void append_image_row(BitMatrix& m, std::uint64_t square, const Monomial& source, std::vector<Word>& scratch) {
    std::fill(scratch.begin(), scratch.end(), 0);
    bool any = false;
    const auto& basis = m.basis();
    for_each_sq_term(square, source, [&](const Monomial& t) {
        if (auto c = basis.index_of(t)) {
            scratch[*c / kWordBits] ^= Word{1} << (*c % kWordBits);
            any = true;
        }
    });
    if (any && std::any_of(scratch.begin(), scratch.end(), [](Word w) { return w != 0; })) {
        m.append_row(scratch);
    }
}

void check_homogeneous(const Polynomial& f) {
    if (!f.is_homogeneous()) {
        throw DimensionError("polynomial " + to_string(f) + " is not homogeneous");
    }
}

}  // namespace

HitEngine::HitEngine(EngineOptions options) : options_(std::move(options)) {}

void HitEngine::warn(const std::string& message) const {
    if (options_.warn) {
        options_.warn(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

std::shared_ptr<const BitMatrix> HitEngine::compute_hit_subspace(std::size_t k, std::uint64_t n) const {
    auto full = MonomialColumnBasis::full(k, n);
    if (n == 0) {
        return std::make_shared<const BitMatrix>(reduce(BitMatrix(full)));
    }

    const bool filter = options_.singer_filter && mu(n).s <= k;
    ColumnBasisPtr columns = full;
    std::vector<std::size_t> dropped;  // full-basis columns proven hit up front
    if (filter) {
        const WeightVector spike_weight = weight_vector(minimal_spike(k, n));
        std::vector<Monomial> kept;
        for (std::size_t c = 0; c < full->size(); ++c) {
            if (weight_vector((*full)[c]) < spike_weight) {
                dropped.push_back(c);
            } else {
                kept.push_back((*full)[c]);
            }
        }
        columns = MonomialColumnBasis::of(k, n, std::move(kept));
    }

    BitMatrix gens(columns);
    std::vector<Word> scratch(gens.words_per_row());
    // A is generated by the Sq^{2^j}; Sq^i vanishes on degree < i.
    for (std::uint64_t square = 1; square <= n - square; square <<= 1) {
        for_each_monomial(k, n - square, [&](const Monomial& m) { append_image_row(gens, square, m, scratch); });
    }
    BitMatrix reduced = reduce(std::move(gens), options_.threads);
    if (!filter) {
        return std::make_shared<const BitMatrix>(std::move(reduced));
    }

    // Lift back to all columns: each dropped monomial is its own pivot row,
    // and both column orders agree, so merging by pivot keeps the form reduced.
    std::vector<std::size_t> to_full(columns->size());
    for (std::size_t c = 0; c < columns->size(); ++c) {
        to_full[c] = *full->index_of((*columns)[c]);
    }
    BitMatrix lifted(full);
    std::vector<std::size_t> pivots;
    pivots.reserve(dropped.size() + reduced.rows());
    std::size_t next_dropped = 0;
    std::size_t next_row = 0;
    auto emit_row = [&](std::size_t r) {
        auto dst = lifted.append_zero_row();
        const auto src = reduced.row(r);
        for (std::size_t w = 0; w < src.size(); ++w) {
            for (Word x = src[w]; x != 0; x &= x - 1) {
                const std::size_t c = to_full[w * kWordBits + static_cast<std::size_t>(std::countr_zero(x))];
                dst[c / kWordBits] |= Word{1} << (c % kWordBits);
            }
        }
        pivots.push_back(to_full[reduced.pivots()[r]]);
    };
    while (next_dropped < dropped.size() || next_row < reduced.rows()) {
        const bool take_dropped =
            next_row == reduced.rows() ||
            (next_dropped < dropped.size() && dropped[next_dropped] < to_full[reduced.pivots()[next_row]]);
        if (take_dropped) {
            const std::size_t c = dropped[next_dropped++];
            auto dst = lifted.append_zero_row();
            dst[c / kWordBits] |= Word{1} << (c % kWordBits);
            pivots.push_back(c);
        } else {
            emit_row(next_row++);
        }
    }
    lifted.adopt_reduced(std::move(pivots));
    return std::make_shared<const BitMatrix>(std::move(lifted));
}

std::shared_ptr<const BitMatrix> HitEngine::hit_subspace(std::size_t k, std::uint64_t n) {
    if (k == 0 || k > kMaxVars) {
        throw DomainError("k must lie in 1.." + std::to_string(kMaxVars));
    }
    const auto key = std::make_pair(k, n);
    {
        std::lock_guard lock(mutex_);
        if (auto it = hit_memo_.find(key); it != hit_memo_.end()) {
            return it->second;
        }
    }
    std::shared_ptr<const BitMatrix> result;
    if (options_.cache_dir) {
        std::string problem;
        auto loaded = cache::load(*options_.cache_dir, MonomialColumnBasis::full(k, n), &problem);
        if (loaded) {
            result = std::make_shared<const BitMatrix>(std::move(*loaded));
        } else if (!problem.empty()) {
            warn("ignoring cache entry (" + problem + "); recomputing");
        }
    }
    if (!result) {
        result = compute_hit_subspace(k, n);
        if (options_.cache_dir) {
            try {
                cache::store(*options_.cache_dir, *result);
            } catch (const std::exception& e) {
                warn(std::string("cache write failed: ") + e.what());
            }
        }
    }
    std::lock_guard lock(mutex_);
    return hit_memo_.emplace(key, std::move(result)).first->second;
}

DegreeComponentReport HitEngine::qp_report(std::size_t k, std::uint64_t n) {
    const auto hit = hit_subspace(k, n);
    DegreeComponentReport report;
    report.k = k;
    report.n = n;
    report.dim_p = hit->cols();
    report.rank_hit = hit->rank();
    report.basis = non_pivot_monomials(*hit);
    report.dim_qp = report.basis.size();
    if (report.dim_p != report.rank_hit + report.dim_qp) {
        throw InvariantError("rank-nullity failed for (QP_" + std::to_string(k) + ")_" + std::to_string(n));
    }
    for (const auto& x : report.basis) {
        (x.all_positive() ? report.basis_plus : report.basis_zero).push_back(x);
        ++report.weight_strata[weight_vector(x)];
    }
    return report;
}

std::vector<Monomial> HitEngine::admissible_basis(std::size_t k, std::uint64_t n) {
    return non_pivot_monomials(*hit_subspace(k, n));
}

std::uint64_t HitEngine::dim_qp(std::size_t k, std::uint64_t n) {
    const auto hit = hit_subspace(k, n);
    return hit->cols() - hit->rank();
}

bool HitEngine::is_admissible(const Monomial& x) {
    const auto hit = hit_subspace(x.vars(), x.degree());
    const std::size_t c = *hit->basis().index_of(x);
    return !std::binary_search(hit->pivots().begin(), hit->pivots().end(), c);
}

bool HitEngine::is_hit(const Polynomial& f) {
    check_homogeneous(f);
    if (f.is_zero()) {
        return true;
    }
    const std::uint64_t n = *f.degree();
    if (f.size() == 1 && mu(n).s <= f.vars() && singer_is_hit(f.terms().front())) {
        return true;
    }
    return contains(*hit_subspace(f.vars(), n), f);
}

bool HitEngine::equiv(const Polynomial& f, const Polynomial& g) {
    check_homogeneous(f);
    check_homogeneous(g);
    if (!f.is_zero() && !g.is_zero() && *f.degree() != *g.degree()) {
        throw DimensionError("equivalence needs polynomials of the same degree");
    }
    return is_hit(f + g);
}

bool HitEngine::equiv_mod(const Polynomial& f, const Polynomial& g, unsigned s, const WeightVector& omega) {
    check_homogeneous(f);
    check_homogeneous(g);
    const std::uint64_t n = omega.degree();
    for (const auto* p : {&f, &g}) {
        if (!p->is_zero() && *p->degree() != n) {
            throw DimensionError("degree differs from deg omega = " + std::to_string(n));
        }
    }
    const Polynomial h = f + g;
    if (h.is_zero()) {
        return true;
    }
    const std::size_t k = h.vars();
    auto columns = MonomialColumnBasis::full(k, n);
    BitMatrix gens(columns);
    for (const auto& y : columns->monomials()) {
        if (weight_vector(y) < omega) {
            gens.append_row(Polynomial(y));
        }
    }
    if (s > 0) {
        for (const auto& img : a_s_plus_images(k, n, s)) {
            gens.append_row(img.image);
        }
    }
    return contains(reduce(std::move(gens), options_.threads), h);
}

std::shared_ptr<const BitMatrix> HitEngine::a_s_subspace(std::size_t k, std::uint64_t n, unsigned s) {
    const auto key = std::make_tuple(k, n, s);
    {
        std::lock_guard lock(mutex_);
        if (auto it = a_s_memo_.find(key); it != a_s_memo_.end()) {
            return it->second;
        }
    }
    BitMatrix gens(MonomialColumnBasis::full(k, n));
    std::vector<Word> scratch(gens.words_per_row());
    const std::uint64_t bound = s >= 63 ? n + 1 : std::min<std::uint64_t>(std::uint64_t{1} << s, n + 1);
    for (std::uint64_t u = 1; u < bound && u <= n - u; ++u) {
        for_each_monomial(k, n - u, [&](const Monomial& m) { append_image_row(gens, u, m, scratch); });
    }
    auto result = std::make_shared<const BitMatrix>(reduce(std::move(gens), options_.threads));
    std::lock_guard lock(mutex_);
    return a_s_memo_.emplace(key, std::move(result)).first->second;
}

bool HitEngine::is_strictly_inadmissible(const Monomial& x) {
    const std::uint64_t n = x.degree();
    if (n == 0) {
        return false;
    }
    const auto s = static_cast<unsigned>(weight_vector(x).length());
    // x is a sum of smaller monomials modulo a subspace H exactly when some
    // element of H has leading monomial x, i.e. x is a pivot column of H.
    const auto h = a_s_subspace(x.vars(), n, s);
    const std::size_t c = *h->basis().index_of(x);
    return std::binary_search(h->pivots().begin(), h->pivots().end(), c);
}

KamekoMatrix HitEngine::kameko_matrix(std::size_t k, std::uint64_t m) {
    KamekoMatrix out;
    out.k = k;
    out.m = m;
    out.source_basis = admissible_basis(k, 2 * m + k);
    const auto target_hit = hit_subspace(k, m);
    out.target_basis = non_pivot_monomials(*target_hit);

    auto target_columns = MonomialColumnBasis::of(k, m, out.target_basis);
    BitMatrix images(target_columns);
    for (const auto& x : out.source_basis) {
        Polynomial image(k);
        if (auto y = kameko_down(x)) {
            image = normal_form(*target_hit, Polynomial(*y));
        }
        images.append_row(image);
        out.images.push_back(std::move(image));
    }
    out.rank = reduce(std::move(images), options_.threads).rank();
    out.kernel_dim = out.source_basis.size() - out.rank;
    return out;
}

std::uint64_t kameko_bound(std::size_t k) {
    std::uint64_t p = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        p *= (std::uint64_t{1} << i) - 1;
    }
    return p;
}

}  // namespace hitforge
