#include <doctest.h>

#include <set>

#include "hitforge/error.hpp"
#include "hitforge/hit_engine.hpp"
#include "hitforge/homomorphisms.hpp"
#include "hitforge/invariants.hpp"
#include "oracles.hpp"

using namespace hitforge;

namespace {

EngineOptions quiet(bool filter = true) {
    EngineOptions o;
    o.singer_filter = filter;
    return o;
}

// Every Sq^i(m), 0 < i <= n/2, written out with the reference expansion.
std::vector<Polynomial> reference_hit_generators(std::size_t k, std::uint64_t n, std::uint64_t max_square) {
    std::vector<Polynomial> gens;
    for (std::uint64_t i = 1; i <= max_square && i <= n; ++i) {
        for (const auto& m : oracle::all_monomials(k, n - i)) {
            auto img = oracle::sq(i, m);
            if (!img.is_zero()) {
                gens.push_back(std::move(img));
            }
        }
    }
    return gens;
}

}  // namespace

TEST_CASE("hit subspace examples") {
    HitEngine e(quiet());
    CHECK(e.hit_subspace(1, 3)->rank() == 0);
    CHECK(e.hit_subspace(2, 2)->rank() == 2);
    CHECK(e.dim_qp(1, 2) == 0);
    CHECK(e.dim_qp(4, 6) == 24);
    CHECK(e.dim_qp(3, 3) == 7);
    CHECK(e.dim_qp(4, 0) == 1);
    CHECK(e.admissible_basis(2, 3) == std::vector<Monomial>{Monomial{0, 3}, Monomial{1, 2}, Monomial{3, 0}});
    CHECK_THROWS_AS(e.hit_subspace(0, 3), DomainError);
    CHECK_THROWS_AS(e.hit_subspace(9, 3), DomainError);
}

TEST_CASE("hit space equals the span of all squares") {
    // The engine uses only Sq^{2^j}; the reference uses every Sq^i.
    HitEngine e(quiet(false));
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::uint64_t n = 1; n <= 10; ++n) {
            const auto gens = reference_hit_generators(k, n, n);
            const auto h = e.hit_subspace(k, n);
            CHECK(h->rank() == oracle::rank(gens));
            for (const auto& g : gens) {
                CHECK(contains(*h, g));
            }
        }
    }
}

TEST_CASE("qp report") {
    HitEngine e(quiet());
    const auto r = e.qp_report(4, 13);
    CHECK(r.dim_qp == 35);
    CHECK(r.dim_p == monomial_count(4, 13));
    CHECK(r.rank_hit + r.dim_qp == r.dim_p);
    CHECK(r.basis_plus.size() == 23);
    CHECK(r.basis_zero.size() + r.basis_plus.size() == r.dim_qp);
    std::size_t strata = 0;
    for (const auto& [w, count] : r.weight_strata) {
        CHECK(w.degree() == 13);
        strata += count;
    }
    CHECK(strata == r.dim_qp);
    CHECK(e.qp_report(4, 45).dim_qp == 105);
}

TEST_CASE("the Singer filter does not change the result") {
    HitEngine filtered(quiet(true));
    HitEngine plain(quiet(false));
    for (std::size_t k = 1; k <= 4; ++k) {
        for (std::uint64_t n = 0; n <= 20; ++n) {
            const auto a = filtered.hit_subspace(k, n);
            const auto b = plain.hit_subspace(k, n);
            REQUIRE(a->rows() == b->rows());
            CHECK(a->pivots() == b->pivots());
            for (std::size_t r = 0; r < a->rows(); ++r) {
                CHECK(a->row_polynomial(r) == b->row_polynomial(r));
            }
        }
    }
}

TEST_CASE("is_hit and equiv") {
    HitEngine e(quiet());
    CHECK(e.is_hit(parse_polynomial("x1^2")));
    CHECK_FALSE(e.is_hit(parse_polynomial("x1^3", 2)));
    CHECK(e.is_hit(parse_polynomial("x1^2*x2 + x1*x2^2")));
    CHECK(e.is_hit(Polynomial(3)));
    CHECK_THROWS_AS(e.is_hit(parse_polynomial("x1^2 + x2")), DimensionError);
    const auto f = parse_polynomial("x1^3*x2 + x2^4");
    CHECK(e.equiv(f, f));
    CHECK(e.equiv(parse_polynomial("x1^2*x2"), parse_polynomial("x1*x2^2")));
    CHECK_FALSE(e.equiv(parse_polynomial("x1^3", 2), parse_polynomial("x2^3")));
    CHECK_THROWS_AS(e.equiv(parse_polynomial("x1^3", 2), parse_polynomial("x2^2")), DimensionError);
    CHECK(e.is_admissible(Monomial{1, 2}));
    CHECK_FALSE(e.is_admissible(Monomial{2, 1}));
}

TEST_CASE("equiv_mod") {
    HitEngine e(quiet());
    const auto f = parse_polynomial("x1^3*x2*x3^2");
    const auto w = weight_vector(f.terms().front());
    CHECK(e.equiv_mod(f, f, 1, w));
    // a monomial of smaller weight is equivalent to zero
    const Monomial y{4, 1, 1};  // omega (2,0,1) < (2,2)
    CHECK(weight_vector(y) < WeightVector({2, 2}));
    CHECK(e.equiv_mod(Polynomial(y), Polynomial(3), 0, WeightVector({2, 2})));
    CHECK_THROWS_AS((e.equiv_mod(f, f, 1, WeightVector({1}))), DimensionError);
}

TEST_CASE("X_i^a X_j^b is equivalent to X_i^(2^d-2) X_j modulo A_2 and lower weights") {
    // k = 3, X_i is the product of the variables other than x_i
    auto X = [](std::size_t i) {
        Monomial m{1, 1, 1};
        m.set_nu(i, 0);
        return m;
    };
    auto pow = [](Monomial m, std::uint64_t e) {
        for (std::size_t j = 1; j <= m.vars(); ++j) {
            m.set_nu(j, m.nu(j) * e);
        }
        return m;
    };
    HitEngine e(quiet());
    for (unsigned d = 2; d <= 3; ++d) {
        const std::uint64_t top = (std::uint64_t{1} << d) - 1;
        for (std::size_t i = 1; i <= 3; ++i) {
            for (std::size_t j = 1; j <= 3; ++j) {
                if (i == j) {
                    continue;
                }
                for (std::uint64_t b = 1; b < top; ++b) {
                    const Monomial x = pow(X(i), top - b) * pow(X(j), b);
                    const Monomial target = pow(X(i), top - 1) * X(j);
                    CHECK(e.equiv_mod(x, target, 2, weight_vector(x)));
                }
            }
        }
    }
}

TEST_CASE("strict inadmissibility") {
    HitEngine e(quiet());
    CHECK(e.is_strictly_inadmissible(Monomial{2, 1}));
    CHECK(e.is_strictly_inadmissible(Monomial{2, 1, 1, 1}));
    CHECK_FALSE(e.is_strictly_inadmissible(Monomial{3}));
    auto X = [](std::size_t i) {
        Monomial m{1, 1, 1, 1};
        m.set_nu(i, 0);
        return m;
    };
    // X_i X_j^2, i < j
    for (std::size_t i = 1; i <= 4; ++i) {
        for (std::size_t j = i + 1; j <= 4; ++j) {
            CHECK(e.is_strictly_inadmissible(X(i) * X(j) * X(j)));
        }
    }
    // x_i^2 x_j x_k^3 and x_i^3 x_j^4 x_k^7 with i < j, k != i, j
    for (std::size_t i = 1; i <= 4; ++i) {
        for (std::size_t j = i + 1; j <= 4; ++j) {
            for (std::size_t k = 1; k <= 4; ++k) {
                if (k == i || k == j) {
                    continue;
                }
                Monomial a(4);
                a.set_nu(i, 2);
                a.set_nu(j, 1);
                a.set_nu(k, 3);
                CHECK(e.is_strictly_inadmissible(a));
                Monomial b(4);
                b.set_nu(i, 3);
                b.set_nu(j, 4);
                b.set_nu(k, 7);
                CHECK(e.is_strictly_inadmissible(b));
            }
        }
    }
    for (const Monomial& x : {Monomial{2, 2, 1, 1}, Monomial{2, 1, 2, 1}, Monomial{2, 1, 1, 2}, Monomial{1, 2, 2, 1},
                              Monomial{1, 6, 3, 4}, Monomial{3, 4, 1, 6}, Monomial{3, 4, 3, 4}}) {
        CHECK(e.is_strictly_inadmissible(x));
    }
}

TEST_CASE("strict inadmissibility against literal spans") {
    // x is strictly inadmissible iff x + (sum of smaller monomials) lies in
    // A_s^+ P_k: checked by asking whether x lies in the span of the A_s^+
    // images together with all monomials smaller than x.
    HitEngine e(quiet());
    for (std::size_t k = 2; k <= 3; ++k) {
        for (std::uint64_t n = 1; n <= 8; ++n) {
            const auto monos = oracle::all_monomials(k, n);
            for (const auto& x : monos) {
                const std::uint64_t s = weight_vector(x).length();
                std::vector<Polynomial> gens = reference_hit_generators(k, n, (std::uint64_t{1} << s) - 1);
                for (const auto& y : monos) {
                    if (compare(y, x) < 0) {
                        gens.push_back(Polynomial(y));
                    }
                }
                CHECK(e.is_strictly_inadmissible(x) == oracle::in_span(gens, Polynomial(x)));
            }
        }
    }
}

TEST_CASE("Kameko matrices") {
    HitEngine e(quiet());
    const auto km = e.kameko_matrix(4, 3);
    CHECK(km.source_basis.size() == e.dim_qp(4, 10));
    CHECK(km.target_basis.size() == e.dim_qp(4, 3));
    CHECK(km.rank == e.dim_qp(4, 3));
    CHECK(km.kernel_dim == e.dim_qp(4, 10) - e.dim_qp(4, 3));
    for (const auto& img : km.images) {
        for (const auto& t : img.terms()) {
            CHECK(std::find(km.target_basis.begin(), km.target_basis.end(), t) != km.target_basis.end());
        }
    }
    // mu(2m + 4) = 4 gives an isomorphism
    for (std::uint64_t m = 1; m <= 20; ++m) {
        if (mu(2 * m + 4).s == 4) {
            const auto iso = e.kameko_matrix(4, m);
            CHECK(iso.rank == iso.source_basis.size());
            CHECK(iso.rank == iso.target_basis.size());
            CHECK(iso.kernel_dim == 0);
        }
    }
    CHECK(kameko_bound(4) == 315);
    CHECK(kameko_bound(3) == 21);
}

TEST_CASE("Wood's theorem") {
    HitEngine e(quiet());
    for (std::size_t k = 1; k <= 4; ++k) {
        for (std::uint64_t n = 1; n <= 30; ++n) {
            if (mu(n).s > k) {
                CHECK(e.dim_qp(k, n) == 0);
            }
        }
    }
}

TEST_CASE("lower bound from the number of index pairs") {
    // n = sum_{i<k} (2^{d_i} - 1), d_1 > ... > d_{k-2} >= d_{k-1} = d,
    // m = sum_{i<k-1} (2^{d_i - d} - 1), p = min(k, d):
    // dim (QP_k)_n >= sum_{u=1}^{p} C(k, u) dim (QP_{k-1})_m
    HitEngine e(quiet());
    auto binom = [](std::size_t n, std::size_t r) {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < r; ++i) {
            c = c * (n - i) / (i + 1);
        }
        return c;
    };
    std::size_t checked = 0;
    auto check = [&](std::size_t k, std::vector<unsigned> d) {
        std::uint64_t n = 0;
        std::uint64_t m = 0;
        const unsigned last = d.back();
        for (std::size_t i = 0; i < d.size(); ++i) {
            n += (std::uint64_t{1} << d[i]) - 1;
            if (i + 1 < d.size()) {
                m += (std::uint64_t{1} << (d[i] - last)) - 1;
            }
        }
        if (n > 40) {
            return;
        }
        const std::size_t p = std::min<std::size_t>(k, last);
        std::uint64_t bound = 0;
        for (std::size_t u = 1; u <= p; ++u) {
            bound += binom(k, u) * e.dim_qp(k - 1, m);
        }
        CHECK(e.dim_qp(k, n) >= bound);
        ++checked;
    };
    for (unsigned d2 = 1; d2 <= 5; ++d2) {
        for (unsigned d1 = d2 + 1; d1 <= 6; ++d1) {
            check(3, {d1, d2});
            check(3, {d2, d2});
            for (unsigned d3 = 1; d3 <= d2; ++d3) {
                check(4, {d1, d2, d3});
            }
        }
    }
    CHECK(checked > 10);
}

TEST_CASE("closed forms equal computed bases") {
    HitEngine e(quiet());
    for (std::uint64_t n = 0; n <= 32; ++n) {
        CHECK(b1_basis(n) == e.admissible_basis(1, n));
        CHECK(b2_basis(n) == e.admissible_basis(2, n));
        CHECK(b3_basis(n) == e.admissible_basis(3, n));
    }
}
