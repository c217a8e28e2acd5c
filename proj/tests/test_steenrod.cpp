#include <doctest.h>

#include <random>

#include "hitforge/error.hpp"
#include "hitforge/steenrod.hpp"
#include "oracles.hpp"

using namespace hitforge;

TEST_CASE("small squares") {
    CHECK(sq(1, parse_polynomial("x1*x2")) == parse_polynomial("x1^2*x2 + x1*x2^2"));
    CHECK(sq(0, Monomial{3, 5}) == Polynomial(Monomial{3, 5}));
    CHECK(sq(1, Monomial{2}).is_zero());
    CHECK(sq(2, Monomial{3}) == Polynomial(Monomial{5}));
    CHECK(sq(4, Monomial{3}).is_zero());
}

TEST_CASE("agrees with the binomial expansion") {
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::uint64_t n = 0; n <= 9; ++n) {
            for (const auto& x : oracle::all_monomials(k, n)) {
                for (std::uint64_t i = 0; i <= n + 1; ++i) {
                    CHECK(sq(i, x) == oracle::sq(i, x));
                }
            }
        }
    }
}

TEST_CASE("for_each_sq_term visits each term once") {
    const Monomial x{5, 6, 3};
    std::vector<Monomial> seen;
    for_each_sq_term(4, x, [&](const Monomial& t) { seen.push_back(t); });
    CHECK(Polynomial::from_terms(3, seen) == sq(4, x));
    CHECK(seen.size() == sq(4, x).size());
}

TEST_CASE("Adem relations") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const auto f = oracle::random_poly(rng, 3, 7, 4);
        CHECK(sq(1, sq(1, f)).is_zero());
        CHECK(sq(1, sq(2, f)) == sq(3, f));
        CHECK(sq(2, sq(2, f)) == sq(3, sq(1, f)));
    }
}

TEST_CASE("generator image lists") {
    const auto imgs = total_sq_images(2, 3);
    // Sq^1 on the 3 monomials of degree 2, Sq^2 on the 2 monomials of degree 1
    CHECK(imgs.size() == 5);
    for (const auto& g : imgs) {
        CHECK(g.image == sq(g.square, g.source));
        CHECK(g.source.degree() + g.square == 3);
    }
    const auto a2 = a_s_plus_images(2, 4, 2);
    for (const auto& g : a2) {
        CHECK(g.square >= 1);
        CHECK(g.square < 4);
    }
    CHECK_THROWS_AS(a_s_plus_images(2, 4, 0), DomainError);
    const auto k1 = a_s_plus_images(1, 2, 1);
    REQUIRE(k1.size() == 1);
    CHECK(k1[0].image == Polynomial(Monomial{2}));
    CHECK(a_s_plus_images(2, 3, 1).size() == 3);
}
