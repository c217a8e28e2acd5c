#include <doctest.h>

#include <algorithm>
#include <random>

#include "hitforge/error.hpp"
#include "hitforge/invariants.hpp"
#include "oracles.hpp"

using namespace hitforge;

TEST_CASE("alpha") {
    CHECK(alpha_bit(6, 0) == 0);
    CHECK(alpha_bit(6, 1) == 1);
    CHECK(alpha(7) == 3);
    CHECK(alpha(0) == 0);
}

TEST_CASE("mu on examples") {
    const auto m45 = mu(45);
    CHECK(m45.s == 3);
    CHECK(m45.d == std::vector<unsigned>{5, 3, 3});
    CHECK(mu(7).s == 1);
    CHECK(mu(7).d == std::vector<unsigned>{3});
    CHECK(mu(6).d == std::vector<unsigned>{2, 2});
    CHECK(mu(0).s == 0);
    CHECK(mu(0).d.empty());
}

TEST_CASE("mu matches exhaustive search up to 2^12") {
    constexpr std::size_t kLimit = 4096;
    // least[n]: fewest terms 2^d - 1 (d > 0) summing to n
    std::vector<unsigned> least(kLimit + 1, 1000);
    least[0] = 0;
    for (std::size_t n = 1; n <= kLimit; ++n) {
        for (unsigned d = 1; (std::size_t{1} << d) - 1 <= n; ++d) {
            least[n] = std::min(least[n], least[n - ((std::size_t{1} << d) - 1)] + 1);
        }
    }
    for (std::size_t n = 0; n <= kLimit; ++n) {
        const auto m = mu(n);
        REQUIRE(m.s == least[n]);
        REQUIRE(m.d.size() == m.s);
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < m.d.size(); ++i) {
            sum += (std::uint64_t{1} << m.d[i]) - 1;
            CHECK(m.d[i] > 0);
            if (i + 2 < m.d.size()) {
                CHECK(m.d[i] > m.d[i + 1]);
            }
            if (i + 1 < m.d.size()) {
                CHECK(m.d[i] >= m.d[i + 1]);
            }
        }
        CHECK(sum == n);
    }
}

TEST_CASE("weight vectors") {
    CHECK(weight_vector(Monomial{31, 7, 7, 0}) == WeightVector({3, 3, 3, 1, 1}));
    CHECK(weight_vector(Monomial{1, 1, 1, 1}) == WeightVector({4}));
    CHECK(weight_vector(Monomial{3, 4, 1, 7}) == WeightVector({3, 2, 2}));
    CHECK(weight_vector(Monomial(3)).length() == 0);
    CHECK(WeightVector({3, 2, 0, 0}).length() == 2);
    CHECK(WeightVector({3, 2, 2}).degree() == 15);
    CHECK(WeightVector({3, 1}) < WeightVector({3, 2}));
    CHECK(WeightVector({3}) < WeightVector({3, 1}));
    CHECK(to_string(WeightVector({3, 3, 1})) == "(3^(2),1)");
    CHECK(to_string(WeightVector()) == "()");
    CHECK(parse_weight_vector("(3^(2),1)") == WeightVector({3, 3, 1}));
    CHECK(parse_weight_vector("(4,2)") == WeightVector({4, 2}));
}

TEST_CASE("weight vector degree equals monomial degree") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const Monomial x{rng() % 200, rng() % 200, rng() % 200, rng() % 200};
        CHECK(weight_vector(x).degree() == x.degree());
    }
}

TEST_CASE("admissibility order") {
    std::vector<Monomial> b{Monomial{3, 0}, Monomial{0, 3}, Monomial{1, 2}};
    std::sort(b.begin(), b.end(), AdmissibleLess{});
    CHECK(b == std::vector<Monomial>{Monomial{0, 3}, Monomial{1, 2}, Monomial{3, 0}});
    // omega decides first: x1^2 x2 has omega (1,1), x1 x2 x3 ... is not comparable across k,
    // so use degree 4 in P_2: x1^3 x2 (2,1) > x1^2 x2^2 (0,2)
    CHECK(compare(Monomial{3, 1}, Monomial{2, 2}) > 0);
    CHECK(compare(Monomial{2, 2}, Monomial{2, 2}) == 0);
}

TEST_CASE("spikes and minimal spikes") {
    CHECK(is_spike(Monomial{7, 3, 0, 1}));
    CHECK_FALSE(is_spike(Monomial{2, 1}));
    CHECK(minimal_spike(4, 45) == Monomial{31, 7, 7, 0});
    CHECK(minimal_spike(4, 13) == Monomial{7, 3, 3, 0});
    CHECK(minimal_spike(2, 3) == Monomial{3, 0});
    CHECK(minimal_spike(3, 0) == Monomial(3));
    CHECK_THROWS_AS(minimal_spike(1, 4), DomainError);
    // for n = 2^{s+1} - 3 at k = 4 the minimal spike is x1^{2^s-1} x2^{2^{s-1}-1} x3^{2^{s-1}-1}
    for (unsigned s = 2; s <= 8; ++s) {
        const std::uint64_t n = (std::uint64_t{1} << (s + 1)) - 3;
        const Monomial z{(1U << s) - 1, (1U << (s - 1)) - 1, (1U << (s - 1)) - 1, 0};
        CHECK(minimal_spike(4, n) == z);
    }
}

TEST_CASE("minimal spike is the least spike weight of its degree") {
    for (std::uint64_t n = 1; n <= 60; ++n) {
        for (std::size_t k = 1; k <= 4; ++k) {
            if (mu(n).s > k) {
                CHECK_THROWS_AS(minimal_spike(k, n), DomainError);
                continue;
            }
            const Monomial z = minimal_spike(k, n);
            CHECK(z.degree() == n);
            CHECK(is_spike(z));
            for (const auto& x : oracle::all_monomials(k, n)) {
                if (is_spike(x)) {
                    CHECK(weight_vector(z) <= weight_vector(x));
                }
            }
        }
    }
}

TEST_CASE("Singer criterion examples") {
    CHECK(singer_is_hit(Monomial{1, 1, 5, 6}));
    CHECK_FALSE(singer_is_hit(minimal_spike(4, 13)));
    CHECK_FALSE(singer_is_hit(Monomial{7, 3, 3, 0}));
}
