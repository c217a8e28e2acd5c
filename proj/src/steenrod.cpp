#include "hitforge/steenrod.hpp"


#include "hitforge/error.hpp"

namespace hitforge {

void for_each_sq_term(std::uint64_t i, const Monomial& x, const std::function<void(const Monomial&)>& fn) {
    const std::size_t k = x.vars();
    const auto exps = x.exponents();

    // Sq^t(x_j^a) = C(a,t) x_j^(a+t) and C(a,t) is odd iff t is a submask of a.
    // Enumerate the submask splits of i across the variables.
    std::uint64_t capacity_after[kMaxVars + 1] = {};
    for (std::size_t j = k; j-- > 0;) {
        capacity_after[j] = capacity_after[j + 1] + exps[j];
    }
    if (i > capacity_after[0]) {
        return;
    }
    Monomial out(x);
    auto rec = [&](auto&& self, std::size_t j, std::uint64_t left) -> void {
        if (j == k) {
            if (left == 0) {
                fn(out);
            }
            return;
        }
        const std::uint64_t a = exps[j];
        if (left > capacity_after[j]) {
            return;
        }
        // Walk the submasks t of a with t <= left, largest first.
        std::uint64_t t = a;
        while (true) {
            if (t <= left && left - t <= capacity_after[j + 1]) {
                if (a > kMaxExponent - t) {
                    throw OverflowError("exponent overflow in Sq");
                }
                out.set_nu(j + 1, a + t);
                self(self, j + 1, left - t);
            }
            if (t == 0) {
                break;
            }
            t = (t - 1) & a;
        }
        out.set_nu(j + 1, a);
    };
    rec(rec, 0, i);
}

Polynomial sq(std::uint64_t i, const Monomial& x) {
    std::vector<Monomial> terms;
    for_each_sq_term(i, x, [&](const Monomial& m) { terms.push_back(m); });
    return Polynomial::from_terms(x.vars(), std::move(terms));
}

Polynomial sq(std::uint64_t i, const Polynomial& f) {
    std::vector<Monomial> terms;
    for (const auto& t : f.terms()) {
        for_each_sq_term(i, t, [&](const Monomial& m) { terms.push_back(m); });
    }
    return Polynomial::from_terms(f.vars(), std::move(terms));
}

std::vector<GeneratorImage> total_sq_images(std::size_t k, std::uint64_t n, unsigned max_j) {
    std::vector<GeneratorImage> out;
    for (unsigned j = 0; j < 63 && j <= max_j && (std::uint64_t{1} << j) <= n; ++j) {
        const std::uint64_t square = std::uint64_t{1} << j;
        for_each_monomial(k, n - square, [&](const Monomial& m) {
            out.push_back({square, m, sq(square, m)});
        });
    }
    return out;
}

std::vector<GeneratorImage> a_s_plus_images(std::size_t k, std::uint64_t n, unsigned s) {
    if (s == 0) {
        throw DomainError("A_s^+ needs s >= 1");
    }
    std::vector<GeneratorImage> out;
    const std::uint64_t bound = s >= 63 ? kMaxExponent : (std::uint64_t{1} << s);
    for (std::uint64_t u = 1; u < bound && u <= n; ++u) {
        for_each_monomial(k, n - u, [&](const Monomial& m) {
            out.push_back({u, m, sq(u, m)});
        });
    }
    return out;
}

}  // namespace hitforge
