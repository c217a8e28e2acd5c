#include "hitforge/homomorphisms.hpp"

#include <algorithm>
#include <cctype>

#include "hitforge/error.hpp"
#include "hitforge/invariants.hpp"

namespace hitforge {

namespace {

Exponent pow2(std::size_t e) {
    if (e >= 63) {
        throw OverflowError("2^" + std::to_string(e) + " does not fit an exponent");
    }
    return Exponent{1} << e;
}

Polynomial variable(std::size_t k, std::size_t j) {
    Monomial m(k);
    m.set_nu(j, 1);
    return Polynomial(m);
}

void sort_admissible(std::vector<Monomial>& v) {
    std::sort(v.begin(), v.end(), AdmissibleLess{});
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

IndexPair make_index_pair(std::size_t k, std::size_t i, std::vector<std::size_t> I) {
    if (i < 1 || i > k) {
        throw DomainError("pair base index " + std::to_string(i) + " outside 1.." + std::to_string(k));
    }
    std::size_t prev = i;
    for (std::size_t t : I) {
        if (t <= prev || t > k) {
            throw DomainError("pair indices must satisfy i < i_1 < ... < i_r <= k");
        }
        prev = t;
    }
    return IndexPair{i, std::move(I)};
}

std::string to_string(const IndexPair& pair) {
    std::string out = "(" + std::to_string(pair.i) + ";";
    for (std::size_t t = 0; t < pair.I.size(); ++t) {
        if (t > 0) {
            out += ',';
        }
        out += std::to_string(pair.I[t]);
    }
    return out + ")";
}

IndexPair parse_index_pair(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    std::size_t pos = 0;
    auto expect = [&](char c) {
        if (pos >= s.size() || s[pos] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos);
        }
        ++pos;
    };
    auto number = [&]() {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
            throw ParseError("expected an index", pos);
        }
        std::size_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::size_t>(s[pos++] - '0');
            if (v > kMaxVars) {
                throw ParseError("index out of range", pos);
            }
        }
        return v;
    };
    expect('(');
    IndexPair pair;
    pair.i = number();
    expect(';');
    if (pos < s.size() && s[pos] != ')') {
        pair.I.push_back(number());
        while (pos < s.size() && s[pos] == ',') {
            ++pos;
            pair.I.push_back(number());
        }
    }
    expect(')');
    if (pos != s.size()) {
        throw ParseError("trailing characters", pos);
    }
    return pair;
}

std::vector<IndexPair> enumerate_Nk(std::size_t k) {
    std::vector<IndexPair> out;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t rest = k - i;  // candidates i+1..k
        std::vector<std::vector<std::size_t>> subsets;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest); ++mask) {
            std::vector<std::size_t> I;
            for (std::size_t b = 0; b < rest; ++b) {
                if ((mask >> b) & 1U) {
                    I.push_back(i + 1 + b);
                }
            }
            subsets.push_back(std::move(I));
        }
        std::sort(subsets.begin(), subsets.end());
        for (auto& I : subsets) {
            out.push_back(IndexPair{i, std::move(I)});
        }
    }
    return out;
}

std::vector<std::size_t> union_with(const std::vector<std::size_t>& I, std::size_t j) {
    std::vector<std::size_t> out(I);
    auto it = std::lower_bound(out.begin(), out.end(), j);
    if (it == out.end() || *it != j) {
        out.insert(it, j);
    }
    return out;
}

std::size_t t_index(const std::vector<std::size_t>& I, std::size_t j) {
    return I.empty() ? j : std::min(j, I.front());
}

std::vector<std::size_t> I_superscript(const std::vector<std::size_t>& I, std::size_t j) {
    auto out = union_with(I, j);
    out.erase(std::find(out.begin(), out.end(), t_index(I, j)));
    return out;
}

Monomial f_sub(std::size_t i, const Monomial& y) {
    const std::size_t k = y.vars() + 1;
    if (i < 1 || i > k) {
        throw DomainError("f_i needs 1 <= i <= " + std::to_string(k));
    }
    Monomial out(k);
    for (std::size_t j = 1; j < k; ++j) {
        out.set_nu(j < i ? j : j + 1, y.nu(j));
    }
    return out;
}

Polynomial f_sub(std::size_t i, const Polynomial& y) {
    std::vector<Monomial> terms;
    terms.reserve(y.size());
    for (const auto& t : y.terms()) {
        terms.push_back(f_sub(i, t));
    }
    return Polynomial::from_terms(y.vars() + 1, std::move(terms));
}

std::optional<std::size_t> compatible_u(const IndexPair& pair, const Monomial& x) {
    const std::size_t k = x.vars() + 1;
    make_index_pair(k, pair.i, pair.I);
    const std::size_t r = pair.length();
    if (r == 0) {
        return 1;
    }
    const Exponent full = pow2(r) - 1;
    // nu_{i_t - 1}(x), t = 1..r.
    auto nu_at = [&](std::size_t t) { return x.nu(pair.I[t - 1] - 1); };

    std::optional<std::size_t> found;
    for (std::size_t u = 1; u <= r; ++u) {
        bool ok = true;
        for (std::size_t t = 1; t < u && ok; ++t) {
            ok = nu_at(t) == full;
        }
        ok = ok && nu_at(u) > full;
        for (std::size_t t = 1; t <= u && ok; ++t) {
            ok = alpha_bit(nu_at(u), static_cast<unsigned>(r - t)) == 1;
        }
        for (std::size_t t = u + 1; t <= r && ok; ++t) {
            ok = alpha_bit(nu_at(t), static_cast<unsigned>(r - t)) == 1;
        }
        if (ok) {
            if (found) {
                throw InvariantError(to_string(x) + " is compatible with " + to_string(pair) + " for two values of u");
            }
            found = u;
        }
    }
    return found;
}

Monomial x_I_u(std::size_t k, const std::vector<std::size_t>& I, std::size_t u) {
    Monomial m(k);
    const std::size_t r = I.size();
    if (r == 0) {
        return m;
    }
    if (u < 1 || u > r) {
        throw DomainError("u must lie in 1..r");
    }
    Exponent head = 0;
    for (std::size_t t = 1; t <= u; ++t) {
        head += pow2(r - t);
    }
    m.set_nu(I[u - 1], head);
    for (std::size_t t = u + 1; t <= r; ++t) {
        m.set_nu(I[t - 1], pow2(r - t));
    }
    return m;
}

Polynomial phi(const IndexPair& pair, const Monomial& x) {
    const std::size_t k = x.vars() + 1;
    const auto u = compatible_u(pair, x);
    if (!u) {
        return Polynomial(k);
    }
    Monomial lifted = f_sub(pair.i, x);
    lifted.set_nu(pair.i, pow2(pair.length()) - 1);
    return Polynomial(lifted.divided_by(x_I_u(k, pair.I, *u)));
}

Polynomial p_proj(const IndexPair& pair, const Polynomial& f) {
    const std::size_t k = f.vars();
    make_index_pair(k, pair.i, pair.I);
    const std::size_t target = k - 1;
    std::vector<Polynomial> images;
    images.reserve(k);
    for (std::size_t j = 1; j <= k; ++j) {
        if (j < pair.i) {
            images.push_back(variable(target, j));
        } else if (j == pair.i) {
            Polynomial sum(target);
            for (std::size_t s : pair.I) {
                sum += variable(target, s - 1);
            }
            images.push_back(std::move(sum));
        } else {
            images.push_back(variable(target, j - 1));
        }
    }
    return substitute(f, images, target);
}

PhiFamilies phi_families(const std::vector<Monomial>& B, std::size_t k) {
    PhiFamilies out;
    for (const auto& b : B) {
        if (b.vars() + 1 != k) {
            throw DimensionError("Phi expects monomials of P_" + std::to_string(k - 1));
        }
    }
    for (const auto& pair : enumerate_Nk(k)) {
        for (const auto& b : B) {
            const Polynomial img = phi(pair, b);
            if (img.is_zero()) {
                continue;
            }
            const Monomial& m = img.terms().front();
            if (pair.I.empty()) {
                out.zero.push_back(m);
            } else if (m.all_positive()) {
                out.plus.push_back(m);
            }
        }
    }
    sort_admissible(out.zero);
    sort_admissible(out.plus);
    out.all = out.zero;
    out.all.insert(out.all.end(), out.plus.begin(), out.plus.end());
    sort_admissible(out.all);
    return out;
}

Monomial psi_up(const Monomial& y) {
    Monomial x = y.frobenius(1);
    for (std::size_t j = 1; j <= y.vars(); ++j) {
        if (x.nu(j) == kMaxExponent) {
            throw OverflowError("exponent overflow in psi");
        }
        x.set_nu(j, x.nu(j) + 1);
    }
    return x;
}

Polynomial psi_up(const Polynomial& y) {
    std::vector<Monomial> terms;
    for (const auto& t : y.terms()) {
        terms.push_back(psi_up(t));
    }
    return Polynomial::from_terms(y.vars(), std::move(terms));
}

std::optional<Monomial> kameko_down(const Monomial& x) {
    Monomial y(x.vars());
    for (std::size_t j = 1; j <= x.vars(); ++j) {
        const Exponent a = x.nu(j);
        if ((a & 1U) == 0) {
            return std::nullopt;
        }
        y.set_nu(j, (a - 1) / 2);
    }
    return y;
}

Polynomial kameko_down_poly(const Polynomial& f) {
    std::vector<Monomial> terms;
    for (const auto& t : f.terms()) {
        if (auto y = kameko_down(t)) {
            terms.push_back(*y);
        }
    }
    return Polynomial::from_terms(f.vars(), std::move(terms));
}

Polynomial linear_sub(std::size_t g, const Polynomial& f) {
    const std::size_t k = f.vars();
    if (g < 1 || g > k || (g == 1 && k < 2)) {
        throw DomainError("GL generator " + std::to_string(g) + " is not defined on P_" + std::to_string(k));
    }
    std::vector<Polynomial> images;
    for (std::size_t j = 1; j <= k; ++j) {
        images.push_back(variable(k, j));
    }
    if (g == 1) {
        images[0] += variable(k, 2);
    } else {
        std::swap(images[g - 2], images[g - 1]);
    }
    return substitute(f, images, k);
}

std::vector<Monomial> spike_stratum_basis(std::size_t k, unsigned s) {
    std::vector<Monomial> out;
    if (s == 0) {
        out.emplace_back(k);
        return out;
    }
    const std::size_t top = std::min<std::size_t>(s, k);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t b = 0; b < k; ++b) {
            if ((mask >> b) & 1U) {
                idx.push_back(b + 1);
            }
        }
        const std::size_t m = idx.size();
        if (m > top) {
            continue;
        }
        Monomial x(k);
        for (std::size_t t = 0; t + 1 < m; ++t) {
            x.set_nu(idx[t], pow2(t));
        }
        x.set_nu(idx[m - 1], pow2(s) - pow2(m - 1));
        out.push_back(x);
    }
    sort_admissible(out);
    return out;
}

std::vector<Monomial> b1_basis(std::uint64_t n) {
    if ((n & (n + 1)) != 0) {
        return {};
    }
    return {Monomial{n}};
}

std::vector<Monomial> b2_basis(std::uint64_t n) {
    // n = 2^{t+u} + 2^t - 2 with t, u >= 0, and B_2(n) = psi^t(Phi(B_1(2^u - 1))).
    for (unsigned t = 0; t < 62; ++t) {
        const std::uint64_t low = (std::uint64_t{1} << t);
        if (low > n + 2) {
            break;
        }
        for (unsigned u = 0; t + u < 62; ++u) {
            const std::uint64_t value = (std::uint64_t{1} << (t + u)) + low - 2;
            if (value > n) {
                break;
            }
            if (value != n) {
                continue;
            }
            auto base = phi_families(b1_basis((std::uint64_t{1} << u) - 1), 2).all;
            for (unsigned r = 0; r < t; ++r) {
                for (auto& m : base) {
                    m = psi_up(m);
                }
            }
            sort_admissible(base);
            return base;
        }
    }
    return {};
}

std::vector<Monomial> b3_basis(std::uint64_t n) {
    if (n == 0) {
        return {Monomial(3)};
    }
    const MuDecomposition dec = mu(n);
    std::vector<Monomial> out;
    if (dec.s > 3) {
        return out;
    }
    if (dec.s == 3) {
        // Kameko's isomorphism: B_3(2m + 3) = psi(B_3(m)).
        for (const auto& y : b3_basis((n - 3) / 2)) {
            out.push_back(psi_up(y));
        }
    } else if (dec.s == 1) {
        // n = 2^s - 1: B_3(1^(s)) u psi(Phi(B_2(2^{s-1} - 2))).
        const unsigned s = dec.d[0];
        out = spike_stratum_basis(3, s);
        if (s >= 2) {
            for (const auto& y : phi_families(b2_basis((std::uint64_t{1} << (s - 1)) - 2), 3).all) {
                out.push_back(psi_up(y));
            }
        }
    } else {
        // n = 2^a + 2^b - 2 with a >= b >= 1.
        out = phi_families(b2_basis(n), 3).all;
        const unsigned a = dec.d[0];
        const unsigned b = dec.d[1];
        if (a > b && b == 1 && a - b == 2) {
            out.push_back(Monomial{3, 4, 1});
        }
    }
    sort_admissible(out);
    return out;
}

}  // namespace hitforge
