#include "hitforge/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "hitforge/error.hpp"

namespace hitforge {

unsigned alpha(std::uint64_t a) noexcept {
    return static_cast<unsigned>(std::popcount(a));
}

WeightVector::WeightVector(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {
    while (!entries_.empty() && entries_.back() == 0) {
        entries_.pop_back();
    }
}

std::uint32_t WeightVector::operator[](std::size_t i) const noexcept {
    return (i >= 1 && i <= entries_.size()) ? entries_[i - 1] : 0;
}

std::uint64_t WeightVector::degree() const {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i >= 63) {
            throw OverflowError("weight vector degree overflow");
        }
        d += (std::uint64_t{1} << i) * entries_[i];
    }
    return d;
}

std::string to_string(const WeightVector& w) {
    std::string out = "(";
    const auto& e = w.entries();
    for (std::size_t i = 0; i < e.size();) {
        std::size_t j = i;
        while (j < e.size() && e[j] == e[i]) {
            ++j;
        }
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(e[i]);
        if (j - i > 1) {
            out += "^(" + std::to_string(j - i) + ")";
        }
        i = j;
    }
    return out + ")";
}

WeightVector parse_weight_vector(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
        throw ParseError("weight vector must be parenthesised", 0);
    }
    std::vector<std::uint32_t> entries;
    std::size_t pos = 1;
    auto number = [&]() {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
            throw ParseError("expected a number", pos);
        }
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos++] - '0');
            if (v > 0xffffffffULL) {
                throw ParseError("number too large", pos);
            }
        }
        return static_cast<std::uint32_t>(v);
    };
    if (s.size() == 2) {
        return WeightVector{};
    }
    while (true) {
        const std::uint32_t value = number();
        std::uint32_t repeat = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            if (pos >= s.size() || s[pos] != '(') {
                throw ParseError("expected '('", pos);
            }
            ++pos;
            repeat = number();
            if (pos >= s.size() || s[pos] != ')') {
                throw ParseError("expected ')'", pos);
            }
            ++pos;
        }
        entries.insert(entries.end(), repeat, value);
        if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
        }
        if (pos + 1 != s.size()) {
            throw ParseError("unexpected character", pos);
        }
        break;
    }
    return WeightVector(std::move(entries));
}

WeightVector weight_vector(const Monomial& x) {
    std::vector<std::uint32_t> w;
    for (Exponent e : x.exponents()) {
        for (unsigned i = 0; e != 0; ++i, e >>= 1) {
            if (w.size() <= i) {
                w.resize(i + 1, 0);
            }
            w[i] += static_cast<std::uint32_t>(e & 1U);
        }
    }
    return WeightVector(std::move(w));
}

MuDecomposition mu(std::uint64_t n) {
    MuDecomposition out;
    out.n = n;
    if (n == 0) {
        return out;
    }
    // n is a sum of s terms 2^d - 1 (d > 0) iff n + s is a sum of s powers of
    // two, each at least 2: n + s even and alpha(n + s) <= s <= (n + s) / 2.
    for (std::uint64_t s = 1; s <= n; ++s) {
        const std::uint64_t m = n + s;
        if (m % 2 != 0 || alpha(m) > s || s > m / 2) {
            continue;
        }
        // Start from the binary expansion and split the smallest part until
        // there are s parts; this yields d_1 > ... > d_{s-1} >= d_s.
        std::vector<unsigned> d;
        for (unsigned b = 64; b-- > 0;) {
            if ((m >> b) & 1U) {
                d.push_back(b);
            }
        }
        while (d.size() < s) {
            const unsigned last = d.back();
            if (last <= 1) {
                throw InvariantError("mu decomposition of " + std::to_string(n) + " does not split");
            }
            d.back() = last - 1;
            d.push_back(last - 1);
        }
        out.s = static_cast<unsigned>(s);
        out.d = std::move(d);
        return out;
    }
    throw InvariantError("no mu decomposition for " + std::to_string(n));
}

std::strong_ordering compare(const Monomial& x, const Monomial& y) {
    if (auto c = weight_vector(x) <=> weight_vector(y); c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(x.exponents().begin(), x.exponents().end(),
                                                  y.exponents().begin(), y.exponents().end());
}

bool is_spike(const Monomial& x) {
    return std::all_of(x.exponents().begin(), x.exponents().end(),
                       [](Exponent e) { return (e & (e + 1)) == 0; });
}

Monomial minimal_spike(std::size_t k, std::uint64_t n) {
    const MuDecomposition dec = mu(n);
    if (dec.s > k) {
        throw DomainError("no spike of degree " + std::to_string(n) + " in P_" + std::to_string(k) +
                          " (mu = " + std::to_string(dec.s) + ")");
    }
    Monomial z(k);
    for (std::size_t j = 0; j < dec.s; ++j) {
        z.set_nu(j + 1, (std::uint64_t{1} << dec.d[j]) - 1);
    }
    return z;
}

bool singer_is_hit(const Monomial& x) {
    const Monomial z = minimal_spike(x.vars(), x.degree());
    return weight_vector(x) < weight_vector(z);
}

}  // namespace hitforge
