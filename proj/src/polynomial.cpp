#include "hitforge/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hitforge/error.hpp"

namespace hitforge {

namespace {

void check_vars(std::size_t k) {
    if (k > kMaxVars) {
        throw DomainError("at most " + std::to_string(kMaxVars) + " variables are supported, got " +
                          std::to_string(k));
    }
}

Exponent checked_add(Exponent a, Exponent b) {
    if (a > kMaxExponent - b) {
        throw OverflowError("exponent overflow");
    }
    return a + b;
}

// Sorts, then drops pairs of equal monomials.
void cancel_pairs(std::vector<Monomial>& terms) {
    std::sort(terms.begin(), terms.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) {
            ++j;
        }
        if ((j - i) % 2 == 1) {
            terms[out++] = terms[i];
        }
        i = j;
    }
    terms.resize(out);
}

}  // namespace

Monomial::Monomial(std::size_t k) {
    check_vars(k);
    k_ = static_cast<std::uint8_t>(k);
}

Monomial::Monomial(std::initializer_list<Exponent> exponents)
    : Monomial(std::span<const Exponent>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const Exponent> exponents) {
    check_vars(exponents.size());
    k_ = static_cast<std::uint8_t>(exponents.size());
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        if (exponents[j] > kMaxExponent) {
            throw OverflowError("exponent exceeds 2^63 - 1");
        }
        exps_[j] = exponents[j];
    }
}

Exponent Monomial::nu(std::size_t j) const {
    if (j == 0 || j > k_) {
        throw DomainError("variable index " + std::to_string(j) + " out of range 1.." + std::to_string(k_));
    }
    return exps_[j - 1];
}

void Monomial::set_nu(std::size_t j, Exponent value) {
    if (j == 0 || j > k_) {
        throw DomainError("variable index " + std::to_string(j) + " out of range 1.." + std::to_string(k_));
    }
    if (value > kMaxExponent) {
        throw OverflowError("exponent exceeds 2^63 - 1");
    }
    exps_[j - 1] = value;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (std::size_t j = 0; j < k_; ++j) {
        d = checked_add(d, exps_[j]);
    }
    return d;
}

bool Monomial::is_unit() const noexcept {
    return std::all_of(exps_.begin(), exps_.begin() + k_, [](Exponent e) { return e == 0; });
}

bool Monomial::all_positive() const noexcept {
    return std::all_of(exps_.begin(), exps_.begin() + k_, [](Exponent e) { return e > 0; });
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (k_ != other.k_) {
        throw DimensionError("monomials in P_" + std::to_string(k_) + " and P_" + std::to_string(other.k_));
    }
    Monomial out(*this);
    for (std::size_t j = 0; j < k_; ++j) {
        out.exps_[j] = checked_add(exps_[j], other.exps_[j]);
    }
    return out;
}

bool Monomial::divides(const Monomial& other) const noexcept {
    if (k_ != other.k_) {
        return false;
    }
    for (std::size_t j = 0; j < k_; ++j) {
        if (exps_[j] > other.exps_[j]) {
            return false;
        }
    }
    return true;
}

Monomial Monomial::divided_by(const Monomial& other) const {
    if (!other.divides(*this)) {
        throw InvariantError("non-exact monomial division: " + to_string(*this) + " / " + to_string(other));
    }
    Monomial out(*this);
    for (std::size_t j = 0; j < k_; ++j) {
        out.exps_[j] -= other.exps_[j];
    }
    return out;
}

Monomial Monomial::frobenius(unsigned s) const {
    Monomial out(*this);
    for (std::size_t j = 0; j < k_; ++j) {
        if (exps_[j] != 0 && (s >= 63 || exps_[j] > (kMaxExponent >> s))) {
            throw OverflowError("exponent overflow");
        }
        out.exps_[j] = exps_[j] << s;
    }
    return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ m.vars();
    for (Exponent e : m.exponents()) {
        h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
}

Polynomial::Polynomial(const Monomial& m) : k_(m.vars()), terms_{m} {}

Polynomial Polynomial::from_terms(std::size_t k, std::vector<Monomial> terms) {
    for (const auto& t : terms) {
        if (t.vars() != k) {
            throw DimensionError("term " + to_string(t) + " is not in P_" + std::to_string(k));
        }
    }
    cancel_pairs(terms);
    Polynomial f(k);
    f.terms_ = std::move(terms);
    return f;
}

bool Polynomial::contains(const Monomial& m) const {
    return std::binary_search(terms_.begin(), terms_.end(), m);
}

std::optional<std::uint64_t> Polynomial::degree() const {
    if (terms_.empty()) {
        return std::nullopt;
    }
    const std::uint64_t d = terms_.front().degree();
    for (const auto& t : terms_) {
        if (t.degree() != d) {
            return std::nullopt;
        }
    }
    return d;
}

bool Polynomial::is_homogeneous() const {
    return terms_.empty() || degree().has_value();
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (other.terms_.empty()) {
        return *this;
    }
    if (k_ != other.k_) {
        throw DimensionError("adding polynomials of P_" + std::to_string(k_) + " and P_" + std::to_string(other.k_));
    }
    std::vector<Monomial> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator+=(const Monomial& m) {
    if (m.vars() != k_) {
        throw DimensionError("adding a monomial of P_" + std::to_string(m.vars()) + " to P_" + std::to_string(k_));
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it != terms_.end() && *it == m) {
        terms_.erase(it);
    } else {
        terms_.insert(it, m);
    }
    return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (k_ != other.k_) {
        throw DimensionError("multiplying polynomials of P_" + std::to_string(k_) + " and P_" +
                             std::to_string(other.k_));
    }
    std::vector<Monomial> prod;
    prod.reserve(terms_.size() * other.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : other.terms_) {
            prod.push_back(a * b);
        }
    }
    return from_terms(k_, std::move(prod));
}

Polynomial Polynomial::frobenius(unsigned s) const {
    Polynomial out(k_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        out.terms_.push_back(t.frobenius(s));
    }
    // x -> x^(2^s) is strictly monotone in sigma-lex, so order is preserved.
    return out;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
    Polynomial result{Monomial(k_)};
    for (unsigned b = 0; b < 64 && (e >> b) != 0; ++b) {
        if ((e >> b) & 1U) {
            result = result * frobenius(b);
        }
    }
    return result;
}

Monomial complement_monomial(std::size_t k, std::span<const std::size_t> excluded) {
    Monomial m(k);
    for (std::size_t j = 1; j <= k; ++j) {
        m.set_nu(j, 1);
    }
    for (std::size_t j : excluded) {
        if (j == 0 || j > k) {
            throw DomainError("index " + std::to_string(j) + " outside N_" + std::to_string(k));
        }
        m.set_nu(j, 0);
    }
    return m;
}

void for_each_monomial(std::size_t k, std::uint64_t n, const std::function<void(const Monomial&)>& fn) {
    check_vars(k);
    if (k == 0) {
        if (n == 0) {
            fn(Monomial(0));
        }
        return;
    }
    std::vector<Exponent> e(k, 0);
    // Ascending sigma-lex: the first exponent varies slowest.
    auto rec = [&](auto&& self, std::size_t j, std::uint64_t left) -> void {
        if (j + 1 == k) {
            e[j] = left;
            fn(Monomial(std::span<const Exponent>(e)));
            return;
        }
        for (std::uint64_t a = 0; a <= left; ++a) {
            e[j] = a;
            self(self, j + 1, left - a);
        }
    };
    rec(rec, 0, n);
}

std::vector<Monomial> monomials_of_degree(std::size_t k, std::uint64_t n) {
    std::vector<Monomial> out;
    out.reserve(static_cast<std::size_t>(monomial_count(k, n)));
    for_each_monomial(k, n, [&](const Monomial& m) { out.push_back(m); });
    return out;
}

std::uint64_t monomial_count(std::size_t k, std::uint64_t n) {
    if (k == 0) {
        return n == 0 ? 1 : 0;
    }
    // C(n+k-1, k-1), built incrementally so every intermediate is an integer.
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i < k; ++i) {
        c = c * (n + i) / i;
    }
    return c;
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images, std::size_t target_k) {
    if (images.size() != f.vars()) {
        throw DimensionError("substitution needs one image per variable");
    }
    for (const auto& g : images) {
        if (!g.is_zero() && g.vars() != target_k) {
            throw DimensionError("substitution image outside P_" + std::to_string(target_k));
        }
    }
    std::vector<Monomial> acc;
    for (const auto& t : f.terms()) {
        Polynomial term{Monomial(target_k)};
        for (std::size_t j = 1; j <= f.vars() && !term.is_zero(); ++j) {
            const Exponent a = t.nu(j);
            if (a == 0) {
                continue;
            }
            const auto& g = images[j - 1];
            if (g.is_zero()) {
                term = Polynomial(target_k);
                break;
            }
            term = term * g.pow(a);
        }
        acc.insert(acc.end(), term.terms().begin(), term.terms().end());
    }
    return Polynomial::from_terms(target_k, std::move(acc));
}

std::string to_string(const Monomial& m) {
    std::string out;
    for (std::size_t j = 1; j <= m.vars(); ++j) {
        const Exponent a = m.nu(j);
        if (a == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += 'x';
        out += std::to_string(j);
        if (a != 1) {
            out += '^';
            out += std::to_string(a);
        }
    }
    return out.empty() ? "1" : out;
}

std::string to_tuple_string(const Monomial& m) {
    std::string out = "(";
    for (std::size_t j = 1; j <= m.vars(); ++j) {
        if (j > 1) {
            out += ',';
        }
        out += std::to_string(m.nu(j));
    }
    return out + ")";
}

std::string to_string(const Polynomial& f) {
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        if (!out.empty()) {
            out += " + ";
        }
        out += to_string(*it);
    }
    return out;
}

namespace {

// Recursive-descent parser over the whitespace-free grammar
//   poly  := term ('+' term)*
//   term  := '0' | '1' | tuple | factor ('*' factor)*
//   tuple := '(' int (',' int)* ')'
//   factor:= 'x' int ('^' int)?
class Parser {
public:
    Parser(std::string_view text) : text_(text) {}

    struct RawTerm {
        bool zero = false;
        bool tuple = false;
        std::vector<Exponent> exps;  // indexed from 0, grown as needed
    };

    std::vector<RawTerm> parse() {
        std::vector<RawTerm> terms;
        skip_ws();
        if (at_end()) {
            fail("empty input");
        }
        terms.push_back(term());
        skip_ws();
        while (!at_end()) {
            expect('+');
            terms.push_back(term());
            skip_ws();
        }
        return terms;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void expect(char c) {
        skip_ws();
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    std::uint64_t integer() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("expected a number");
        }
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            const auto digit = static_cast<std::uint64_t>(peek() - '0');
            if (v > (kMaxExponent - digit) / 10) {
                fail("number too large");
            }
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }

    RawTerm term() {
        skip_ws();
        RawTerm t;
        if (peek() == '(') {
            ++pos_;
            t.tuple = true;
            t.exps.push_back(integer());
            skip_ws();
            while (peek() == ',') {
                ++pos_;
                t.exps.push_back(integer());
                skip_ws();
            }
            expect(')');
            return t;
        }
        if (peek() == '0' || peek() == '1') {
            const std::uint64_t v = integer();
            if (v > 1) {
                fail("coefficient must be 0 or 1");
            }
            t.zero = (v == 0);
            return t;
        }
        factor(t);
        skip_ws();
        while (peek() == '*') {
            ++pos_;
            factor(t);
            skip_ws();
        }
        return t;
    }

    void factor(RawTerm& t) {
        skip_ws();
        if (peek() != 'x' && peek() != 'X') {
            fail("expected variable 'x<index>'");
        }
        ++pos_;
        const std::size_t at = pos_;
        const std::uint64_t j = integer();
        if (j == 0 || j > kMaxVars) {
            throw ParseError("variable index out of range 1.." + std::to_string(kMaxVars), at);
        }
        std::uint64_t e = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            e = integer();
        }
        if (t.exps.size() < j) {
            t.exps.resize(j, 0);
        }
        if (t.exps[j - 1] > kMaxExponent - e) {
            fail("exponent overflow");
        }
        t.exps[j - 1] += e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> k) {
    auto raw = Parser(text).parse();
    std::size_t width = 0;
    bool tuple_seen = false;
    for (const auto& t : raw) {
        if (t.tuple) {
            if (tuple_seen && t.exps.size() != width) {
                throw ParseError("tuples of different lengths", 0);
            }
            tuple_seen = true;
        }
        width = std::max(width, t.exps.size());
    }
    if (tuple_seen) {
        for (const auto& t : raw) {
            if (!t.zero && !t.tuple && t.exps.size() > width) {
                throw ParseError("variable index exceeds tuple length", 0);
            }
        }
    }
    std::size_t vars = width;
    if (k) {
        if (*k < width || (tuple_seen && *k != width)) {
            throw DimensionError("input needs " + std::to_string(width) + " variables, P_" + std::to_string(*k) +
                                 " requested");
        }
        vars = *k;
    }
    if (vars > kMaxVars) {
        throw DomainError("at most " + std::to_string(kMaxVars) + " variables are supported");
    }
    std::vector<Monomial> terms;
    for (auto& t : raw) {
        if (t.zero) {
            continue;
        }
        t.exps.resize(vars, 0);
        terms.emplace_back(std::span<const Exponent>(t.exps));
    }
    return Polynomial::from_terms(vars, std::move(terms));
}

Monomial parse_monomial(std::string_view text, std::optional<std::size_t> k) {
    const Polynomial f = parse_polynomial(text, k);
    if (f.size() != 1) {
        throw ParseError("expected a single monomial", 0);
    }
    return f.terms().front();
}

}  // namespace hitforge
