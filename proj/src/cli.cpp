#include "hitforge/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hitforge/cache.hpp"
#include "hitforge/error.hpp"
#include "hitforge/hit_engine.hpp"
#include "hitforge/homomorphisms.hpp"
#include "hitforge/invariants.hpp"
#include "hitforge/steenrod.hpp"

namespace hitforge::cli {

namespace {

using Degree = std::function<std::uint64_t(unsigned s, unsigned p, unsigned q)>;

struct TableRow {
    const char* label;
    std::array<std::uint64_t, 5> dims;  // s = 1, 2, 3, 4, >= 5
    unsigned params;                    // extra parameters besides s
    std::array<unsigned, 2> min;        // their lower bounds
    Degree degree;
};

constexpr std::uint64_t p2(unsigned e) { return std::uint64_t{1} << e; }

const std::vector<TableRow>& table_rows() {
    static const std::vector<TableRow> rows = {
        {"2^{s+1}-3", {4, 15, 35, 45, 45}, 0, {}, [](unsigned s, unsigned, unsigned) { return p2(s + 1) - 3; }},
        {"2^{s+1}-2", {6, 24, 50, 70, 80}, 0, {}, [](unsigned s, unsigned, unsigned) { return p2(s + 1) - 2; }},
        {"2^{s+1}-1", {14, 35, 75, 89, 85}, 0, {}, [](unsigned s, unsigned, unsigned) { return p2(s + 1) - 1; }},
        {"2^{s+2}+2^{s+1}-3", {46, 94, 105, 105, 105}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 2) + p2(s + 1) - 3; }},
        {"2^{s+3}+2^{s+1}-3", {87, 135, 150, 150, 150}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 3) + p2(s + 1) - 3; }},
        {"2^{s+4}+2^{s+1}-3", {136, 180, 195, 195, 195}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 4) + p2(s + 1) - 3; }},
        {"2^{s+t+1}+2^{s+1}-3, t>=4", {150, 195, 210, 210, 210}, 1, {4, 0},
         [](unsigned s, unsigned t, unsigned) { return p2(s + t + 1) + p2(s + 1) - 3; }},
        {"2^{s+1}+2^s-2", {21, 70, 116, 164, 175}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 1) + p2(s) - 2; }},
        {"2^{s+2}+2^s-2", {55, 126, 192, 240, 255}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 2) + p2(s) - 2; }},
        {"2^{s+3}+2^s-2", {73, 165, 241, 285, 300}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 3) + p2(s) - 2; }},
        {"2^{s+4}+2^s-2", {95, 179, 255, 300, 315}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 4) + p2(s) - 2; }},
        {"2^{s+5}+2^s-2", {115, 175, 255, 300, 315}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 5) + p2(s) - 2; }},
        {"2^{s+t}+2^s-2, t>=6", {125, 175, 255, 300, 315}, 1, {6, 0},
         [](unsigned s, unsigned t, unsigned) { return p2(s + t) + p2(s) - 2; }},
        {"2^{s+2}+2^{s+1}+2^s-3", {64, 120, 120, 120, 120}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 2) + p2(s + 1) + p2(s) - 3; }},
        {"2^{s+3}+2^{s+2}+2^s-3", {155, 210, 210, 210, 210}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 3) + p2(s + 2) + p2(s) - 3; }},
        {"2^{s+t+1}+2^{s+t}+2^s-3, t>=3", {140, 210, 210, 210, 210}, 1, {3, 0},
         [](unsigned s, unsigned t, unsigned) { return p2(s + t + 1) + p2(s + t) + p2(s) - 3; }},
        {"2^{s+3}+2^{s+1}+2^s-3", {140, 225, 225, 225, 225}, 0, {},
         [](unsigned s, unsigned, unsigned) { return p2(s + 3) + p2(s + 1) + p2(s) - 3; }},
        {"2^{s+u+1}+2^{s+1}+2^s-3, u>=3", {120, 210, 210, 210, 210}, 1, {3, 0},
         [](unsigned s, unsigned u, unsigned) { return p2(s + u + 1) + p2(s + 1) + p2(s) - 3; }},
        {"2^{s+u+2}+2^{s+2}+2^s-3, u>=2", {225, 315, 315, 315, 315}, 1, {2, 0},
         [](unsigned s, unsigned u, unsigned) { return p2(s + u + 2) + p2(s + 2) + p2(s) - 3; }},
        {"2^{s+t+u}+2^{s+t}+2^s-3, u>=2, t>=3", {210, 315, 315, 315, 315}, 2, {2, 3},
         [](unsigned s, unsigned u, unsigned t) { return p2(s + t + u) + p2(s + t) + p2(s) - 3; }},
    };
    return rows;
}

struct Options {
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    unsigned threads = 0;
};

EngineOptions engine_options(const Options& o, std::ostream& err) {
    EngineOptions e;
    e.threads = o.threads;
    e.warn = [&err](const std::string& m) { err << "warning: " << m << '\n'; };
    if (!o.no_cache) {
        if (o.cache_dir) {
            e.cache_dir = *o.cache_dir;
        } else if (const char* env = std::getenv("HITFORGE_CACHE_DIR"); env != nullptr && *env != '\0') {
            e.cache_dir = env;
        } else {
            e.cache_dir = "cache";
        }
    }
    return e;
}

void check_k(std::size_t k) {
    if (k == 0 || k > kMaxVars) {
        throw DomainError("--k must lie in 1.." + std::to_string(kMaxVars));
    }
}

// ---- basis -----------------------------------------------------------------

void print_basis(std::ostream& out, std::size_t k, std::uint64_t n, const std::vector<Monomial>& basis,
                 const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json j;
        j["k"] = k;
        j["n"] = n;
        j["dim"] = basis.size();
        j["order"] = cache::kColumnOrderName;
        j["basis"] = nlohmann::ordered_json::array();
        for (const auto& x : basis) {
            j["basis"].push_back(std::vector<Exponent>(x.exponents().begin(), x.exponents().end()));
        }
        out << j.dump() << '\n';
    } else if (format == "csv") {
        for (std::size_t i = 1; i <= k; ++i) {
            out << (i > 1 ? "," : "") << 'e' << i;
        }
        out << '\n';
        for (const auto& x : basis) {
            for (std::size_t i = 1; i <= k; ++i) {
                out << (i > 1 ? "," : "") << x.nu(i);
            }
            out << '\n';
        }
    } else {
        for (const auto& x : basis) {
            out << to_string(x) << '\n';
        }
    }
}

// ---- verify ----------------------------------------------------------------

class Report {
public:
    explicit Report(std::ostream& out) : out_(out) {}

    void row(const std::string& what, const std::string& expected, const std::string& computed) {
        const bool ok = expected == computed;
        out_ << what << "  expected=" << expected << "  computed=" << computed << (ok ? "  ok" : "  MISMATCH")
             << '\n';
        ++total_;
        if (!ok) {
            ++failed_;
        }
    }
    void check(const std::string& what, bool ok) { row(what, "true", ok ? "true" : "false"); }

    int finish(const std::string& suite) {
        out_ << suite << ": " << (total_ - failed_) << "/" << total_ << " ok\n";
        return failed_ == 0 ? kOk : kMismatch;
    }

private:
    std::ostream& out_;
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

int verify_qp4_table(HitEngine& engine, std::uint64_t max_n, std::ostream& out) {
    Report r(out);
    for (const auto& cell : qp4_table(max_n)) {
        r.row("n=" + str(cell.n) + " [" + cell.row + ", s=" + str(cell.s) + "]", str(cell.dim),
              str(engine.dim_qp(4, cell.n)));
    }
    return r.finish("qp4-table");
}

int verify_k_le_3(HitEngine& engine, std::uint64_t max_n, std::ostream& out) {
    Report r(out);
    const std::array<std::function<std::vector<Monomial>(std::uint64_t)>, 3> closed = {b1_basis, b2_basis,
                                                                                        b3_basis};
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::uint64_t n = 0; n <= max_n; ++n) {
            const auto brute = engine.admissible_basis(k, n);
            const auto formula = closed[k - 1](n);
            const std::string what = "k=" + str(k) + " n=" + str(n) + " dim=" + str(brute.size());
            r.row(what + " closed form = brute force", str(formula.size()), formula == brute ? str(brute.size()) : "differs");
        }
    }
    return r.finish("k-le-3");
}

// Degrees n <= max_n covered by the inductive formula at k = 4:
// n = 2^{d1} + 2^{d2} + 2^{d3} - 3 with d1 > d2 >= d3 >= 3.
int verify_theorem(HitEngine& engine, std::uint64_t max_n, std::ostream& out) {
    Report r(out);
    for (unsigned d3 = 3; p2(d3 + 2) + 2 * p2(d3) - 3 <= max_n; ++d3) {
        for (unsigned d2 = d3; p2(d2 + 1) + p2(d2) + p2(d3) - 3 <= max_n; ++d2) {
            for (unsigned d1 = d2 + 1; p2(d1) + p2(d2) + p2(d3) - 3 <= max_n; ++d1) {
                const std::uint64_t n = p2(d1) + p2(d2) + p2(d3) - 3;
                const std::uint64_t m = (p2(d1 - d3) - 1) + (p2(d2 - d3) - 1);
                const std::string tag = "n=" + str(n) + " m=" + str(m);
                const std::uint64_t dim4 = engine.dim_qp(4, n);
                r.row(tag + " dim(QP_4)_n = 15 dim(QP_3)_m", str(15 * engine.dim_qp(3, m)), str(dim4));
                const auto phi_all = phi_families(engine.admissible_basis(3, n), 4).all;
                r.check(tag + " Phi(B_3(n)) = B_4(n)", phi_all == engine.admissible_basis(4, n));
            }
        }
    }
    return r.finish("theorem-1-3");
}

int verify_degree_45(HitEngine& engine, std::ostream& out) {
    Report r(out);
    const auto b4 = engine.admissible_basis(4, 45);
    r.row("dim(QP_4)_45", "105", str(b4.size()));
    r.row("15 dim(QP_3)_3", "105", str(15 * engine.dim_qp(3, 3)));
    const auto fam = phi_families(b3_basis(45), 4);
    r.row("|Phi(B_3(45))|", "105", str(fam.all.size()));
    r.check("Phi(B_3(45)) = B_4(45)", fam.all == b4);
    return r.finish("appendix-45");
}

int verify_kameko_conjecture(HitEngine& engine, std::uint64_t max_n, std::ostream& out) {
    Report r(out);
    for (std::size_t k = 1; k <= 4; ++k) {
        const std::uint64_t bound = kameko_bound(k);
        std::uint64_t worst = 0;
        std::uint64_t at = 0;
        for (std::uint64_t n = 0; n <= max_n; ++n) {
            if (const auto d = engine.dim_qp(k, n); d > worst) {
                worst = d;
                at = n;
            }
        }
        r.check("k=" + str(k) + " max dim(QP_k)_n for n<=" + str(max_n) + " is " + str(worst) + " at n=" + str(at) +
                    " <= " + str(bound),
                worst <= bound);
    }
    return r.finish("kameko-conjecture");
}

// ---- apply -----------------------------------------------------------------

Polynomial apply_phi(const IndexPair& raw, const Polynomial& f) {
    const std::size_t k = f.vars() + 1;
    const IndexPair pair = make_index_pair(k, raw.i, raw.I);
    Polynomial out(k);
    for (const auto& x : f.terms()) {
        out += phi(pair, x);
    }
    return out;
}

}  // namespace

std::vector<TableCell> qp4_table(std::uint64_t max_n) {
    if (max_n > p2(40)) {
        throw DomainError("table degree bound too large");
    }
    std::map<std::uint64_t, TableCell> cells;
    auto add = [&](const TableRow& row, unsigned s, std::uint64_t n) {
        TableCell cell{n, row.dims[std::min(s, 5U) - 1], row.label, s};
        auto [it, inserted] = cells.emplace(n, cell);
        if (!inserted && it->second.dim != cell.dim) {
            throw InvariantError("table rows disagree at n=" + std::to_string(n));
        }
    };
    for (const auto& row : table_rows()) {
        const unsigned p0 = row.min[0];
        const unsigned q0 = row.min[1];
        for (unsigned s = 1; row.degree(s, p0, q0) <= max_n; ++s) {
            if (row.params == 0) {
                add(row, s, row.degree(s, 0, 0));
                continue;
            }
            for (unsigned p = p0; row.degree(s, p, q0) <= max_n; ++p) {
                if (row.params == 1) {
                    add(row, s, row.degree(s, p, 0));
                    continue;
                }
                for (unsigned q = q0; row.degree(s, p, q) <= max_n; ++q) {
                    add(row, s, row.degree(s, p, q));
                }
            }
        }
    }
    std::vector<TableCell> out;
    for (auto& [n, cell] : cells) {
        out.push_back(std::move(cell));
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimal generators of the polynomial algebra over the mod 2 Steenrod algebra"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Options opts;
    app.add_option("--cache-dir", opts.cache_dir, "Directory for cached hit matrices");
    app.add_flag("--no-cache", opts.no_cache, "Do not read or write the cache");
    app.add_option("--threads", opts.threads, "Worker threads for elimination (0: runtime default)");

    std::size_t k = 0;
    std::uint64_t n = 0;

    auto* dim_cmd = app.add_subcommand("dim", "Print dim (QP_k)_n");
    dim_cmd->add_option("--k", k)->required();
    dim_cmd->add_option("--n", n)->required();

    std::string format = "text";
    std::string split = "all";
    auto* basis_cmd = app.add_subcommand("basis", "List the admissible monomials of degree n, ascending");
    basis_cmd->add_option("--k", k)->required();
    basis_cmd->add_option("--n", n)->required();
    basis_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json", "csv"}));
    basis_cmd->add_option("--split", split)->check(CLI::IsMember({"all", "zero", "plus"}));

    std::string suite;
    std::optional<std::uint64_t> max_n;
    auto* verify_cmd = app.add_subcommand("verify", "Check computed results against known tables");
    verify_cmd->add_option("--suite", suite)
        ->required()
        ->check(CLI::IsMember({"qp4-table", "k-le-3", "theorem-1-3", "appendix-45", "kameko-conjecture"}));
    verify_cmd->add_option("--max-n", max_n, "Largest degree checked");

    std::optional<std::uint64_t> sq_i;
    bool kameko = false;
    bool psi = false;
    std::optional<std::string> phi_pair;
    std::optional<std::string> p_pair;
    std::optional<std::size_t> f_i;
    std::optional<std::size_t> gl_g;
    std::optional<std::size_t> apply_k;
    std::string input;
    auto* apply_cmd = app.add_subcommand("apply", "Apply an operation to a polynomial");
    auto* ops = apply_cmd->add_option_group("operation");
    ops->add_option("--sq", sq_i, "Steenrod square Sq^i");
    ops->add_flag("--kameko", kameko, "Kameko's down map");
    ops->add_flag("--psi", psi, "y -> x1...xk y^2");
    ops->add_option("--phi", phi_pair, "phi_(i;I), e.g. \"(1;2,3)\"");
    ops->add_option("--p", p_pair, "p_(i;I)");
    ops->add_option("--f", f_i, "f_i : P_{k-1} -> P_k");
    ops->add_option("--gl", gl_g, "GL_k generator g");
    ops->require_option(1);
    apply_cmd->add_option("--k", apply_k, "Number of variables of the input");
    apply_cmd->add_option("input", input, "Polynomial, e.g. \"x1^3*x2 + x2^4\" or \"(3,1)\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (dim_cmd->parsed()) {
            check_k(k);
            HitEngine engine(engine_options(opts, err));
            out << engine.dim_qp(k, n) << '\n';
            return kOk;
        }
        if (basis_cmd->parsed()) {
            check_k(k);
            HitEngine engine(engine_options(opts, err));
            const auto report = engine.qp_report(k, n);
            const auto& listed =
                split == "zero" ? report.basis_zero : split == "plus" ? report.basis_plus : report.basis;
            print_basis(out, k, n, listed, format);
            return kOk;
        }
        if (verify_cmd->parsed()) {
            HitEngine engine(engine_options(opts, err));
            if (suite == "qp4-table") {
                return verify_qp4_table(engine, max_n.value_or(46), out);
            }
            if (suite == "k-le-3") {
                return verify_k_le_3(engine, max_n.value_or(32), out);
            }
            if (suite == "theorem-1-3") {
                return verify_theorem(engine, max_n.value_or(46), out);
            }
            if (suite == "appendix-45") {
                return verify_degree_45(engine, out);
            }
            return verify_kameko_conjecture(engine, max_n.value_or(46), out);
        }

        const Polynomial f = parse_polynomial(input, apply_k);
        Polynomial result;
        if (sq_i) {
            result = sq(*sq_i, f);
        } else if (kameko) {
            result = kameko_down_poly(f);
        } else if (psi) {
            result = psi_up(f);
        } else if (phi_pair) {
            result = apply_phi(parse_index_pair(*phi_pair), f);
        } else if (p_pair) {
            const IndexPair raw = parse_index_pair(*p_pair);
            result = p_proj(make_index_pair(f.vars(), raw.i, raw.I), f);
        } else if (f_i) {
            result = f_sub(*f_i, f);
        } else {
            result = linear_sub(*gl_g, f);
        }
        out << to_string(result) << '\n';
        return kOk;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hitforge");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hitforge::cli
