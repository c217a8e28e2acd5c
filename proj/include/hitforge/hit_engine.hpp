#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hitforge/bitmatrix.hpp"
#include "hitforge/invariants.hpp"
#include "hitforge/polynomial.hpp"

namespace hitforge {

/// Everything known about one degree component (QP_k)_n.
struct DegreeComponentReport {
    std::size_t k = 0;
    std::uint64_t n = 0;
    std::uint64_t dim_p = 0;
    std::uint64_t rank_hit = 0;
    std::uint64_t dim_qp = 0;
    std::vector<Monomial> basis;       // admissible monomials, ascending
    std::vector<Monomial> basis_zero;  // some exponent is zero (QP_k^0)
    std::vector<Monomial> basis_plus;  // all exponents positive (QP_k^+)
    std::map<WeightVector, std::size_t> weight_strata;
};

/// Matrix of the map induced by Kameko's down map, (QP_k)_{2m+k} -> (QP_k)_m,
/// in the admissible bases of both sides.
struct KamekoMatrix {
    std::size_t k = 0;
    std::uint64_t m = 0;
    std::vector<Monomial> source_basis;
    std::vector<Monomial> target_basis;
    /// images[j]: normal form of the image of source_basis[j], a sum of
    /// target basis monomials.
    std::vector<Polynomial> images;
    std::size_t rank = 0;
    std::size_t kernel_dim = 0;
};

struct EngineOptions {
    /// Drop the columns Singer's criterion already proves hit before
    /// eliminating (only when mu(n) <= k). The result is identical either way.
    bool singer_filter = true;
    unsigned threads = 0;
    std::optional<std::filesystem::path> cache_dir;
    /// Receives warnings such as unreadable cache entries; stderr when empty.
    std::function<void(const std::string&)> warn;
};

/// Computes hit subspaces and everything derived from them.
///
/// Results are memoised per degree component. All public members are safe to
/// call concurrently.
class HitEngine {
public:
    explicit HitEngine(EngineOptions options = {});

    /// Reduced echelon basis of A^+P_k in degree n, over all monomials of
    /// degree n sorted descending.
    std::shared_ptr<const BitMatrix> hit_subspace(std::size_t k, std::uint64_t n);

    DegreeComponentReport qp_report(std::size_t k, std::uint64_t n);

    /// Admissible monomials of degree n, ascending.
    std::vector<Monomial> admissible_basis(std::size_t k, std::uint64_t n);
    std::uint64_t dim_qp(std::size_t k, std::uint64_t n);
    bool is_admissible(const Monomial& x);

    /// f in A^+P_k. Throws DimensionError for non-homogeneous input.
    bool is_hit(const Polynomial& f);

    /// f = g modulo A^+P_k.
    bool equiv(const Polynomial& f, const Polynomial& g);

    /// f - g in A_s^+ P_k + P_k^-(omega).
    bool equiv_mod(const Polynomial& f, const Polynomial& g, unsigned s, const WeightVector& omega);

    /// x = sum of strictly smaller monomials modulo A_s^+ P_k, s = length of omega(x).
    bool is_strictly_inadmissible(const Monomial& x);

    KamekoMatrix kameko_matrix(std::size_t k, std::uint64_t m);

    const EngineOptions& options() const noexcept { return options_; }

private:
    std::shared_ptr<const BitMatrix> compute_hit_subspace(std::size_t k, std::uint64_t n) const;
    std::shared_ptr<const BitMatrix> a_s_subspace(std::size_t k, std::uint64_t n, unsigned s);
    void warn(const std::string& message) const;

    EngineOptions options_;
    std::mutex mutex_;
    std::map<std::pair<std::size_t, std::uint64_t>, std::shared_ptr<const BitMatrix>> hit_memo_;
    std::map<std::tuple<std::size_t, std::uint64_t, unsigned>, std::shared_ptr<const BitMatrix>> a_s_memo_;
};

/// Kameko's conjectured bound prod_{i=1..k} (2^i - 1).
std::uint64_t kameko_bound(std::size_t k);

}  // namespace hitforge
