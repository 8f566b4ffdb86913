#pragma once

/**
 * @file fuglede.hpp
 * @brief Tiling and spectral sets in Z_N.
 *
 * J tiles with K when 1_J * 1_K = 1_{Z_N}. J is spectral when some rows I,
 * |I| = |J|, make the Fourier submatrix F[I, J] unitary up to scaling; that
 * happens iff every difference i1 - i2 (i1 != i2 in I) lies in Z(h_J).
 */

#include "digit_tables.hpp"
#include "fourier.hpp"
#include "oracle.hpp"

#include <map>

namespace idem {

namespace detail {

inline void same_modulus(const index_set& a, const index_set& b) {
    if (a.modulus() != b.modulus()) throw domain_error("modulus-mismatch", "sets live in different Z_N");
}

/// Exact-cover test on bitmasks: the translates j + K, j in J, partition Z_N.
inline bool tiles_mask(std::uint64_t j, std::uint64_t k, int n) {
    std::uint64_t cover = 0;
    for (int x = 0; x < n; ++x) {
        if (!((j >> x) & 1u)) continue;
        const auto shifted = mask_ops::translate(k, -x, n);  // { k + x }
        if (cover & shifted) return false;
        cover |= shifted;
    }
    return cover == mask_ops::full(n);
}

/// Bitmask of Z(h_J), one exact test per gcd class.
inline std::uint64_t zero_mask_by_class(std::uint64_t j, int n, const std::vector<std::pair<std::int64_t, std::uint64_t>>& classes) {
    if (j == 0) return mask_ops::full(n);
    const auto& table = reduction_table_for(n);
    const std::size_t w = table.width();
    std::vector<std::int64_t> acc(w);
    std::uint64_t z = 0;
    for (const auto& [d, cls] : classes) {
        std::fill(acc.begin(), acc.end(), 0);
        for (int x = 0; x < n; ++x) {
            if (!((j >> x) & 1u)) continue;
            auto r = table.row(mod(x * d, n));
            for (std::size_t i = 0; i < w; ++i) acc[i] += r[i];
        }
        if (std::all_of(acc.begin(), acc.end(), [](std::int64_t v) { return v == 0; })) z |= cls;
    }
    return z;
}

inline std::vector<std::pair<std::int64_t, std::uint64_t>> class_masks(std::int64_t n) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> out;
    const modulus_context ctx(n);
    for (auto d : divisors(n))
        if (d < n) out.emplace_back(d, gcd_class(ctx, d).mask());
    return out;
}

/// Clique of size `need` inside `cand` in the Cayley graph with connection set `conn`.
inline bool extend_clique(std::uint64_t cand, int need, std::uint64_t conn, int n, std::uint64_t& picked) {
    if (need == 0) return true;
    while (__builtin_popcountll(cand) >= need) {
        const int v = __builtin_ctzll(cand);
        cand &= cand - 1;
        const std::uint64_t nb = mask_ops::translate(conn, -v, n);  // { v + z : z in conn }
        if (extend_clique(cand & nb, need - 1, conn, n, picked)) {
            picked |= std::uint64_t{1} << v;
            return true;
        }
    }
    return false;
}

/// Spectral witness search given the zero-set mask; 0 is always in I.
inline std::optional<std::uint64_t> spectral_witness(std::uint64_t zmask, int size, int n) {
    if (size == 0) return std::nullopt;
    std::uint64_t picked = 1;
    const auto cand = zmask & ~std::uint64_t{1};
    if (extend_clique(cand, size - 1, zmask, n, picked)) return picked;
    return std::nullopt;
}

}  // namespace detail

/// 1_J * 1_K = 1_{Z_N}, checked by counting representations j + k.
inline bool tiles(const index_set& j, const index_set& k) {
    detail::same_modulus(j, k);
    const auto n = j.modulus();
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (auto a : j.members())
        for (auto b : k.members()) ++count[static_cast<std::size_t>(mod(a + b, n))];
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

/**
 * Tiling partners K of J, lex-ordered, at most max_results (0 = all).
 * Candidates are the |K| = N/|J| solutions of the zero-set problem with
 * required zeros { n != 0 : h_J(n) != 0 }; each is re-checked with tiles().
 */
inline std::vector<index_set> find_tiling_partners(const index_set& j, std::size_t max_results = 0) {
    const auto n = j.modulus();
    if (j.empty() || n % static_cast<std::int64_t>(j.size()) != 0) return {};
    const auto size = n / static_cast<std::int64_t>(j.size());
    const auto z = zero_set(idempotent(j)).zero_set;
    std::vector<residue_t> req;
    for (residue_t x = 1; x < n; ++x)
        if (!z.contains(x)) req.push_back(x);
    const index_set required(n, req);

    const modulus_context ctx(n);
    std::vector<index_set> candidates;
    if (ctx.is_prime_power()) {
        std::vector<std::int64_t> d;
        for (auto x : required.members()) d.push_back(std::gcd(x, n));
        const auto mc = pivots_from_divisors(ctx, divisor_spec(n, std::move(d)));
        for (auto& c : enumerate_solutions(ctx, mc, size))
            if (static_cast<std::int64_t>(c.size()) == size) candidates.push_back(std::move(c));
    } else {
        oracle_options opt;
        opt.max_cardinality = size;
        for (auto& c : brute_force_solutions(n, required, oracle_mode::vanish_at_least, opt))
            if (static_cast<std::int64_t>(c.size()) == size) candidates.push_back(std::move(c));
    }
    std::vector<index_set> out;
    for (auto& c : candidates) {
        if (!tiles(j, c)) continue;
        out.push_back(std::move(c));
        if (max_results != 0 && out.size() == max_results) break;
    }
    return out;
}

struct spectral_result {
    bool spectral = false;
    index_set witness;       ///< rows I when spectral
    double gram_error = 0.0; ///< max |(F[I,J]^* F[I,J]) - |J| Id| entry
};

/// max |G - |J| Id| for G = F[I,J]^* F[I,J], F[i,j] = w^{-ij}.
inline double gram_deviation(const index_set& rows, const index_set& cols) {
    const auto n = cols.modulus();
    double worst = 0.0;
    for (auto a : cols.members())
        for (auto b : cols.members()) {
            complex_t g = 0.0;
            for (auto i : rows.members()) g += std::conj(root_of_unity(n, -i * a)) * root_of_unity(n, -i * b);
            const double target = a == b ? static_cast<double>(rows.size()) : 0.0;
            worst = std::max(worst, std::abs(g - target));
        }
    return worst;
}

/// Searches rows I ∋ 0 with all differences in Z(h_J); verifies the Gram matrix.
inline spectral_result is_spectral(const index_set& j) {
    const auto n = j.modulus();
    if (n > 64) throw domain_error("modulus-too-large", "spectral search supports N <= 64");
    spectral_result out;
    const auto zmask = zero_set(idempotent(j)).zero_set.mask();
    const auto w = detail::spectral_witness(zmask, static_cast<int>(j.size()), static_cast<int>(n));
    if (!w) return out;
    out.witness = index_set::from_mask(n, *w);
    out.gram_error = gram_deviation(out.witness, j);
    if (out.gram_error > 1e-9) throw std::logic_error("spectral witness failed the Gram check");
    out.spectral = true;
    return out;
}

struct fuglede_disagreement {
    index_set set;
    bool spectral;
    bool tiles;
};

struct fuglede_report {
    std::int64_t n = 0;
    std::int64_t max_set_size = 0;
    bool bracelet_filtered = false;
    std::uint64_t checked = 0;
    std::uint64_t spectral_count = 0;
    std::uint64_t tiling_count = 0;
    std::vector<fuglede_disagreement> disagreements;
};

inline constexpr std::int64_t fuglede_report_limit = 32;

/**
 * For every nonempty J with |J| <= max_set_size (only bracelet
 * representatives when bracelet_filter is set), compares "J is spectral"
 * against "J has a tiling partner".
 */
inline fuglede_report run_fuglede_report(const modulus_context& ctx, std::int64_t max_set_size,
                                         bool bracelet_filter = false) {
    ctx.require_prime_power();
    if (ctx.n() > fuglede_report_limit)
        throw domain_error("report-guard", "fuglede report supports N <= " + std::to_string(fuglede_report_limit));
    const int n = static_cast<int>(ctx.n());
    const auto classes = detail::class_masks(n);

    fuglede_report rep;
    rep.n = n;
    rep.max_set_size = std::min<std::int64_t>(max_set_size, n);
    rep.bracelet_filtered = bracelet_filter;

    // (size, class bits that must vanish) -> candidate partner masks
    std::map<std::pair<int, std::uint64_t>, std::vector<std::uint64_t>> partner_cache;
    auto candidates_for = [&](int size, std::uint64_t zmask) -> const std::vector<std::uint64_t>& {
        std::uint64_t need = 0;
        std::vector<int> mc;
        for (const auto& [d, cls] : classes)
            if ((zmask & cls) == 0) {  // h_J nonzero on this class, so h_K must vanish there
                need |= cls;
                int l = 0;
                for (auto x = d; x > 1; x /= ctx.p()) ++l;
                mc.push_back(l);
            }
        auto key = std::make_pair(size, need);
        auto it = partner_cache.find(key);
        if (it != partner_cache.end()) return it->second;
        std::vector<std::uint64_t> found;
        for_each_solution_mask(ctx, pivot_set(mc), size, [&](std::uint64_t m) {
            if (__builtin_popcountll(m) == size) found.push_back(m);
            return true;
        });
        return partner_cache.emplace(key, std::move(found)).first->second;
    };

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t m = 1; m < total; ++m) {
        const int size = __builtin_popcountll(m);
        if (size > rep.max_set_size) continue;
        if (bracelet_filter && !mask_ops::is_canonical(m, n)) continue;
        ++rep.checked;
        const auto zmask = detail::zero_mask_by_class(m, n, classes);
        const bool spectral = detail::spectral_witness(zmask, size, n).has_value();
        bool tiling = false;
        if (n % size == 0) {
            for (auto k : candidates_for(n / size, zmask))
                if (detail::tiles_mask(m, k, n)) {
                    tiling = true;
                    break;
                }
        }
        rep.spectral_count += spectral;
        rep.tiling_count += tiling;
        if (spectral != tiling) rep.disagreements.push_back({index_set::from_mask(n, m), spectral, tiling});
    }
    return rep;
}

}  // namespace idem
