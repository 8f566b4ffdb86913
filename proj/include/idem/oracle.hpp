#pragma once

/**
 * @file oracle.hpp
 * @brief Exhaustive ground truth for the zero-set problem.
 *
 * Every subset J of Z_N is visited (Gray-code order, one member toggled per
 * step) while the exact residues of sum_{j in J} w^{jn} modulo Phi_N are
 * kept for each tested index n. Nothing here uses the digit-table theory,
 * so the results can be held against it.
 */

#include "cyclotomic.hpp"
#include "digit_tables.hpp"
#include "zn_core.hpp"

#include <thread>

namespace idem {

enum class oracle_mode { vanish_at_least, exact_zero_set };

struct oracle_options {
    std::int64_t max_cardinality = -1;  ///< negative means N
    bool allow_large = false;           ///< lift the N <= 24 guard (hard limit 32)
    unsigned jobs = 1;
};

inline constexpr std::int64_t oracle_default_limit = 24;
inline constexpr std::int64_t oracle_hard_limit = 32;

namespace detail {

inline void check_oracle_size(std::int64_t n, bool allow_large) {
    if (n > oracle_hard_limit || (!allow_large && n > oracle_default_limit))
        throw domain_error("oracle-guard", "exhaustive search over 2^" + std::to_string(n) +
                                               " subsets refused; limit is N <= " +
                                               std::to_string(allow_large ? oracle_hard_limit : oracle_default_limit));
}

/**
 * Calls visit(mask, zero_bits) for every subset mask of Z_N, where bit t of
 * zero_bits is set iff sum_{j in mask} w^{j * tested[t]} == 0 exactly.
 * w^{tested[t]} has order q = N / gcd(tested[t], N), so that sum is reduced
 * modulo Phi_q, the minimal polynomial of a primitive q-th root.
 * The Gray-code index range is split evenly across `jobs` threads; visit
 * must tolerate concurrent calls for distinct masks.
 */
template <typename Visit>
void scan_subsets(std::int64_t n, std::span<const residue_t> tested, unsigned jobs, Visit&& visit) {
    if (tested.size() > 64) throw std::invalid_argument("scan_subsets: at most 64 tested indices");
    const std::size_t t_count = tested.size();

    // segment t holds x^{j * tested[t] / g} mod Phi_{N/g}
    std::vector<std::size_t> offset(t_count + 1, 0);
    std::vector<const reduction_table*> tables(t_count);
    for (std::size_t t = 0; t < t_count; ++t) {
        const auto q = n / std::gcd(mod(tested[t], n), n);
        tables[t] = &reduction_table_for(q);
        offset[t + 1] = offset[t] + tables[t]->width();
    }
    const std::size_t w = offset[t_count];

    // sparse rows: row j lists (accumulator slot, tested index, value)
    struct entry {
        std::uint32_t slot;
        std::uint32_t t;
        std::int32_t v;
    };
    std::vector<std::vector<entry>> rows(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < t_count; ++t) {
            const auto g = n / tables[t]->modulus();
            auto r = tables[t]->row(mod(j * tested[t], n) / g);
            for (std::size_t c = 0; c < r.size(); ++c)
                if (r[c] != 0)
                    rows[static_cast<std::size_t>(j)].push_back(
                        {static_cast<std::uint32_t>(offset[t] + c), static_cast<std::uint32_t>(t), r[c]});
        }

    const std::uint64_t total = std::uint64_t{1} << n;
    jobs = std::max(1u, jobs);
    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::int32_t> acc(w, 0);
        std::vector<std::int32_t> nonzero(t_count, 0);  // nonzero slots per tested index
        std::uint64_t zeros = t_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t_count) - 1;
        auto apply = [&](std::int64_t j, std::int32_t sign) {
            for (const auto& e : rows[static_cast<std::size_t>(j)]) {
                auto& a = acc[e.slot];
                const bool was = a != 0;
                a += sign * e.v;
                const bool is = a != 0;
                if (was == is) continue;
                auto& cnt = nonzero[e.t];
                if (is && cnt++ == 0) zeros &= ~(std::uint64_t{1} << e.t);
                if (!is && --cnt == 0) zeros |= std::uint64_t{1} << e.t;
            }
        };
        std::uint64_t mask = begin ^ (begin >> 1);
        for (std::int64_t j = 0; j < n; ++j)
            if ((mask >> j) & 1u) apply(j, 1);
        for (std::uint64_t i = begin;;) {
            visit(mask, zeros);
            if (++i == end) break;
            const int j = __builtin_ctzll(i);
            mask ^= std::uint64_t{1} << j;
            apply(j, ((mask >> j) & 1u) ? 1 : -1);
        }
    };
    if (jobs == 1) {
        worker(0, total);
        return;
    }
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (std::uint64_t b = 0; b < total; b += chunk) threads.emplace_back(worker, b, std::min(total, b + chunk));
    for (auto& t : threads) t.join();
}

}  // namespace detail

/**
 * All J with Z ⊆ Z(h_J) (vanish_at_least) or Z(h_J) = Z (exact_zero_set),
 * |J| <= max_cardinality, sorted lexicographically.
 */
inline std::vector<index_set> brute_force_solutions(std::int64_t n, const index_set& zeros, oracle_mode mode,
                                                    const oracle_options& opt = {}) {
    detail::check_oracle_size(n, opt.allow_large);
    if (zeros.modulus() != n) throw domain_error("modulus-mismatch", "zero set modulus differs from N");
    const std::int64_t cap = opt.max_cardinality < 0 ? n : opt.max_cardinality;

    std::vector<residue_t> tested;
    if (mode == oracle_mode::vanish_at_least) {
        tested = zeros.members();
    } else {
        for (residue_t k = 0; k < n; ++k) tested.push_back(k);
    }
    const std::uint64_t want = mode == oracle_mode::vanish_at_least
                                   ? mask_ops::full(static_cast<int>(tested.size()))
                                   : zeros.mask();

    std::mutex lock;
    std::vector<std::uint64_t> found;
    detail::scan_subsets(n, tested, opt.jobs, [&](std::uint64_t mask, std::uint64_t z) {
        if (__builtin_popcountll(mask) > cap || z != want) return;
        std::lock_guard g(lock);
        found.push_back(mask);
    });
    std::sort(found.begin(), found.end(), mask_ops::lex_less);
    std::vector<index_set> out;
    out.reserve(found.size());
    for (auto m : found) out.push_back(index_set::from_mask(n, m));
    return out;
}

/**
 * For every subset mask of Z_N, bit c of profile[mask] is set iff h_mask
 * vanishes at every element of A_N(d_c), d_c the c-th proper divisor of N.
 * Each element of each class is tested on its own.
 */
struct zero_class_profile {
    std::int64_t n = 0;
    std::vector<std::int64_t> class_divisors;
    std::vector<std::uint8_t> bits;

    std::uint8_t bits_for(const divisor_spec& spec) const {
        std::uint8_t b = 0;
        for (auto d : spec.divisors()) {
            auto it = std::find(class_divisors.begin(), class_divisors.end(), d);
            if (it == class_divisors.end()) throw domain_error("invalid-divisor", "divisor not in profile");
            b |= static_cast<std::uint8_t>(1u << (it - class_divisors.begin()));
        }
        return b;
    }
};

inline zero_class_profile build_zero_class_profile(std::int64_t n, const oracle_options& opt = {}) {
    detail::check_oracle_size(n, opt.allow_large);
    zero_class_profile prof;
    prof.n = n;
    for (auto d : divisors(n))
        if (d < n) prof.class_divisors.push_back(d);
    if (prof.class_divisors.size() > 8) throw domain_error("oracle-guard", "too many divisor classes for profile");

    std::vector<residue_t> tested;
    std::vector<std::uint64_t> class_masks;  // over tested indices
    const modulus_context ctx(n);
    for (auto d : prof.class_divisors) {
        std::uint64_t m = 0;
        const auto cls = gcd_class(ctx, d);
        for (auto x : cls.members()) {
            m |= std::uint64_t{1} << tested.size();
            tested.push_back(x);
        }
        class_masks.push_back(m);
    }
    prof.bits.assign(std::size_t{1} << n, 0);
    detail::scan_subsets(n, tested, opt.jobs, [&](std::uint64_t mask, std::uint64_t z) {
        std::uint8_t b = 0;
        for (std::size_t c = 0; c < class_masks.size(); ++c)
            if ((z & class_masks[c]) == class_masks[c]) b |= static_cast<std::uint8_t>(1u << c);
        prof.bits[mask] = b;
    });
    return prof;
}

struct theorem_comparison {
    std::int64_t n = 0;
    pivot_set mc;
    std::uint64_t oracle_count = 0;
    std::uint64_t theorem_count = 0;
    std::uint64_t duplicates = 0;
    std::vector<index_set> only_oracle;   ///< capped at `sample_limit`
    std::vector<index_set> only_theorem;  ///< capped at `sample_limit`
    std::uint64_t only_oracle_count = 0;
    std::uint64_t only_theorem_count = 0;

    bool pass() const { return only_oracle_count == 0 && only_theorem_count == 0 && duplicates == 0; }
};

inline theorem_comparison compare_with_theorem(const modulus_context& ctx, const pivot_set& mc,
                                               const zero_class_profile& prof, std::size_t sample_limit = 100) {
    ctx.require_prime_power();
    if (prof.n != ctx.n()) throw domain_error("modulus-mismatch", "profile built for another N");
    const auto want = prof.bits_for(divisors_from_pivots(ctx, mc));
    const std::uint64_t total = std::uint64_t{1} << ctx.n();

    theorem_comparison rep;
    rep.n = ctx.n();
    rep.mc = mc;
    std::vector<std::uint64_t> seen((total + 63) / 64, 0);
    for_each_solution_mask(ctx, mc, ctx.n(), [&](std::uint64_t m) {
        auto& word = seen[m >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (m & 63);
        if (word & bit) ++rep.duplicates;
        word |= bit;
        ++rep.theorem_count;
        return true;
    });
    for (std::uint64_t m = 0; m < total; ++m) {
        const bool oracle = (prof.bits[m] & want) == want;
        const bool theorem = (seen[m >> 6] >> (m & 63)) & 1u;
        rep.oracle_count += oracle;
        if (oracle && !theorem) {
            if (rep.only_oracle.size() < sample_limit) rep.only_oracle.push_back(index_set::from_mask(ctx.n(), m));
            ++rep.only_oracle_count;
        } else if (theorem && !oracle) {
            if (rep.only_theorem.size() < sample_limit) rep.only_theorem.push_back(index_set::from_mask(ctx.n(), m));
            ++rep.only_theorem_count;
        }
    }
    return rep;
}

inline theorem_comparison compare_with_theorem(const modulus_context& ctx, const pivot_set& mc,
                                               const oracle_options& opt = {}) {
    return compare_with_theorem(ctx, mc, build_zero_class_profile(ctx.n(), opt));
}

}  // namespace idem
