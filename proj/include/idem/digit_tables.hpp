#pragma once

/**
 * @file digit_tables.hpp
 * @brief Base-p digit tables and the prime-power solution of P_N(D).
 *
 * For N = p^M an index set is written as a table whose rows are the base-p
 * digits of its members; column j holds the coefficient of p^j. A column is
 * a pivot when some pair of rows first differs there. A table is conforming
 * when it has exactly p^{|pivots|} rows.
 *
 * With D = { p^l : l in mc } and mc* = { M - l - 1 : l in mc }, a set J
 * solves P_N(D) exactly when its rows split into disjoint conforming tables
 * whose pivot set is mc*. Such a split exists iff, at the lowest pivot s0,
 * the rows sharing the digits below s0 fall into p digit classes that each
 * split (recursively, with the remaining pivots) into the same number of
 * blocks; blocks are then formed by taking one sub-block from every class.
 */

#include "zn_core.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace idem {

using digit_row = std::vector<int>;

class pivot_set {
public:
    pivot_set() = default;
    explicit pivot_set(std::vector<int> columns) : cols_(std::move(columns)) {
        std::sort(cols_.begin(), cols_.end());
        cols_.erase(std::unique(cols_.begin(), cols_.end()), cols_.end());
    }

    const std::vector<int>& columns() const noexcept { return cols_; }
    std::size_t size() const noexcept { return cols_.size(); }
    bool empty() const noexcept { return cols_.empty(); }

    void check_range(int m) const {
        for (int c : cols_)
            if (c < 0 || c >= m)
                throw domain_error("invalid-column", "column " + std::to_string(c) + " outside [0, " +
                                                         std::to_string(m - 1) + "]");
    }

    friend bool operator==(const pivot_set&, const pivot_set&) = default;

private:
    std::vector<int> cols_;
};

/// MC* = { M - l - 1 : l in mc }.
inline pivot_set mc_star(int m, const pivot_set& mc) {
    mc.check_range(m);
    std::vector<int> out;
    for (int l : mc.columns()) out.push_back(m - l - 1);
    return pivot_set(std::move(out));
}

/// Exponents l with p^l in the divisor spec; throws for non-prime-power N.
inline pivot_set pivots_from_divisors(const modulus_context& ctx, const divisor_spec& spec) {
    const auto p = ctx.p();
    std::vector<int> out;
    for (auto d : spec.divisors()) {
        int l = 0;
        auto x = d;
        while (x % p == 0) { x /= p; ++l; }
        if (x != 1) throw domain_error("invalid-divisor", std::to_string(d) + " is not a power of " + std::to_string(p));
        out.push_back(l);
    }
    return pivot_set(std::move(out));
}

inline divisor_spec divisors_from_pivots(const modulus_context& ctx, const pivot_set& mc) {
    mc.check_range(ctx.m());
    std::vector<std::int64_t> d;
    for (int l : mc.columns()) d.push_back(ipow(ctx.p(), l));
    return divisor_spec(ctx.n(), std::move(d));
}

class digit_table {
public:
    digit_table(int p, int m, std::vector<digit_row> rows) : p_(p), m_(m), rows_(std::move(rows)) {
        for (const auto& r : rows_) {
            if (static_cast<int>(r.size()) != m_) throw domain_error("invalid-table", "row has wrong length");
            for (int d : r)
                if (d < 0 || d >= p_) throw domain_error("invalid-table", "digit out of range");
        }
        std::sort(rows_.begin(), rows_.end());
        if (std::adjacent_find(rows_.begin(), rows_.end()) != rows_.end())
            throw domain_error("duplicate-rows", "digit table rows must be distinct");
    }

    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    /// Rows in lexicographic order, column 0 compared first.
    const std::vector<digit_row>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }

    friend bool operator==(const digit_table&, const digit_table&) = default;

private:
    int p_;
    int m_;
    std::vector<digit_row> rows_;
};

inline digit_row digits_of(residue_t x, int p, int m) {
    digit_row r(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) {
        r[static_cast<std::size_t>(c)] = static_cast<int>(x % p);
        x /= p;
    }
    return r;
}

inline residue_t value_of(const digit_row& r, int p) {
    residue_t x = 0;
    for (auto it = r.rbegin(); it != r.rend(); ++it) x = x * p + *it;
    return x;
}

inline digit_table from_index_set(const modulus_context& ctx, const index_set& j) {
    if (j.empty()) throw domain_error("empty-set", "digit table needs a nonempty index set");
    if (j.modulus() != ctx.n()) throw domain_error("modulus-mismatch", "index set modulus differs from context");
    const int p = static_cast<int>(ctx.p());
    const int m = ctx.m();
    std::vector<digit_row> rows;
    for (auto x : j.members()) rows.push_back(digits_of(x, p, m));
    return digit_table(p, m, std::move(rows));
}

inline index_set to_index_set(const digit_table& t) {
    std::vector<residue_t> v;
    for (const auto& r : t.rows()) v.push_back(value_of(r, t.p()));
    return index_set(ipow(t.p(), t.m()), std::move(v));
}

/// Columns j where some pair of rows agrees below j and differs at j.
inline pivot_set pivot_columns(const digit_table& t) {
    if (t.size() == 0) throw domain_error("empty-table", "pivot columns need at least one row");
    // For lex-sorted rows the first-difference column of any pair equals the
    // minimum over adjacent pairs between them, so adjacent pairs suffice.
    std::vector<int> cols;
    const auto& rows = t.rows();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        int c = 0;
        while (rows[i][static_cast<std::size_t>(c)] == rows[i - 1][static_cast<std::size_t>(c)]) ++c;
        cols.push_back(c);
    }
    return pivot_set(std::move(cols));
}

inline bool is_conforming(const digit_table& t) {
    if (t.size() == 0) return false;
    return static_cast<std::int64_t>(t.size()) == ipow(t.p(), static_cast<int>(pivot_columns(t).size()));
}

struct decomposition {
    digit_row prefix;                 ///< digits in the columns below the lowest pivot
    int split_column;                 ///< the lowest pivot l0
    std::vector<digit_table> blocks;  ///< block b holds digit b in column l0
};

/// Splits a conforming table at its lowest pivot into p conforming blocks.
inline decomposition decompose(const digit_table& t) {
    if (!is_conforming(t)) throw domain_error("not-conforming", "decompose needs a conforming digit table");
    const auto pivots = pivot_columns(t);
    if (pivots.empty()) throw domain_error("no-pivot", "decompose needs at least one pivot column");
    const int l0 = pivots.columns().front();
    decomposition out;
    out.split_column = l0;
    out.prefix.assign(t.rows().front().begin(), t.rows().front().begin() + l0);
    std::vector<std::vector<digit_row>> parts(static_cast<std::size_t>(t.p()));
    for (const auto& r : t.rows()) parts[static_cast<std::size_t>(r[static_cast<std::size_t>(l0)])].push_back(r);
    for (auto& part : parts) out.blocks.emplace_back(t.p(), t.m(), std::move(part));
    return out;
}

/// Row-wise concatenation; inverse of decompose().
inline digit_table concatenate(const std::vector<digit_table>& blocks) {
    if (blocks.empty()) throw domain_error("empty-table", "nothing to concatenate");
    std::vector<digit_row> rows;
    for (const auto& b : blocks) rows.insert(rows.end(), b.rows().begin(), b.rows().end());
    return digit_table(blocks.front().p(), blocks.front().m(), std::move(rows));
}

namespace detail {

/// Partition of `rows` into conforming blocks with pivot set `pivots`, or
/// nullopt when none exists. Blocks are listed by ascending prefix group.
inline std::optional<std::vector<std::vector<residue_t>>> partition_blocks(const std::vector<residue_t>& rows,
                                                                           std::span<const int> pivots,
                                                                           std::int64_t p) {
    std::vector<std::vector<residue_t>> out;
    if (pivots.empty()) {
        for (auto x : rows) out.push_back({x});
        return out;
    }
    const std::int64_t low = ipow(p, pivots.front());
    // group key: digits below s0; then digit at s0
    std::map<residue_t, std::vector<std::vector<residue_t>>> groups;
    for (auto x : rows) {
        auto& g = groups[x % low];
        if (g.empty()) g.resize(static_cast<std::size_t>(p));
        g[static_cast<std::size_t>((x / low) % p)].push_back(x);
    }
    for (auto& [key, classes] : groups) {
        std::vector<std::vector<std::vector<residue_t>>> sub;
        for (auto& cls : classes) {
            auto part = partition_blocks(cls, pivots.subspan(1), p);
            if (!part) return std::nullopt;
            sub.push_back(std::move(*part));
        }
        for (const auto& s : sub)
            if (s.size() != sub.front().size()) return std::nullopt;
        for (std::size_t i = 0; i < sub.front().size(); ++i) {
            std::vector<residue_t> block;
            for (const auto& s : sub) block.insert(block.end(), s[i].begin(), s[i].end());
            std::sort(block.begin(), block.end());
            out.push_back(std::move(block));
        }
    }
    return out;
}

}  // namespace detail

struct solution_check {
    bool solution = false;
    /// Disjoint conforming blocks covering J when solution is true.
    std::vector<index_set> certificate;
    std::string reason;
};

/// Decides whether J solves P_N(p^mc) by searching for a split of its digit
/// table into conforming tables with pivot set mc*.
inline solution_check is_solution(const modulus_context& ctx, const index_set& j, const pivot_set& mc) {
    ctx.require_prime_power();
    mc.check_range(ctx.m());
    if (j.modulus() != ctx.n()) throw domain_error("modulus-mismatch", "index set modulus differs from context");
    solution_check out;
    if (j.empty()) {
        out.solution = true;
        return out;
    }
    const auto block_size = ipow(ctx.p(), static_cast<int>(mc.size()));
    if (static_cast<std::int64_t>(j.size()) % block_size != 0) {
        out.reason = "cardinality " + std::to_string(j.size()) + " not divisible by " + std::to_string(block_size);
        return out;
    }
    const auto star = mc_star(ctx.m(), mc);
    auto blocks = detail::partition_blocks(j.members(), star.columns(), ctx.p());
    if (!blocks) {
        out.reason = "digit table does not split into conforming blocks";
        return out;
    }
    out.solution = true;
    for (auto& b : *blocks) out.certificate.emplace_back(ctx.n(), std::move(b));
    return out;
}

namespace detail {

/**
 * Generates every subset of a residue universe that splits into conforming
 * blocks with the given pivots. Works on bitmasks, so N <= 64.
 */
class solution_generator {
public:
    using callback = std::function<bool(std::uint64_t)>;

    solution_generator(int n, int p) : n_(n), p_(p) {}

    /// Calls cb for each solution inside `universe` with at most max_card
    /// members; stops early when cb returns false. Returns false if stopped.
    bool visit(std::uint64_t universe, std::span<const int> pivots, int max_card, const callback& cb) const {
        if (max_card < 0) return true;
        if (pivots.empty()) return visit_subsets(universe, max_card, cb);

        const std::int64_t low = ipow(p_, pivots.front());
        std::vector<group> groups;
        std::map<residue_t, std::size_t> index;
        for (int x = 0; x < n_; ++x) {
            if (!((universe >> x) & 1u)) continue;
            auto [it, fresh] = index.emplace(x % low, groups.size());
            if (fresh) groups.emplace_back(static_cast<std::size_t>(p_));
            groups[it->second].classes[static_cast<std::size_t>((x / low) % p_)] |= std::uint64_t{1} << x;
        }
        const int sub_cap = max_card / p_;
        for (auto& g : groups) {
            for (std::size_t d = 0; d < g.classes.size(); ++d) {
                std::vector<std::vector<std::uint64_t>> buckets(static_cast<std::size_t>(sub_cap) + 1);
                visit(g.classes[d], pivots.subspan(1), sub_cap, [&](std::uint64_t m) {
                    buckets[static_cast<std::size_t>(__builtin_popcountll(m))].push_back(m);
                    return true;
                });
                g.buckets.push_back(std::move(buckets));
            }
            for (int c = 0; c <= sub_cap; ++c) {
                bool all = true;
                for (const auto& b : g.buckets) all = all && !b[static_cast<std::size_t>(c)].empty();
                if (all) g.cards.push_back(c);
            }
        }
        return combine(groups, 0, 0, max_card, cb);
    }

private:
    struct group {
        explicit group(std::size_t p) : classes(p, 0) {}
        std::vector<std::uint64_t> classes;
        std::vector<std::vector<std::vector<std::uint64_t>>> buckets;  // [digit][card] -> masks
        std::vector<int> cards;
    };

    bool visit_subsets(std::uint64_t universe, int max_card, const callback& cb) const {
        for (std::uint64_t sub = universe;; sub = (sub - 1) & universe) {
            if (__builtin_popcountll(sub) <= max_card && !cb(sub)) return false;
            if (sub == 0) break;
        }
        return true;
    }

    bool combine(const std::vector<group>& groups, std::size_t gi, std::uint64_t acc, int budget,
                 const callback& cb) const {
        if (gi == groups.size()) return cb(acc);
        const auto& g = groups[gi];
        for (int c : g.cards) {
            if (c * p_ > budget) break;
            if (!pick(groups, gi, c, 0, acc, budget - c * p_, cb)) return false;
        }
        return true;
    }

    bool pick(const std::vector<group>& groups, std::size_t gi, int c, std::size_t d, std::uint64_t acc,
              int budget, const callback& cb) const {
        const auto& g = groups[gi];
        if (d == g.classes.size()) return combine(groups, gi + 1, acc, budget, cb);
        for (auto m : g.buckets[d][static_cast<std::size_t>(c)])
            if (!pick(groups, gi, c, d + 1, acc | m, budget, cb)) return false;
        return true;
    }

    int n_;
    int p_;
};

}  // namespace detail

/**
 * Visits every solution of P_N(p^mc) with at most max_card members as a
 * bitmask, in no particular order. Return false from cb to stop.
 */
inline void for_each_solution_mask(const modulus_context& ctx, const pivot_set& mc, std::int64_t max_card,
                                   const std::function<bool(std::uint64_t)>& cb) {
    ctx.require_prime_power();
    if (ctx.n() > 64) throw domain_error("modulus-too-large", "enumeration supports N <= 64");
    mc.check_range(ctx.m());
    const int n = static_cast<int>(ctx.n());
    const auto star = mc_star(ctx.m(), mc);
    detail::solution_generator gen(n, static_cast<int>(ctx.p()));
    gen.visit(mask_ops::full(n), star.columns(), static_cast<int>(std::min<std::int64_t>(max_card, n)), cb);
}

/// All solutions of P_N(p^mc) with |J| <= max_card (default N), including
/// the empty set, in lexicographic order of their member sequences.
inline std::vector<index_set> enumerate_solutions(const modulus_context& ctx, const pivot_set& mc,
                                                  std::optional<std::int64_t> max_card = std::nullopt) {
    std::vector<std::uint64_t> masks;
    for_each_solution_mask(ctx, mc, max_card.value_or(ctx.n()), [&](std::uint64_t m) {
        masks.push_back(m);
        return true;
    });
    std::sort(masks.begin(), masks.end(), mask_ops::lex_less);
    std::vector<index_set> out;
    out.reserve(masks.size());
    for (auto m : masks) out.push_back(index_set::from_mask(ctx.n(), m));
    return out;
}

/**
 * Builds one conforming table with pivot set `pivots`:
 *   { prefix + sum_t d_t p^{s_t} + offsets[path] }
 * over all digit paths (d_0, ..., d_{k-1}), path index sum_t d_t p^{k-1-t}.
 * prefix must live in the columns below the lowest pivot; each offset must
 * be zero in those columns and in every pivot column.
 */
inline digit_table generate_conforming(const modulus_context& ctx, const pivot_set& pivots, residue_t prefix,
                                       std::span<const residue_t> offsets) {
    ctx.require_prime_power();
    pivots.check_range(ctx.m());
    const auto p = ctx.p();
    const int k = static_cast<int>(pivots.size());
    const auto paths = ipow(p, k);
    if (static_cast<std::int64_t>(offsets.size()) != paths)
        throw domain_error("invalid-digit-choice",
                           "expected " + std::to_string(paths) + " offsets, got " + std::to_string(offsets.size()));
    const std::int64_t low = k == 0 ? ctx.n() : ipow(p, pivots.columns().front());
    if (prefix < 0 || prefix >= low) throw domain_error("invalid-digit-choice", "prefix outside the pre-pivot columns");

    std::vector<residue_t> members;
    for (std::int64_t path = 0; path < paths; ++path) {
        const auto b = offsets[static_cast<std::size_t>(path)];
        if (b < 0 || b >= ctx.n() || b % low != 0)
            throw domain_error("invalid-digit-choice", "offset touches the pre-pivot columns");
        residue_t x = prefix + b;
        std::int64_t rest = path;
        for (int t = k - 1; t >= 0; --t) {
            const auto col = ipow(p, pivots.columns()[static_cast<std::size_t>(t)]);
            if ((b / col) % p != 0) throw domain_error("invalid-digit-choice", "offset touches a pivot column");
            x += (rest % p) * col;
            rest /= p;
        }
        members.push_back(x);
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw domain_error("duplicate-rows", "digit choices produce colliding rows");
    auto table = from_index_set(ctx, index_set(ctx.n(), members));
    if (!(pivot_columns(table) == pivots))
        throw domain_error("invalid-digit-choice", "digit choices change the pivot columns");
    return table;
}

/**
 * For a solution J of P_N(p^l) containing 0 and made of multiples of
 * p^{l'-1} (l' = M - l): true iff J mod p^{l'} hits 0 and every nonzero
 * multiple of p^{l'-1} with one common multiplicity.
 */
inline bool singleton_multiset_check(const modulus_context& ctx, const index_set& j, int l) {
    ctx.require_prime_power();
    if (l < 0 || l >= ctx.m()) throw domain_error("invalid-column", "l outside [0, M-1]");
    const auto p = ctx.p();
    const int lp = ctx.m() - l;
    const auto base = ipow(p, lp - 1);
    const auto dprime = base * p;
    if (!j.contains(0)) throw domain_error("precondition-violated", "set must contain 0");
    std::vector<std::int64_t> mult(static_cast<std::size_t>(p), 0);
    for (auto x : j.members()) {
        if (x % base != 0)
            throw domain_error("precondition-violated",
                               std::to_string(x) + " is not a multiple of " + std::to_string(base));
        ++mult[static_cast<std::size_t>((x % dprime) / base)];
    }
    return std::all_of(mult.begin(), mult.end(), [&](std::int64_t c) { return c == mult[0]; });
}

}  // namespace idem
