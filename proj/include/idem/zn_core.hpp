#pragma once

/**
 * @file zn_core.hpp
 * @brief Arithmetic and combinatorics on Z_N.
 *
 * Residue sets, gcd classes A_N(k) = { i : gcd(i, N) = k }, divisor specs
 * and the dihedral action (translations and reversal) whose orbits are
 * called bracelets.
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace idem {

using residue_t = std::int64_t;

/// Raised for inputs that violate a domain precondition (bad divisor,
/// non-prime-power modulus where one is required, ...).
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline residue_t mod(residue_t x, residue_t n) {
    residue_t r = x % n;
    return r < 0 ? r + n : r;
}

inline residue_t gcd_n(residue_t a, residue_t n) {
    return std::gcd(mod(a, n), n);
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

/// All positive divisors of n in ascending order (including n).
inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

inline std::int64_t totient(std::int64_t n) {
    std::int64_t r = 0;
    for (std::int64_t i = 1; i <= n; ++i)
        if (std::gcd(i, n) == 1) ++r;
    return r;
}

/// A modulus together with its factorization.
class modulus_context {
public:
    explicit modulus_context(std::int64_t n) : n_(n) {
        if (n < 1) throw domain_error("invalid-modulus", "modulus must be positive");
        std::int64_t rest = n;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            int e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            if (e > 0) factors_.emplace_back(p, e);
        }
        if (rest > 1) factors_.emplace_back(rest, 1);
    }

    std::int64_t n() const noexcept { return n_; }
    const std::vector<std::pair<std::int64_t, int>>& factorization() const noexcept { return factors_; }
    bool is_prime_power() const noexcept { return factors_.size() == 1; }

    /// Prime p of N = p^M; throws unless N is a prime power.
    std::int64_t p() const {
        require_prime_power();
        return factors_[0].first;
    }
    /// Exponent M of N = p^M; throws unless N is a prime power.
    int m() const {
        require_prime_power();
        return factors_[0].second;
    }

    void require_prime_power() const {
        if (!is_prime_power())
            throw domain_error("not-prime-power",
                               "modulus " + std::to_string(n_) + " is not a prime power");
    }

private:
    std::int64_t n_;
    std::vector<std::pair<std::int64_t, int>> factors_;
};

/// A subset of Z_N stored as a strictly increasing sequence of residues.
class index_set {
public:
    index_set() = default;

    index_set(std::int64_t n, std::vector<residue_t> members) : n_(n), members_(std::move(members)) {
        if (n < 1) throw domain_error("invalid-modulus", "modulus must be positive");
        for (auto& m : members_) {
            if (m < 0 || m >= n)
                throw domain_error("invalid-residue",
                                   "residue " + std::to_string(m) + " out of range for N=" + std::to_string(n));
        }
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw domain_error("duplicate-residue", "index set members must be distinct");
    }

    /// Builds a set from arbitrary integers, reducing mod n and dropping duplicates.
    static index_set from_residues(std::int64_t n, std::span<const residue_t> values) {
        std::vector<residue_t> v;
        v.reserve(values.size());
        for (auto x : values) v.push_back(mod(x, n));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return index_set(n, std::move(v));
    }

    static index_set full(std::int64_t n) {
        std::vector<residue_t> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), residue_t{0});
        return index_set(n, std::move(v));
    }

    /// Bit i of mask is member i; requires n <= 64.
    static index_set from_mask(std::int64_t n, std::uint64_t mask) {
        std::vector<residue_t> v;
        for (residue_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) v.push_back(i);
        return index_set(n, std::move(v));
    }

    std::uint64_t mask() const {
        if (n_ > 64) throw domain_error("modulus-too-large", "bitmask form needs N <= 64");
        std::uint64_t m = 0;
        for (auto x : members_) m |= std::uint64_t{1} << x;
        return m;
    }

    std::int64_t modulus() const noexcept { return n_; }
    const std::vector<residue_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(residue_t x) const { return std::binary_search(members_.begin(), members_.end(), x); }

    bool includes(const index_set& other) const {
        return std::includes(members_.begin(), members_.end(), other.members_.begin(), other.members_.end());
    }

    friend bool operator==(const index_set&, const index_set&) = default;
    /// Lexicographic order of the member sequences (modulus first).
    friend auto operator<=>(const index_set& a, const index_set& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                      b.members_.begin(), b.members_.end());
    }

private:
    std::int64_t n_ = 1;
    std::vector<residue_t> members_;
};

/// A set of proper divisors of N.
class divisor_spec {
public:
    divisor_spec(std::int64_t n, std::vector<std::int64_t> divs) : n_(n), divs_(std::move(divs)) {
        std::sort(divs_.begin(), divs_.end());
        divs_.erase(std::unique(divs_.begin(), divs_.end()), divs_.end());
        for (auto d : divs_) {
            if (d < 1 || d >= n || n % d != 0)
                throw domain_error("invalid-divisor",
                                   std::to_string(d) + " is not a proper divisor of " + std::to_string(n));
        }
    }

    std::int64_t modulus() const noexcept { return n_; }
    const std::vector<std::int64_t>& divisors() const noexcept { return divs_; }
    bool empty() const noexcept { return divs_.empty(); }

    friend bool operator==(const divisor_spec&, const divisor_spec&) = default;

private:
    std::int64_t n_;
    std::vector<std::int64_t> divs_;
};

/// A_N(k): residues i with gcd(i, N) = k. k = N is accepted and yields {0}.
inline index_set gcd_class(const modulus_context& ctx, std::int64_t k) {
    const auto n = ctx.n();
    if (k < 1 || k > n || n % k != 0)
        throw domain_error("invalid-divisor", std::to_string(k) + " does not divide " + std::to_string(n));
    std::vector<residue_t> v;
    for (residue_t i = 0; i < n; ++i)
        if (std::gcd(i, n) == k) v.push_back(i);
    return index_set(n, std::move(v));
}

/// Z = { i : gcd(i, N) in D }.
inline index_set expand_zero_spec(const divisor_spec& spec) {
    const modulus_context ctx(spec.modulus());
    std::vector<residue_t> v;
    for (auto d : spec.divisors()) {
        auto cls = gcd_class(ctx, d);
        v.insert(v.end(), cls.members().begin(), cls.members().end());
    }
    return index_set(spec.modulus(), std::move(v));
}

/// Proper divisors of N that occur in the set (D(h) = Z(h) ∩ D_N).
inline divisor_spec divisors_in(const index_set& s) {
    std::vector<std::int64_t> d;
    for (auto x : s.members())
        if (x > 0 && s.modulus() % x == 0) d.push_back(x);
    return divisor_spec(s.modulus(), std::move(d));
}

/// tau^k: i -> i - k.
inline index_set translate(const index_set& s, residue_t k) {
    std::vector<residue_t> v;
    v.reserve(s.size());
    for (auto i : s.members()) v.push_back(mod(i - k, s.modulus()));
    std::sort(v.begin(), v.end());
    return index_set(s.modulus(), std::move(v));
}

/// rho: i -> -i.
inline index_set reverse(const index_set& s) {
    std::vector<residue_t> v;
    v.reserve(s.size());
    for (auto i : s.members()) v.push_back(mod(-i, s.modulus()));
    std::sort(v.begin(), v.end());
    return index_set(s.modulus(), std::move(v));
}

/// Orbit of s under all translations and the reversal.
inline std::set<index_set> bracelet(const index_set& s) {
    std::set<index_set> out;
    const auto r = reverse(s);
    for (residue_t k = 0; k < s.modulus(); ++k) {
        out.insert(translate(s, k));
        out.insert(translate(r, k));
    }
    return out;
}

/// Lexicographically least member of bracelet(s).
inline index_set canonical_bracelet_rep(const index_set& s) {
    return *bracelet(s).begin();
}

// Bitmask forms of the dihedral action for N <= 64; the enumeration-heavy
// drivers work on masks to avoid allocating a vector per subset.
namespace mask_ops {

inline std::uint64_t full(int n) {
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

/// Mask of { (i - k) mod n : i in m }.
inline std::uint64_t translate(std::uint64_t m, int k, int n) {
    k = static_cast<int>(mod(k, n));
    if (k == 0) return m;
    return ((m >> k) | (m << (n - k))) & full(n);
}

inline std::uint64_t reverse(std::uint64_t m, int n) {
    std::uint64_t out = m & 1u;
    for (int i = 1; i < n; ++i)
        if ((m >> i) & 1u) out |= std::uint64_t{1} << (n - i);
    return out;
}

/// True iff the sorted member sequence of a precedes that of b.
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t x = a ^ b;
    if (x == 0) return false;
    const int i = __builtin_ctzll(x);
    const std::uint64_t above = (i == 63) ? 0 : ~((std::uint64_t{2} << i) - 1);
    if ((a >> i) & 1u) return (b & above) != 0;  // b either continues past i (a smaller) or is a prefix of a
    return (a & above) == 0;
}

/// True iff m is the lex-least member of its bracelet.
inline bool is_canonical(std::uint64_t m, int n) {
    const std::uint64_t r = reverse(m, n);
    for (int k = 0; k < n; ++k) {
        if (lex_less(translate(m, k, n), m)) return false;
        if (lex_less(translate(r, k, n), m)) return false;
    }
    return true;
}

}  // namespace mask_ops

}  // namespace idem
