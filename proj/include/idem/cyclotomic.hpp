#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact zero-testing of sums of N-th roots of unity.
 *
 * A sum  sum_j w^{e_j}  with w = exp(2 pi i / N) is represented by the
 * polynomial  sum_j x^{e_j mod N}  reduced modulo the N-th cyclotomic
 * polynomial Phi_N. Because Phi_N is the minimal polynomial of w, the
 * reduced residue is zero exactly when the complex sum vanishes.
 */

#include "zn_core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace idem {

using bigint = boost::multiprecision::cpp_int;

/// Integer polynomial; coefficient i multiplies x^i. The zero polynomial
/// is the empty sequence, otherwise the last coefficient is nonzero.
class int_poly {
public:
    int_poly() = default;
    explicit int_poly(std::vector<bigint> c) : c_(std::move(c)) { trim(); }

    static int_poly monomial(std::size_t degree, bigint coeff = 1) {
        std::vector<bigint> c(degree + 1);
        c[degree] = std::move(coeff);
        return int_poly(std::move(c));
    }

    const std::vector<bigint>& coefficients() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }

    bigint coeff(std::size_t i) const { return i < c_.size() ? c_[i] : bigint(0); }

    friend int_poly operator*(const int_poly& a, const int_poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<bigint> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return int_poly(std::move(c));
    }

    friend int_poly operator-(const int_poly& a, const int_poly& b) {
        std::vector<bigint> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return int_poly(std::move(c));
    }

    friend bool operator==(const int_poly&, const int_poly&) = default;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<bigint> c_;
};

/// Quotient and remainder of num / den for a monic divisor.
inline std::pair<int_poly, int_poly> divmod_monic(const int_poly& num, const int_poly& den) {
    if (den.is_zero() || den.coefficients().back() != 1)
        throw std::invalid_argument("divmod_monic: divisor must be monic");
    std::vector<bigint> r = num.coefficients();
    const auto& d = den.coefficients();
    const std::size_t dd = d.size() - 1;
    if (r.size() <= dd) return {int_poly{}, num};
    std::vector<bigint> q(r.size() - dd);
    for (std::size_t i = r.size(); i-- > dd;) {
        const bigint lead = r[i];
        if (lead == 0) continue;
        q[i - dd] = lead;
        for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= lead * d[j];
    }
    r.resize(dd);
    return {int_poly(std::move(q)), int_poly(std::move(r))};
}

namespace detail {

inline int_poly compute_cyclotomic(std::int64_t n);

struct cyclotomic_cache {
    std::mutex lock;
    std::map<std::int64_t, std::shared_ptr<const int_poly>> polys;

    static cyclotomic_cache& instance() {
        static cyclotomic_cache c;
        return c;
    }
};

}  // namespace detail

/// Phi_N, computed as (x^N - 1) / prod_{d | N, d < N} Phi_d.
inline const int_poly& cyclotomic_poly(std::int64_t n) {
    if (n < 1) throw domain_error("invalid-modulus", "cyclotomic index must be positive");
    auto& cache = detail::cyclotomic_cache::instance();
    {
        std::lock_guard g(cache.lock);
        if (auto it = cache.polys.find(n); it != cache.polys.end()) return *it->second;
    }
    auto computed = std::make_shared<const int_poly>(detail::compute_cyclotomic(n));
    std::lock_guard g(cache.lock);
    auto [it, inserted] = cache.polys.emplace(n, std::move(computed));
    return *it->second;
}

inline int_poly detail::compute_cyclotomic(std::int64_t n) {
    int_poly num = int_poly::monomial(static_cast<std::size_t>(n)) - int_poly::monomial(0);
    for (auto d : divisors(n)) {
        if (d == n) break;
        auto [q, r] = divmod_monic(num, cyclotomic_poly(d));
        if (!r.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
        num = std::move(q);
    }
    return num;
}

/// An element of Z[w_N] held as its residue modulo Phi_N.
class cyclo_elem {
public:
    cyclo_elem(std::int64_t n, int_poly residue) : n_(n), residue_(std::move(residue)) {}

    std::int64_t modulus() const noexcept { return n_; }
    const int_poly& residue() const noexcept { return residue_; }
    bool is_zero() const noexcept { return residue_.is_zero(); }

    /// The integer value when the element is rational (residue of degree <= 0).
    std::optional<bigint> as_integer() const {
        if (residue_.degree() > 0) return std::nullopt;
        return residue_.coeff(0);
    }

    friend bool operator==(const cyclo_elem&, const cyclo_elem&) = default;

private:
    std::int64_t n_;
    int_poly residue_;
};

/// Exact representative of sum_j w_N^{e_j} (exponents may repeat or be negative).
inline cyclo_elem root_sum(const modulus_context& ctx, std::span<const residue_t> exponents) {
    const auto n = ctx.n();
    std::vector<bigint> counts(static_cast<std::size_t>(n));
    for (auto e : exponents) counts[static_cast<std::size_t>(mod(e, n))] += 1;
    auto [q, r] = divmod_monic(int_poly(std::move(counts)), cyclotomic_poly(n));
    return cyclo_elem(n, std::move(r));
}

inline bool is_zero(const cyclo_elem& e) { return e.is_zero(); }

/**
 * Precomputed reductions of x^e mod Phi_N for e in [0, N), as machine
 * integers. A root sum is the coefficient-wise sum of the rows for its
 * exponents, so this is the same exact reduction as root_sum() without
 * big-integer work per call. Construction checks that the entries fit.
 */
class reduction_table {
public:
    explicit reduction_table(std::int64_t n) : n_(n) {
        const auto& phi = cyclotomic_poly(n);
        width_ = static_cast<std::size_t>(phi.degree());
        rows_.assign(static_cast<std::size_t>(n) * width_, 0);
        for (std::int64_t e = 0; e < n; ++e) {
            auto r = divmod_monic(int_poly::monomial(static_cast<std::size_t>(e)), phi).second;
            for (std::size_t i = 0; i < width_; ++i) {
                const bigint c = r.coeff(i);
                if (boost::multiprecision::abs(c) > bigint(1) << 24)
                    throw std::overflow_error("reduction_table: coefficient too large");
                rows_[static_cast<std::size_t>(e) * width_ + i] = static_cast<std::int32_t>(c);
            }
        }
    }

    std::int64_t modulus() const noexcept { return n_; }
    /// phi(N): length of each reduced row.
    std::size_t width() const noexcept { return width_; }

    std::span<const std::int32_t> row(residue_t e) const {
        return {rows_.data() + static_cast<std::size_t>(mod(e, n_)) * width_, width_};
    }

    /// Largest absolute entry over all rows.
    std::int32_t max_abs() const {
        std::int32_t m = 0;
        for (auto v : rows_) m = std::max(m, v < 0 ? -v : v);
        return m;
    }

    /// Exact test of sum_j w^{e_j} == 0.
    bool sum_is_zero(std::span<const residue_t> exponents) const {
        std::vector<std::int64_t> acc(width_, 0);
        for (auto e : exponents) {
            auto r = row(e);
            for (std::size_t i = 0; i < width_; ++i) acc[i] += r[i];
        }
        return std::all_of(acc.begin(), acc.end(), [](std::int64_t v) { return v == 0; });
    }

    /// Exact test of sum_{j in s} w^{j*k} == 0.
    bool dilated_sum_is_zero(const index_set& s, residue_t k) const {
        std::vector<std::int64_t> acc(width_, 0);
        for (auto j : s.members()) {
            auto r = row(mod(j * k, n_));
            for (std::size_t i = 0; i < width_; ++i) acc[i] += r[i];
        }
        return std::all_of(acc.begin(), acc.end(), [](std::int64_t v) { return v == 0; });
    }

private:
    std::int64_t n_;
    std::size_t width_ = 0;
    std::vector<std::int32_t> rows_;
};

/// Shared per-modulus reduction table (initialized once, read-only afterwards).
inline const reduction_table& reduction_table_for(std::int64_t n) {
    static std::mutex lock;
    static std::map<std::int64_t, std::unique_ptr<const reduction_table>> tables;
    std::lock_guard g(lock);
    auto& slot = tables[n];
    if (!slot) slot = std::make_unique<const reduction_table>(n);
    return *slot;
}

}  // namespace idem
