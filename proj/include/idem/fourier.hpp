#pragma once

/**
 * @file fourier.hpp
 * @brief DFT conventions, idempotents h_J = F^{-1} 1_J and their zero sets.
 *
 * Forward transform:  (F x)(n) = sum_k x(k) w^{-kn}   (no scaling)
 * Inverse transform:  (F^{-1} y)(k) = (1/N) sum_n y(n) w^{kn}
 * so h_J(n) = (1/N) sum_{j in J} w^{jn} and h_J(0) = |J| / N.
 */

#include "cyclotomic.hpp"
#include "zn_core.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace idem {

using complex_t = std::complex<double>;

/// w_N^k computed from the reduced exponent so large k loses no accuracy.
inline complex_t root_of_unity(std::int64_t n, residue_t k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(k, n)) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

class signal {
public:
    signal() = default;
    explicit signal(std::vector<complex_t> values) : values_(std::move(values)) {
        if (values_.empty()) throw domain_error("invalid-signal", "signal must have positive length");
    }

    static signal zeros(std::int64_t n) { return signal(std::vector<complex_t>(static_cast<std::size_t>(n))); }
    static signal delta(std::int64_t n) {
        auto s = zeros(n);
        s.values_[0] = 1.0;
        return s;
    }
    static signal indicator(const index_set& s) {
        auto x = zeros(s.modulus());
        for (auto i : s.members()) x.values_[static_cast<std::size_t>(i)] = 1.0;
        return x;
    }

    std::int64_t modulus() const noexcept { return static_cast<std::int64_t>(values_.size()); }
    const std::vector<complex_t>& values() const noexcept { return values_; }
    complex_t operator[](std::size_t i) const { return values_[i]; }

    double max_abs_diff(const signal& other) const {
        check_same(other);
        double m = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i] - other.values_[i]));
        return m;
    }

    void check_same(const signal& other) const {
        if (other.values_.size() != values_.size())
            throw domain_error("length-mismatch", "signals have different lengths");
    }

private:
    std::vector<complex_t> values_;
};

namespace detail {

inline signal transform(const signal& x, int sign, double scale) {
    const auto n = x.modulus();
    std::vector<complex_t> out(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        complex_t acc = 0.0;
        for (std::int64_t j = 0; j < n; ++j) acc += x[static_cast<std::size_t>(j)] * root_of_unity(n, sign * j * k);
        out[static_cast<std::size_t>(k)] = acc * scale;
    }
    return signal(std::move(out));
}

}  // namespace detail

inline signal dft(const signal& x) { return detail::transform(x, -1, 1.0); }
inline signal idft(const signal& x) { return detail::transform(x, +1, 1.0 / static_cast<double>(x.modulus())); }

inline signal dft(const signal& x, std::int64_t expected_n) {
    if (x.modulus() != expected_n) throw domain_error("length-mismatch", "signal length differs from N");
    return dft(x);
}

/// (x * y)(n) = sum_k x(k) y(n - k mod N).
inline signal circular_convolution(const signal& x, const signal& y) {
    x.check_same(y);
    const auto n = x.modulus();
    std::vector<complex_t> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        complex_t acc = 0.0;
        for (std::int64_t k = 0; k < n; ++k)
            acc += x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(mod(i - k, n))];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return signal(std::move(out));
}

/// True iff every DFT value lies within tol of 0 or 1.
inline bool is_idempotent(const signal& x, double tol = 1e-9) {
    const auto spec = dft(x);
    for (auto v : spec.values())
        if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
    return true;
}

/// The idempotent h_J, identified by its spectrum J.
class idempotent {
public:
    explicit idempotent(index_set spectrum) : j_(std::move(spectrum)) {}

    std::int64_t modulus() const noexcept { return j_.modulus(); }
    const index_set& spectrum() const noexcept { return j_; }

    /// h_J(n) = (1/N) sum_{j in J} w^{jn}.
    complex_t evaluate(residue_t n) const {
        complex_t acc = 0.0;
        for (auto j : j_.members()) acc += root_of_unity(modulus(), j * n);
        return acc / static_cast<double>(modulus());
    }

    signal values() const {
        std::vector<complex_t> v(static_cast<std::size_t>(modulus()));
        for (std::int64_t n = 0; n < modulus(); ++n) v[static_cast<std::size_t>(n)] = evaluate(n);
        return signal(std::move(v));
    }

    /// Exact test of h_J(n) == 0 through the cyclotomic backend.
    bool vanishes_at(residue_t n) const {
        std::vector<residue_t> e;
        e.reserve(j_.size());
        for (auto j : j_.members()) e.push_back(mod(j * n, modulus()));
        return root_sum(modulus_context(modulus()), e).is_zero();
    }

private:
    index_set j_;
};

inline idempotent idempotent_from_spectrum(index_set j) { return idempotent(std::move(j)); }

enum class zero_mode { exact, floating };

struct zero_set_report {
    index_set zero_set;
    divisor_spec zero_divisors;
    bool structure_ok;
};

/// True iff z is the union of the gcd classes of its divisors, counting
/// {0} = A_N(N) as a class of its own.
inline bool has_gcd_class_structure(const index_set& z) {
    auto expanded = expand_zero_spec(divisors_in(z)).members();
    if (z.contains(0)) expanded.insert(expanded.begin(), 0);
    return expanded == z.members();
}

/**
 * Z(h), D(h) = Z(h) ∩ D_N and the gcd-class structure flag.
 * Exact mode tests every index with the cyclotomic backend; floating mode
 * thresholds |h(n)| < tol.
 */
inline zero_set_report zero_set(const idempotent& h, zero_mode mode = zero_mode::exact, double tol = 1e-9) {
    const auto n = h.modulus();
    std::vector<residue_t> z;
    if (mode == zero_mode::exact) {
        const auto& table = reduction_table_for(n);
        for (residue_t k = 0; k < n; ++k)
            if (table.dilated_sum_is_zero(h.spectrum(), k)) z.push_back(k);
    } else {
        for (residue_t k = 0; k < n; ++k)
            if (std::abs(h.evaluate(k)) < tol) z.push_back(k);
    }
    index_set zs(n, std::move(z));
    const bool ok = has_gcd_class_structure(zs);
    auto d = divisors_in(zs);
    return {std::move(zs), std::move(d), ok};
}

/**
 * Z(h) found by testing one representative (the divisor d itself) per gcd
 * class and expanding. Agrees with zero_set() because zero sets are unions
 * of gcd classes; used by the search drivers that evaluate many sets.
 */
inline index_set zero_set_by_class(const index_set& spectrum) {
    const auto n = spectrum.modulus();
    if (spectrum.empty()) return index_set::full(n);
    const auto& table = reduction_table_for(n);
    std::vector<std::int64_t> d;
    for (auto k : divisors(n))
        if (k < n && table.dilated_sum_is_zero(spectrum, k)) d.push_back(k);
    return expand_zero_spec(divisor_spec(n, std::move(d)));
}

}  // namespace idem
