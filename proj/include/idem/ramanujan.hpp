#pragma once

/**
 * @file ramanujan.hpp
 * @brief Ramanujan sums c_q(k) = sum_{n in Z_q, gcd(n,q)=1} w_q^{nk}.
 *
 * ramanujan_direct() sums the roots exactly through the cyclotomic backend;
 * ramanujan_mobius() is the divisor-sum identity used as a second route.
 */

#include "cyclotomic.hpp"
#include "zn_core.hpp"

namespace idem {

inline int mobius(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("mobius: n must be positive");
    int result = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

namespace detail {
inline void require_q(std::int64_t q) {
    if (q < 1) throw domain_error("invalid-q", "Ramanujan sum needs q >= 1");
}
}  // namespace detail

/// Sum over n with gcd(n, q) = d of w_q^{nk}, evaluated exactly.
inline std::int64_t gcd_class_exponential_sum(std::int64_t q, std::int64_t d, std::int64_t k) {
    detail::require_q(q);
    if (d < 1 || q % d != 0)
        throw domain_error("invalid-divisor", std::to_string(d) + " does not divide " + std::to_string(q));
    std::vector<residue_t> exps;
    for (std::int64_t n = 0; n < q; ++n)
        if (std::gcd(n, q) == d) exps.push_back(mod(n * mod(k, q), q));
    const auto value = root_sum(modulus_context(q), exps).as_integer();
    if (!value) throw std::logic_error("exponential sum over a gcd class is not rational");
    return static_cast<std::int64_t>(*value);
}

/// c_q(k) from the defining sum; k may be any integer.
inline std::int64_t ramanujan_direct(std::int64_t q, std::int64_t k) {
    return gcd_class_exponential_sum(q, 1, k);
}

/// c_q(k) = sum_{d | gcd(k, q)} d * mu(q / d).
inline std::int64_t ramanujan_mobius(std::int64_t q, std::int64_t k) {
    detail::require_q(q);
    const std::int64_t g = std::gcd(mod(k, q), q);
    std::int64_t sum = 0;
    for (auto d : divisors(g)) sum += d * mobius(q / d);
    return sum;
}

/// Closed form for q = p^m.
inline std::int64_t ramanujan_prime_power(std::int64_t p, int m, std::int64_t k) {
    if (!is_prime(p)) throw domain_error("not-prime", std::to_string(p) + " is not prime");
    if (m < 1) throw domain_error("invalid-exponent", "exponent must be >= 1");
    const std::int64_t lower = ipow(p, m - 1);
    const std::int64_t q = lower * p;
    if (k % lower != 0) return 0;
    if (k % q != 0) return -lower;
    return q - lower;
}

/// True iff sum_{j in J} c_{dprime}(shift + j) == 0.
inline bool annihilation_check(const index_set& j, std::int64_t dprime, std::int64_t shift) {
    detail::require_q(dprime);
    std::int64_t sum = 0;
    for (auto x : j.members()) sum += ramanujan_mobius(dprime, shift + x);
    return sum == 0;
}

}  // namespace idem
