#pragma once

/**
 * @file sampling.hpp
 * @brief Multicoset sampling patterns from fragment sets.
 *
 * A signal whose spectrum lives on unit fragments [k, k+1), k in F, sampled
 * at times m/N + kN (m in J) has sampled spectrum
 *     S(s) = sum_k h_J(k) X(s - k).
 * Aliases of fragment k2 onto fragment k1 are scaled by h_J(k1 - k2), so a
 * pattern is alias-free when h_J vanishes on the fragment differences.
 *
 * The simulation discretizes frequency into R bins per unit over one
 * period [0, N); shifts are circular over N*R bins, which matches the
 * continuous sum exactly on [0, N) because h_J is N-periodic.
 */

#include "digit_tables.hpp"
#include "fourier.hpp"
#include "oracle.hpp"

#include <random>

namespace idem {

class fragment_set {
public:
    explicit fragment_set(std::vector<std::int64_t> fragments) : f_(std::move(fragments)) {
        std::sort(f_.begin(), f_.end());
        if (f_.empty()) throw domain_error("invalid-fragments", "fragment set must be nonempty");
        if (f_.front() < 0) throw domain_error("invalid-fragments", "fragments must be non-negative");
        if (std::adjacent_find(f_.begin(), f_.end()) != f_.end())
            throw domain_error("invalid-fragments", "fragments must be distinct");
    }

    const std::vector<std::int64_t>& fragments() const noexcept { return f_; }
    std::int64_t max() const { return f_.back(); }

    void check_modulus(std::int64_t n) const {
        if (n <= max() + 1)
            throw domain_error("modulus-too-small",
                               "N must exceed max(F) + 1 = " + std::to_string(max() + 1));
    }

private:
    std::vector<std::int64_t> f_;
};

/// { (k1 - k2) mod N : k1 != k2 in F }.
inline index_set required_zero_set(const fragment_set& f, std::int64_t n) {
    f.check_modulus(n);
    std::vector<residue_t> d;
    for (auto a : f.fragments())
        for (auto b : f.fragments())
            if (a != b) d.push_back(a - b);
    return index_set::from_residues(n, d);
}

struct sampling_design {
    index_set pattern;  ///< offsets J within one period
    idempotent h;
    std::int64_t rate;  ///< samples per unit time, |J|
};

/**
 * Smallest nonempty J (lex-least among ties) whose idempotent vanishes on
 * the fragment differences. Prime-power N goes through the digit-table
 * enumeration, other N through the exhaustive oracle.
 */
inline sampling_design design_pattern(const fragment_set& f, std::int64_t n) {
    const auto zeros = required_zero_set(f, n);
    const modulus_context ctx(n);
    std::vector<index_set> candidates;
    if (ctx.is_prime_power()) {
        // vanishing at one element of a gcd class forces the whole class
        std::vector<std::int64_t> d;
        for (auto z : zeros.members()) d.push_back(std::gcd(z, n));
        const auto mc = pivots_from_divisors(ctx, divisor_spec(n, std::move(d)));
        candidates = enumerate_solutions(ctx, mc);
    } else {
        candidates = brute_force_solutions(n, zeros, oracle_mode::vanish_at_least);
    }
    const index_set* best = nullptr;
    for (const auto& c : candidates) {
        if (c.empty()) continue;
        if (!best || c.size() < best->size()) best = &c;  // candidates are lex-sorted
    }
    if (!best) throw domain_error("no-design", "no nonempty sampling pattern exists");
    const idempotent h(*best);
    const auto& table = reduction_table_for(n);
    for (auto z : zeros.members())
        if (!table.dilated_sum_is_zero(*best, z)) throw std::logic_error("design does not vanish on required zeros");
    return {*best, h, static_cast<std::int64_t>(best->size())};
}

struct simulation_params {
    std::int64_t oversample = 16;  ///< R: bins per unit frequency
    std::uint64_t seed = 1;
};

struct simulation_report {
    double max_error = 0.0;             ///< max |X_hat - X| over fragment bins
    std::vector<double> alias_energy;   ///< per shift k: sum over fragment bins of |h(k) X(b - kR)|^2, k = 0 unused
    double total_alias_energy = 0.0;
    std::vector<complex_t> spectrum;    ///< original X over N*R bins
    std::vector<complex_t> sampled;     ///< S over N*R bins
};

inline simulation_report simulate(const fragment_set& f, const index_set& pattern, const simulation_params& sim) {
    const auto n = pattern.modulus();
    f.check_modulus(n);
    if (pattern.empty()) throw domain_error("invalid-pattern", "sampling pattern must be nonempty");
    if (sim.oversample < 1) throw domain_error("invalid-oversample", "oversampling must be >= 1");
    const auto r = sim.oversample;
    const auto bins = n * r;

    std::mt19937_64 rng(sim.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<complex_t> x(static_cast<std::size_t>(bins));
    std::vector<bool> on_fragment(static_cast<std::size_t>(bins), false);
    for (auto k : f.fragments())
        for (std::int64_t b = k * r; b < (k + 1) * r; ++b) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            x[static_cast<std::size_t>(b)] = {re, im};
            on_fragment[static_cast<std::size_t>(b)] = true;
        }

    const idempotent h(pattern);
    simulation_report rep;
    rep.alias_energy.assign(static_cast<std::size_t>(n), 0.0);
    rep.sampled.assign(static_cast<std::size_t>(bins), 0.0);
    for (std::int64_t k = 0; k < n; ++k) {
        const complex_t hk = h.evaluate(k);
        for (std::int64_t b = 0; b < bins; ++b) {
            const complex_t term = hk * x[static_cast<std::size_t>(mod(b - k * r, bins))];
            rep.sampled[static_cast<std::size_t>(b)] += term;
            if (k != 0 && on_fragment[static_cast<std::size_t>(b)]) rep.alias_energy[static_cast<std::size_t>(k)] += std::norm(term);
        }
    }
    for (auto e : rep.alias_energy) rep.total_alias_energy += e;
    const complex_t h0 = h.evaluate(0);
    for (std::int64_t b = 0; b < bins; ++b) {
        if (!on_fragment[static_cast<std::size_t>(b)]) continue;
        const auto recovered = rep.sampled[static_cast<std::size_t>(b)] / h0;
        rep.max_error = std::max(rep.max_error, std::abs(recovered - x[static_cast<std::size_t>(b)]));
    }
    rep.spectrum = std::move(x);
    return rep;
}

}  // namespace idem
