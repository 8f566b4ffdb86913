#include <gtest/gtest.h>

#include "idem/sampling.hpp"
#include "test_util.hpp"

#include <iostream>
#include <map>

using namespace idem;
using idem::testing::set_of;

TEST(RequiredZeros, Examples) {
    EXPECT_EQ(required_zero_set(fragment_set({0, 2}), 4), set_of(4, {2}));
    EXPECT_TRUE(required_zero_set(fragment_set({0}), 2).empty());
    EXPECT_EQ(required_zero_set(fragment_set({0, 1, 3}), 8), set_of(8, {1, 2, 3, 5, 6, 7}));
}

TEST(RequiredZeros, ModulusTooSmall) {
    try {
        required_zero_set(fragment_set({0, 3}), 4);
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_EQ(e.code(), "modulus-too-small");
    }
}

TEST(FragmentSet, Validation) {
    EXPECT_THROW(fragment_set(std::vector<std::int64_t>{}), domain_error);
    EXPECT_THROW(fragment_set({-1, 2}), domain_error);
    EXPECT_THROW(fragment_set({1, 1}), domain_error);
    EXPECT_EQ(fragment_set({3, 0}).fragments(), (std::vector<std::int64_t>{0, 3}));
}

TEST(Design, WorkedExample) {
    const auto d = design_pattern(fragment_set({0, 2}), 4);
    EXPECT_EQ(d.pattern, set_of(4, {0, 1}));
    EXPECT_EQ(d.rate, 2);
    const std::vector<complex_t> want{{0.5, 0.0}, {0.25, 0.25}, {0.0, 0.0}, {0.25, -0.25}};
    for (std::int64_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(d.h.evaluate(k) - want[static_cast<std::size_t>(k)]), 1e-12);
}

TEST(Design, Examples) {
    EXPECT_EQ(design_pattern(fragment_set({0}), 2).pattern, set_of(2, {0}));
    const auto d = design_pattern(fragment_set({0, 2}), 8);
    EXPECT_EQ(d.pattern, set_of(8, {0, 2}));
    EXPECT_TRUE(d.h.vanishes_at(2));
    EXPECT_TRUE(d.h.vanishes_at(6));
}

TEST(Design, CompositeModulusUsesOracle) {
    // N = 6 is not a prime power; differences {1, 5} force h(1) = h(5) = 0
    const auto d = design_pattern(fragment_set({0, 1}), 6);
    EXPECT_EQ(d.pattern, set_of(6, {0, 3}));
}

TEST(Simulate, Examples) {
    const fragment_set f({0, 2});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = simulate(f, set_of(4, {0, 1}), {16, seed});
        EXPECT_LE(r.max_error, 1e-9);
        EXPECT_LE(r.total_alias_energy, 1e-20);
    }
    const auto bad = simulate(f, set_of(4, {0, 2}), {16, 1});
    EXPECT_GT(bad.max_error, 1e-3);
    EXPECT_GT(bad.alias_energy[2], 1e-3);
    EXPECT_EQ(bad.alias_energy[1], 0.0);  // h_{0,2}(1) = 0

    const auto single = simulate(fragment_set({0}), set_of(4, {1}), {8, 3});
    EXPECT_LE(single.max_error, 1e-9);
}

TEST(Simulate, DeterministicPerSeed) {
    const fragment_set f({0, 2});
    const auto a = simulate(f, set_of(4, {0, 2}), {16, 5});
    const auto b = simulate(f, set_of(4, {0, 2}), {16, 5});
    const auto c = simulate(f, set_of(4, {0, 2}), {16, 6});
    EXPECT_EQ(a.spectrum, b.spectrum);
    EXPECT_EQ(a.max_error, b.max_error);
    EXPECT_NE(a.spectrum, c.spectrum);
}

TEST(Simulate, Errors) {
    EXPECT_THROW(simulate(fragment_set({0, 4}), set_of(4, {0}), {}), domain_error);
    EXPECT_THROW(simulate(fragment_set({0}), set_of(4, {}), {}), domain_error);
    EXPECT_THROW(simulate(fragment_set({0}), set_of(4, {0}), {0, 1}), domain_error);
}

TEST(Simulate, SampledSpectrumMatchesDirectSum) {
    // S(b) = sum_k h(k) X(b - kR), evaluated here with naive_h
    const fragment_set f({1, 3});
    const auto j = set_of(6, {0, 1, 3});
    const std::int64_t r = 4;
    const auto rep = simulate(f, j, {r, 9});
    const auto bins = 6 * r;
    for (std::int64_t b = 0; b < bins; ++b) {
        complex_t s = 0.0;
        for (std::int64_t k = 0; k < 6; ++k)
            s += idem::testing::naive_h(j, k) * rep.spectrum[static_cast<std::size_t>(mod(b - k * r, bins))];
        EXPECT_LT(std::abs(s - rep.sampled[static_cast<std::size_t>(b)]), 1e-12);
    }
}

TEST(Properties, DesignGrid) {
    // every F with max(F) + 1 < N <= 16, |F| <= 4, 0 in F (translation does not change differences)
    int designs = 0, density_increases = 0;
    std::map<std::pair<std::int64_t, std::vector<residue_t>>, index_set> cache;
    for (std::int64_t fmask = 1; fmask < (1 << 8); fmask += 2) {
        std::vector<std::int64_t> frags;
        for (int b = 0; b < 8; ++b)
            if ((fmask >> b) & 1) frags.push_back(b);
        if (frags.size() > 4) continue;
        const fragment_set f(frags);
        double last = 2.0;
        for (std::int64_t n = f.max() + 2; n <= 16; ++n) {
            const auto zeros = required_zero_set(f, n);
            auto key = std::make_pair(n, zeros.members());
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, design_pattern(f, n).pattern).first;
            const auto& j = it->second;
            ++designs;
            const auto z = zero_set(idempotent(j)).zero_set;
            EXPECT_TRUE(z.includes(zeros)) << "N=" << n;
            EXPECT_GE(j.size(), frags.size());
            for (std::uint64_t seed = 1; seed <= 10; ++seed) EXPECT_LE(simulate(f, j, {4, seed}).max_error, 1e-9);
            const double density = static_cast<double>(j.size()) / static_cast<double>(n);
            if (density > last + 1e-12) ++density_increases;
            last = std::min(last, density);
        }
    }
    EXPECT_GT(designs, 300);
    // density monotonicity is not asserted; the count is reported
    std::cout << "[ sampling ] designs checked: " << designs << ", density increases with N: " << density_increases
              << "\n";
}
