#include <gtest/gtest.h>

#include <random>

#include "ichess/ordinal.hpp"

using namespace ichess;

namespace {

Ordinal w(unsigned e = 1, std::uint64_t c = 1) { return Ordinal::omega_power(e, c); }
Ordinal n(std::uint64_t v) { return Ordinal::natural(v); }

Ordinal countdown_example() { return Ordinal::normalize({{3, 5}, {2, 17}, {1, 34}, {0, 1234}}); }

Ordinal random_ordinal(std::mt19937_64& rng, unsigned max_exp = 3, std::uint64_t max_coef = 9) {
    std::vector<std::pair<unsigned, std::uint64_t>> raw;
    for (int e = static_cast<int>(max_exp); e >= 0; --e) {
        if (rng() % 2 == 0)
            raw.emplace_back(static_cast<unsigned>(e), 1 + rng() % max_coef);
    }
    return Ordinal::normalize(raw);
}

}  // namespace

TEST(Ordinal, NormalizeCountdownExample) {
    const Ordinal a = countdown_example();
    ASSERT_EQ(a.terms().size(), 4u);
    EXPECT_EQ(a.terms()[0], (CnfTerm{3, 5}));
    EXPECT_EQ(a.terms()[3], (CnfTerm{0, 1234}));
    EXPECT_EQ(to_string(a), "w^3*5 + w^2*17 + w*34 + 1234");
}

TEST(Ordinal, NormalizeEmptyAndZeroTerms) {
    EXPECT_TRUE(Ordinal::normalize({}).is_zero());
    EXPECT_TRUE(Ordinal::normalize({{0, 0}}).is_zero());
    EXPECT_EQ(Ordinal::normalize({{2, 3}, {1, 0}, {0, 4}}), Ordinal::normalize({{2, 3}, {0, 4}}));
}

TEST(Ordinal, NormalizeRejectsNonDescending) {
    EXPECT_THROW(Ordinal::normalize({{1, 1}, {1, 2}}), MalformedCNF);
    EXPECT_THROW(Ordinal::normalize({{0, 1}, {2, 2}}), MalformedCNF);
}

TEST(Ordinal, ExponentCap) {
    EXPECT_THROW(Ordinal::normalize({{9, 1}}), ExponentCapExceeded);
    EXPECT_NO_THROW(Ordinal::normalize({{9, 1}}, 12));
    EXPECT_THROW(multiply(w(5), w(4)), ExponentCapExceeded);
    EXPECT_EQ(multiply(w(5), w(4), 9), Ordinal::omega_power(9, 1, 9));
}

TEST(Ordinal, Compare) {
    const Ordinal a = countdown_example();
    const Ordinal b = Ordinal::normalize({{3, 5}, {2, 17}, {1, 34}});
    EXPECT_EQ(compare(a, b), Comparison::Greater);
    EXPECT_EQ(compare(b, a), Comparison::Less);
    EXPECT_EQ(compare(Ordinal{}, Ordinal{}), Comparison::Equal);
    EXPECT_EQ(compare(w(), n(1000000)), Comparison::Greater);
}

TEST(Ordinal, Add) {
    EXPECT_EQ(add(w(2), w()), Ordinal::normalize({{2, 1}, {1, 1}}));
    EXPECT_EQ(add(n(1), w()), w());
    EXPECT_EQ(add(w(3, 4), Ordinal::normalize({{2, 3}, {0, 5}})),
              Ordinal::normalize({{3, 4}, {2, 3}, {0, 5}}));
    EXPECT_EQ(add(w(1, 2), w(1, 3)), w(1, 5));
    EXPECT_EQ(add(Ordinal::normalize({{1, 2}, {0, 7}}), w(1, 3)), w(1, 5));
}

TEST(Ordinal, SuccessorAndLimit) {
    EXPECT_EQ(successor(w(1, 34)), Ordinal::normalize({{1, 34}, {0, 1}}));
    EXPECT_TRUE(is_limit(w(3)));
    EXPECT_FALSE(is_limit(n(1234)));
    EXPECT_FALSE(is_limit(Ordinal{}));
}

TEST(Ordinal, Multiply) {
    EXPECT_EQ(multiply(w(2), w(2)), w(4));
    EXPECT_EQ(multiply(w(), w(2)), w(3));
    const Ordinal a = Ordinal::normalize({{3, 2}, {0, 7}});
    EXPECT_EQ(multiply(a, n(1)), a);
    // 2 * w = w, w * 2 = w*2
    EXPECT_EQ(multiply(n(2), w()), w());
    EXPECT_EQ(multiply(w(), n(2)), w(1, 2));
    // (w + 1) * 2 = w*2 + 1
    EXPECT_EQ(multiply(Ordinal::normalize({{1, 1}, {0, 1}}), n(2)), Ordinal::normalize({{1, 2}, {0, 1}}));
}

TEST(Ordinal, Sup) {
    const std::vector<Ordinal> small{n(3), n(17), n(5)};
    EXPECT_EQ(sup(small), n(17));

    std::vector<Ordinal> naturals;
    for (std::uint64_t i = 1; i <= 6; ++i)
        naturals.push_back(n(i));
    EXPECT_EQ(sup(naturals, w()), w());

    std::vector<Ordinal> omegas;
    for (std::uint64_t i = 1; i <= 5; ++i)
        omegas.push_back(w(1, i));
    EXPECT_EQ(sup(omegas, w(2)), w(2));

    EXPECT_THROW(sup(omegas, w()), InvalidSupremumHint);        // not an upper bound
    EXPECT_THROW(sup(naturals, n(100)), InvalidSupremumHint);   // not a limit
    EXPECT_THROW(sup(naturals, w(1, 2)), InvalidSupremumHint);  // w would do
    EXPECT_THROW(sup(std::vector<Ordinal>{}), InvalidSupremumHint);
}

TEST(Ordinal, TextRoundTrip) {
    for (const char* s : {"0", "1", "w", "w^2", "w*3", "w^3*5 + w^2*17 + w*34 + 1234", "w^8*2 + 7"}) {
        EXPECT_EQ(to_string(parse_ordinal(s)), s);
    }
    EXPECT_EQ(parse_ordinal("  w^2*3+w  +4 "), Ordinal::normalize({{2, 3}, {1, 1}, {0, 4}}));
    EXPECT_THROW(parse_ordinal("w + w^2"), MalformedCNF);
    EXPECT_THROW(parse_ordinal("w^2*0"), MalformedCNF);
    EXPECT_THROW(parse_ordinal("0 + 1"), MalformedCNF);
    EXPECT_THROW(parse_ordinal("x"), MalformedCNF);
    EXPECT_THROW(parse_ordinal(""), MalformedCNF);
}

// Algebraic laws on random CNF values.

TEST(OrdinalProperties, CanonicalFormAndTextRoundTrip) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const Ordinal a = random_ordinal(rng);
        std::vector<std::pair<unsigned, std::uint64_t>> raw;
        for (const auto& t : a.terms())
            raw.emplace_back(t.exponent, t.coefficient);
        EXPECT_EQ(Ordinal::normalize(raw), a);
        EXPECT_EQ(parse_ordinal(to_string(a)), a);
        const Ordinal b = random_ordinal(rng);
        EXPECT_EQ(compare(a, b) == Comparison::Equal, a.terms() == b.terms());
    }
}

TEST(OrdinalProperties, AdditionIsAssociative) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10000; ++i) {
        const Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
        ASSERT_EQ(add(add(a, b), c), add(a, add(b, c))) << to_string(a) << " | " << to_string(b) << " | "
                                                         << to_string(c);
    }
}

TEST(OrdinalProperties, LeftAbsorptionByLimits) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const Ordinal m = n(rng() % 100000);
        Ordinal limit = random_ordinal(rng);
        if (!limit.is_limit())
            limit = add(limit, w());
        ASSERT_EQ(add(m, limit), limit);
    }
}

TEST(OrdinalProperties, AdditionStrictlyMonotoneOnTheRight) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 10000; ++i) {
        const Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
        if (b < c) {
            ASSERT_LT(add(a, b), add(a, c));
        } else if (c < b) {
            ASSERT_LT(add(a, c), add(a, b));
        }
    }
}

TEST(OrdinalProperties, MultiplicationLeftDistributes) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10000; ++i) {
        const Ordinal a = random_ordinal(rng), b = random_ordinal(rng), c = random_ordinal(rng);
        ASSERT_EQ(multiply(a, add(b, c)), add(multiply(a, b), multiply(a, c)))
            << to_string(a) << " | " << to_string(b) << " | " << to_string(c);
    }
}

TEST(OrdinalProperties, MultiplicationIsAssociative) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10000; ++i) {
        const Ordinal a = random_ordinal(rng, 2), b = random_ordinal(rng, 2), c = random_ordinal(rng, 2);
        ASSERT_EQ(multiply(multiply(a, b), c), multiply(a, multiply(b, c)));
    }
}

// Descending from w^2*k by always choosing a strictly smaller ordinal (at a
// limit w^e*c the next value is w^e*(c-1) + w^(e-1)*m with m <= M) ends at 0
// within k*(1 + M*(1+M)) steps.
TEST(OrdinalProperties, DescentFromOmegaSquaredTerminates) {
    std::mt19937_64 rng(7);
    constexpr std::uint64_t M = 6;
    int runs = 0;
    for (std::uint64_t k = 1; k <= 4; ++k) {
        const std::uint64_t bound = k * (1 + M * (1 + M));
        for (int trial = 0; trial < 2500; ++trial, ++runs) {
            Ordinal v = w(2, k);
            std::uint64_t steps = 0;
            while (!v.is_zero()) {
                std::vector<std::pair<unsigned, std::uint64_t>> raw;
                for (const auto& t : v.terms())
                    raw.emplace_back(t.exponent, t.coefficient);
                auto& last = raw.back();
                const unsigned e = last.first;
                last.second -= 1;
                if (e > 0)
                    raw.emplace_back(e - 1, rng() % (M + 1));
                const Ordinal next = Ordinal::normalize(raw);
                ASSERT_LT(next, v);
                v = next;
                ASSERT_LE(++steps, bound);
            }
        }
    }
    EXPECT_EQ(runs, 10000);
}
