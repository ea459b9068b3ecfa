#pragma once

// Ordinals below w^w in Cantor normal form.
//
// An ordinal is a finite sum w^e1*c1 + w^e2*c2 + ... with e1 > e2 > ... >= 0
// and every ci >= 1. The empty sum is 0. Exponents are naturals, so every
// value lies below w^w; an exponent cap (default 8) turns runaway arithmetic
// into an ExponentCapExceeded error instead of silently growing.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ichess/error.hpp"

namespace ichess {

inline constexpr unsigned kDefaultExponentCap = 8;

struct CnfTerm {
    unsigned exponent = 0;
    std::uint64_t coefficient = 0;

    friend bool operator==(const CnfTerm&, const CnfTerm&) = default;
};

class Ordinal {
public:
    Ordinal() = default;

    static Ordinal natural(std::uint64_t n);
    // w^e * c
    static Ordinal omega_power(unsigned exponent, std::uint64_t coefficient = 1,
                               unsigned cap = kDefaultExponentCap);
    static Ordinal omega() { return omega_power(1); }

    // Checks and canonicalizes raw terms: zero coefficients are dropped, the
    // remaining exponents must be strictly decreasing.
    static Ordinal normalize(std::span<const std::pair<unsigned, std::uint64_t>> raw,
                             unsigned cap = kDefaultExponentCap);
    static Ordinal normalize(std::initializer_list<std::pair<unsigned, std::uint64_t>> raw,
                             unsigned cap = kDefaultExponentCap);

    const std::vector<CnfTerm>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_finite() const noexcept { return terms_.empty() || terms_.front().exponent == 0; }
    bool is_limit() const noexcept { return !terms_.empty() && terms_.back().exponent != 0; }
    bool is_successor() const noexcept { return !terms_.empty() && terms_.back().exponent == 0; }

    // Finite part (coefficient of w^0).
    std::uint64_t finite_part() const noexcept;
    // Coefficient of w^e, zero when absent.
    std::uint64_t coefficient(unsigned exponent) const noexcept;
    unsigned leading_exponent() const noexcept { return terms_.empty() ? 0 : terms_.front().exponent; }

    // Value as a natural when finite.
    std::optional<std::uint64_t> as_natural() const noexcept;

    friend bool operator==(const Ordinal&, const Ordinal&) = default;
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept;

private:
    std::vector<CnfTerm> terms_;
};

enum class Comparison { Less, Equal, Greater };

Comparison compare(const Ordinal& a, const Ordinal& b) noexcept;

// Ordinal (non-commutative) sum a + b.
Ordinal add(const Ordinal& a, const Ordinal& b, unsigned cap = kDefaultExponentCap);
Ordinal successor(const Ordinal& a);
bool is_limit(const Ordinal& a) noexcept;
// Ordinal product a * b.
Ordinal multiply(const Ordinal& a, const Ordinal& b, unsigned cap = kDefaultExponentCap);

// Supremum of a finite, nonempty set, or validation of a claimed supremum of an
// infinite family sampled by `values`. The hint must be a limit ordinal of the
// form beta + w^e lying strictly above every value, with some value >= beta.
Ordinal sup(std::span<const Ordinal> values, const std::optional<Ordinal>& limit_hint = std::nullopt);

// Text form: "w^3*5 + w^2*17 + w*34 + 1234", "0" for zero.
std::string to_string(const Ordinal& a);
Ordinal parse_ordinal(std::string_view text, unsigned cap = kDefaultExponentCap);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return multiply(a, b); }

} // namespace ichess
