#include "ichess/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ichess {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        throw CoefficientOverflow("ordinal coefficient overflow in addition");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw CoefficientOverflow("ordinal coefficient overflow in multiplication");
    return r;
}

void check_cap(unsigned exponent, unsigned cap) {
    if (exponent > cap)
        throw ExponentCapExceeded("exponent " + std::to_string(exponent) + " exceeds cap " +
                                  std::to_string(cap));
}

} // namespace

Ordinal Ordinal::natural(std::uint64_t n) {
    Ordinal o;
    if (n != 0)
        o.terms_.push_back({0, n});
    return o;
}

Ordinal Ordinal::omega_power(unsigned exponent, std::uint64_t coefficient, unsigned cap) {
    check_cap(exponent, cap);
    Ordinal o;
    if (coefficient != 0)
        o.terms_.push_back({exponent, coefficient});
    return o;
}

Ordinal Ordinal::normalize(std::span<const std::pair<unsigned, std::uint64_t>> raw, unsigned cap) {
    Ordinal o;
    for (const auto& [e, c] : raw) {
        if (c == 0)
            continue;
        check_cap(e, cap);
        if (!o.terms_.empty() && o.terms_.back().exponent <= e)
            throw MalformedCNF("exponents must be strictly decreasing (saw " +
                               std::to_string(o.terms_.back().exponent) + " then " +
                               std::to_string(e) + ")");
        o.terms_.push_back({e, c});
    }
    return o;
}

Ordinal Ordinal::normalize(std::initializer_list<std::pair<unsigned, std::uint64_t>> raw, unsigned cap) {
    return normalize(std::span<const std::pair<unsigned, std::uint64_t>>(raw.begin(), raw.size()), cap);
}

std::uint64_t Ordinal::finite_part() const noexcept { return coefficient(0); }

std::uint64_t Ordinal::coefficient(unsigned exponent) const noexcept {
    for (const auto& t : terms_)
        if (t.exponent == exponent)
            return t.coefficient;
    return 0;
}

std::optional<std::uint64_t> Ordinal::as_natural() const noexcept {
    if (!is_finite())
        return std::nullopt;
    return finite_part();
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i].exponent != y[i].exponent)
            return x[i].exponent <=> y[i].exponent;
        if (x[i].coefficient != y[i].coefficient)
            return x[i].coefficient <=> y[i].coefficient;
    }
    return x.size() <=> y.size();
}

Comparison compare(const Ordinal& a, const Ordinal& b) noexcept {
    auto c = a <=> b;
    if (c < 0)
        return Comparison::Less;
    if (c > 0)
        return Comparison::Greater;
    return Comparison::Equal;
}

Ordinal add(const Ordinal& a, const Ordinal& b, unsigned cap) {
    if (b.is_zero())
        return a;
    const unsigned lead = b.terms().front().exponent;
    std::vector<std::pair<unsigned, std::uint64_t>> raw;
    std::uint64_t carry = 0;
    for (const auto& t : a.terms()) {
        if (t.exponent > lead)
            raw.emplace_back(t.exponent, t.coefficient);
        else if (t.exponent == lead)
            carry = t.coefficient;
    }
    bool first = true;
    for (const auto& t : b.terms()) {
        raw.emplace_back(t.exponent, first ? checked_add(t.coefficient, carry) : t.coefficient);
        first = false;
    }
    return Ordinal::normalize(raw, cap);
}

Ordinal successor(const Ordinal& a) { return add(a, Ordinal::natural(1)); }

bool is_limit(const Ordinal& a) noexcept { return a.is_limit(); }

Ordinal multiply(const Ordinal& a, const Ordinal& b, unsigned cap) {
    if (a.is_zero() || b.is_zero())
        return {};
    const auto& lead = a.terms().front();
    std::vector<std::pair<unsigned, std::uint64_t>> raw;
    for (const auto& t : b.terms()) {
        if (t.exponent > 0) {
            // a * w^f = w^(e1+f) for a != 0
            const unsigned e = lead.exponent + t.exponent;
            check_cap(e, cap);
            raw.emplace_back(e, t.coefficient);
        } else {
            // a * n = w^e1*(c1*n) + tail(a)
            raw.emplace_back(lead.exponent, checked_mul(lead.coefficient, t.coefficient));
            for (std::size_t i = 1; i < a.terms().size(); ++i)
                raw.emplace_back(a.terms()[i].exponent, a.terms()[i].coefficient);
        }
    }
    return Ordinal::normalize(raw, cap);
}

Ordinal sup(std::span<const Ordinal> values, const std::optional<Ordinal>& limit_hint) {
    if (!limit_hint) {
        if (values.empty())
            throw InvalidSupremumHint("supremum of an empty set without a hint");
        return *std::max_element(values.begin(), values.end());
    }
    const Ordinal& hint = *limit_hint;
    if (!hint.is_limit())
        throw InvalidSupremumHint("hint " + to_string(hint) + " is not a limit ordinal");
    // hint = beta + w^e
    std::vector<std::pair<unsigned, std::uint64_t>> raw;
    for (const auto& t : hint.terms())
        raw.emplace_back(t.exponent, t.coefficient);
    raw.back().second -= 1;
    const Ordinal beta = Ordinal::normalize(raw, hint.leading_exponent());
    bool reaches_beta = values.empty() && beta.is_zero();
    for (const auto& v : values) {
        if (!(v < hint))
            throw InvalidSupremumHint("hint " + to_string(hint) + " does not exceed sample " +
                                      to_string(v));
        if (v >= beta)
            reaches_beta = true;
    }
    if (!reaches_beta)
        throw InvalidSupremumHint("samples stay below " + to_string(beta) + ", so hint " +
                                  to_string(hint) + " is not the least bound of its shape");
    return hint;
}

std::string to_string(const Ordinal& a) {
    if (a.is_zero())
        return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty())
            out += " + ";
        if (t.exponent == 0) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += "w";
        if (t.exponent > 1)
            out += "^" + std::to_string(t.exponent);
        if (t.coefficient > 1)
            out += "*" + std::to_string(t.coefficient);
    }
    return out;
}

namespace {

class OrdinalParser {
public:
    explicit OrdinalParser(std::string_view s) : s_(s) {}

    std::vector<std::pair<unsigned, std::uint64_t>> terms() {
        std::vector<std::pair<unsigned, std::uint64_t>> out;
        skip_ws();
        if (s_.empty())
            fail("empty input");
        for (;;) {
            out.push_back(term());
            skip_ws();
            if (pos_ == s_.size())
                break;
            if (s_[pos_] != '+')
                fail("expected '+'");
            ++pos_;
            skip_ws();
        }
        return out;
    }

private:
    std::pair<unsigned, std::uint64_t> term() {
        if (pos_ < s_.size() && s_[pos_] == 'w') {
            ++pos_;
            std::uint64_t e = 1;
            std::uint64_t c = 1;
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                e = number();
            }
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                c = number();
            }
            if (e == 0 || c == 0)
                fail("degenerate term");
            return {static_cast<unsigned>(e), c};
        }
        return {0u, number()};
    }

    std::uint64_t number() {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{} || ptr == s_.data() + pos_)
            fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw MalformedCNF("cannot parse ordinal '" + std::string(s_) + "' at offset " +
                           std::to_string(pos_) + ": " + why);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Ordinal parse_ordinal(std::string_view text, unsigned cap) {
    auto raw = OrdinalParser(text).terms();
    // A bare "0" is the only place a zero coefficient is allowed.
    if (raw.size() == 1 && raw[0] == std::pair<unsigned, std::uint64_t>{0u, 0u})
        return {};
    for (const auto& [e, c] : raw)
        if (c == 0)
            throw MalformedCNF("zero term inside '" + std::string(text) + "'");
    return Ordinal::normalize(raw, cap);
}

} // namespace ichess
