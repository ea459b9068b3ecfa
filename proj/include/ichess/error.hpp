#pragma once

#include <stdexcept>
#include <string>

namespace ichess {

// Base class for every error raised by the library. The `kind()` tag is what
// the CLI and the reports print; messages are for humans.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ICHESS_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
    }

ICHESS_DEFINE_ERROR(MalformedCNF);
ICHESS_DEFINE_ERROR(ExponentCapExceeded);
ICHESS_DEFINE_ERROR(CoefficientOverflow);
ICHESS_DEFINE_ERROR(InvalidSupremumHint);
ICHESS_DEFINE_ERROR(IllegalSource);
ICHESS_DEFINE_ERROR(IllegalMove);
ICHESS_DEFINE_ERROR(InvalidPosition);
ICHESS_DEFINE_ERROR(ParseError);
ICHESS_DEFINE_ERROR(ReplayError);
ICHESS_DEFINE_ERROR(BuilderError);
ICHESS_DEFINE_ERROR(HintRejected);
ICHESS_DEFINE_ERROR(BoundExhausted);
ICHESS_DEFINE_ERROR(StrategyError);

#undef ICHESS_DEFINE_ERROR

} // namespace ichess
