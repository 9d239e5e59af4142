#pragma once

#include <stdexcept>
#include <string>

namespace lvaci {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ZeroComponentError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotIndicialError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TrivialPointError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MissingCoefficientsError : std::logic_error {
    using std::logic_error::logic_error;
};

struct OrderTooSmallError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroScaleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonIntegralK3Error : std::domain_error {
    using std::domain_error::domain_error;
};

struct PoleAtError : std::domain_error {
    long double t;
    explicit PoleAtError(long double t_)
        : std::domain_error("closed-form denominator vanishes at t=" + std::to_string(static_cast<double>(t_))),
          t(t_) {}
};

}  // namespace lvaci
