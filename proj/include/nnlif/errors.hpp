#pragma once

#include <stdexcept>
#include <string>

namespace nnlif {

/// Violated precondition or malformed input (grid, parameters, config).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation left the regime where the scheme is defined.
class NumericalFailure : public std::runtime_error {
public:
    enum class Kind {
        nonpositive_diffusion,
        firing_rate_breakdown,
        negative_density,
        non_finite,
        singular_system,
        quadrature,
    };

    NumericalFailure(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

const char* to_string(NumericalFailure::Kind kind) noexcept;

}  // namespace nnlif
