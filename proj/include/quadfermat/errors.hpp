#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quadfermat {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- numeric kernels ---
struct NoConvergence : Error {
    using Error::Error;
};
struct ZeroBase : Error {
    using Error::Error;
};
struct DegenerateLeadingCoefficient : Error {
    using Error::Error;
};
struct LambertFailure : Error {
    using Error::Error;
};

// --- expression engine ---
struct SyntaxError : Error {
    SyntaxError(std::string msg, std::size_t byte_offset, std::string expected_tokens)
        : Error(msg + " at offset " + std::to_string(byte_offset) +
                " (expected " + expected_tokens + ")"),
          offset(byte_offset),
          expected(std::move(expected_tokens)) {}
    std::size_t offset;
    std::string expected;
};
struct DivisionNearZero : Error {
    using Error::Error;
};
struct NonFiniteResult : Error {
    using Error::Error;
};

// --- conic reduction ---
struct UnsupportedCase : Error {
    using Error::Error;
};
struct DegenerateForm : Error {
    using Error::Error;
};
struct BranchUndefined : Error {
    using Error::Error;
};

// --- solution families ---
struct DegenerateKSystem : Error {
    using Error::Error;
};
struct NoRealization : Error {
    using Error::Error;
};
struct HypothesisViolated : Error {
    using Error::Error;
};
struct DegenerateFrequency : Error {
    using Error::Error;
};
struct ZeroC2 : Error {
    using Error::Error;
};
struct DegenerateDenominator : Error {
    using Error::Error;
};
struct NoAdmissibleRoot : Error {
    using Error::Error;
};
struct DegenerateAmplitude : Error {
    using Error::Error;
};

// --- verification ---
struct MissingShift : Error {
    using Error::Error;
};

}  // namespace quadfermat
