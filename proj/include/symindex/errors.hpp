#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symindex {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or inconsistent input data (rejected matrices, malformed configs, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Family/block mismatches and other shape errors in symbolic data.
struct StructuralError : Error {
    using Error::Error;
};

// A numerical routine produced a result outside its accuracy contract.
struct AccuracyError : Error {
    using Error::Error;
};

struct NonConvergenceError : Error {
    std::vector<double> residual_history;
    NonConvergenceError(const std::string& msg, std::vector<double> history)
        : Error(msg), residual_history(std::move(history)) {}
};

} // namespace symindex
