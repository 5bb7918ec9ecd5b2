#pragma once

#include <stdexcept>
#include <string>

namespace keystrength {

// An argument outside an operation's documented domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// calibrate_doubling observed no speedup between the two runs.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A record file row that does not parse; the message names the line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parsed record that violates a dataset invariant; the message names the record.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Trend fitting with too few records or degenerate dates.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Factoring-based key recovery failed (prime modulus, non-semiprime,
// or work budget exceeded).
class BreakError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// No bit length up to the sanity cap satisfies a protection query.
class HorizonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace keystrength
