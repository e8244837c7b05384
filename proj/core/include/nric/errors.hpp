#pragma once

#include <stdexcept>
#include <string>

namespace nric {

// Root of the library's exception hierarchy. The CLI maps each leaf to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A conversion or evaluation hit a (near-)zero denominator.
class DegenerateNetwork : public Error {
public:
    using Error::Error;
};

// Input violates a documented precondition or invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A design stage has no feasible solution. `nearest_miss` describes the closest attempt.
class InfeasibleDesign : public Error {
public:
    InfeasibleDesign(std::string stage, std::string nearest_miss)
        : Error(stage + ": infeasible (" + nearest_miss + ")"),
          stage_(std::move(stage)), nearest_miss_(std::move(nearest_miss)) {}

    const std::string& stage() const noexcept { return stage_; }
    const std::string& nearest_miss() const noexcept { return nearest_miss_; }

private:
    std::string stage_;
    std::string nearest_miss_;
};

// File could not be read, written or parsed. Carries the 1-based line number when known.
class IoError : public Error {
public:
    explicit IoError(const std::string& what, int line = 0)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace nric
