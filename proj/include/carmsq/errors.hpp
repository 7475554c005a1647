#pragma once

#include <stdexcept>

namespace carmsq {

// Error taxonomy shared by every module. Conditions are reported by
// throwing; the CLI maps them onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bounded-effort computation (factorization, subset search) ran out of
// its configured budget.
struct WorkExceeded : Error {
  using Error::Error;
};

// Enumeration asked to go beyond the configured ceiling.
struct CeilingExceeded : Error {
  using Error::Error;
};

// A prime-only operation was handed a composite (or < 2) argument.
struct NotPrime : Error {
  using Error::Error;
};

// Argument outside the mathematical domain of the function.
struct DomainError : Error {
  using Error::Error;
};

// Pipeline configuration cannot produce a run (e.g. the prime set Q is empty).
struct ConfigInfeasible : Error {
  using Error::Error;
};

// A search completed without finding any admissible candidate.
struct NoCandidate : Error {
  using Error::Error;
};

}  // namespace carmsq
