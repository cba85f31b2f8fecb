#pragma once

#include <stdexcept>
#include <string>

namespace ktuple {

/// Argument outside the mathematical domain of an operation
/// (n < 2, odd gap, m out of range, ...).
class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A request would exceed a configured memory budget.
class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Persisted state is corrupt or does not match the job it is applied to.
class integrity_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an operation's precondition (e.g. missing lookahead primes).
class contract_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace ktuple
