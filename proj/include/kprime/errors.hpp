#pragma once

#include <stdexcept>
#include <string>

namespace kprime {

/// A computation needs more memory (sieve size) than the configured budget,
/// or a table is too small for the requested query range.
class resource_limit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested count exceeds what a small-interval theorem can certify.
class capacity_exceeded_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested threshold is not backed by a proven bound for this k.
class not_certified_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive check contradicted a proven statement. Never expected.
class certification_failed_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace kprime
