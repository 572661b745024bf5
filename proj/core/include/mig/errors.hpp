#pragma once

#include <stdexcept>
#include <string>

namespace mig {

/// Caller broke a precondition (bad dimensions, invalid parameters, empty input).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed on input that passed validation.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix required to be positive definite has an eigenvalue at or below the floor.
class NotPositiveDefiniteError : public NumericalError {
public:
    explicit NotPositiveDefiniteError(const std::string& what) : NumericalError(what) {}
};

/// Sample data cannot be mapped onto the manifold (e.g. an all-zero pulse vector).
class DegenerateSampleError : public UsageError {
public:
    explicit DegenerateSampleError(const std::string& what) : UsageError(what) {}
};

/// Anisotropy ratio requested against a perfectly isotropic reference.
class DegenerateIsotropyError : public UsageError {
public:
    explicit DegenerateIsotropyError(const std::string& what) : UsageError(what) {}
};

} // namespace mig
