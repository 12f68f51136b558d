#pragma once

#include <stdexcept>
#include <string>

namespace nucswitch {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or drive value breaks one of the model's invariants.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Input outside the domain an operation accepts (e.g. |B_N| > B_sat).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The rate slope at a root is too small to assign a stability label;
/// the drive point sits on (or numerically at) a saddle-node.
class MarginalFixedPoint : public Error {
public:
    MarginalFixedPoint(double root, double slope)
        : Error("marginal fixed point"), root_(root), slope_(slope) {}
    double root() const noexcept { return root_; }
    double slope() const noexcept { return slope_; }

private:
    double root_;
    double slope_;
};

}  // namespace nucswitch
