#pragma once

#include <stdexcept>
#include <string>

namespace widom {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A set (or the support of a weight) is polar: degenerate interval, empty
/// preimage, weight vanishing on the whole grid.
class NonPolarError : public Error {
public:
    using Error::Error;
};

/// Malformed input: bad descriptor, out-of-class weight, zero polynomial.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A weight that is unbounded on the set was used where a sup-norm is needed.
class UnboundedWeight : public Error {
public:
    using Error::Error;
};

/// The discretization is too coarse for the requested degree.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// The requested (set, index) combination has no closed form here.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Brute-force oracle refused because the instance exceeds desk scale.
class ScaleLimit : public Error {
public:
    using Error::Error;
};

/// The Szego condition S(K, w) > 0 fails numerically.
class SzegoFailure : public Error {
public:
    using Error::Error;
};

}  // namespace widom
