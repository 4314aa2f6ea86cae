#pragma once

#include <stdexcept>
#include <string>

namespace toriq {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The field specification is unusable (reducible/non-squarefree minimal
/// polynomial, bad isolating interval, ...).
class InvalidField : public Error {
public:
    using Error::Error;
};

/// Two elements from different field contexts were combined.
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// A document or value could not be parsed; the message carries a JSON path.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The polyhedron has no feasible point.
class EmptyPolyhedron : public Error {
public:
    using Error::Error;
};

/// An operation that requires a pointed polyhedron was called on one
/// containing a line.
class UnpointedPolyhedron : public Error {
public:
    using Error::Error;
};

/// Smoothness is only decidable against the standard lattice.
class SmoothCheckUnavailable : public Error {
public:
    using Error::Error;
};

/// Generators fail to span the requested ambient space.
class RankDeficient : public Error {
public:
    using Error::Error;
};

/// A triple failed validation where a valid one is required.
class InvalidTriple : public Error {
public:
    using Error::Error;
};

/// The tight normal matrix at a vertex is singular.
class SingularTightSet : public Error {
public:
    using Error::Error;
};

/// Bad subspace data (dependent basis, wrong dimension, ...).
class InvalidSubspace : public Error {
public:
    using Error::Error;
};

/// The chosen level meets the moment image nowhere.
class EmptyReduction : public Error {
public:
    using Error::Error;
};

/// Chart sampling acceptance rate fell below the cutoff.
class ChartStarved : public Error {
public:
    using Error::Error;
};

/// A floating-point solve left a residual above the tolerance.
class ResidualTooLarge : public Error {
public:
    using Error::Error;
};

/// A trailing coordinate is too close to zero for a phase to be defined.
class ZeroCoordinate : public Error {
public:
    using Error::Error;
};

/// Rendering is limited to ambient dimension <= 2.
class DimensionUnsupported : public Error {
public:
    using Error::Error;
};

} // namespace toriq
