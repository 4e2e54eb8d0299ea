#pragma once

#include <stdexcept>
#include <string>

namespace qghost {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (matrix, module, relation, witness files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A caller violated an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Operands come from different fields or have incompatible shapes.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// An internal guarantee failed. Seeing one of these means a bug or a
/// mathematical counterexample; callers should dump state and stop.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace qghost
