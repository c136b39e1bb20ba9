#pragma once

#include <stdexcept>
#include <string>

namespace divring {

/// Base class of all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two scalars (or aggregates) over different ground fields were combined.
struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& msg = "field mismatch") : Error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg = "division by zero") : Error(msg) {}
};

/// Elements of two different algebras were combined.
struct AlgebraMismatch : Error {
    explicit AlgebraMismatch(const std::string& msg = "algebra mismatch") : Error(msg) {}
};

struct ZeroElement : Error {
    explicit ZeroElement(const std::string& msg = "zero element") : Error(msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg = "index out of range") : Error(msg) {}
};

struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg = "shape mismatch") : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg = "dimension mismatch") : Error(msg) {}
};

/// A subspace handed to an operation requiring a left submodule is not one.
struct NotLeftSubmodule : Error {
    explicit NotLeftSubmodule(const std::string& msg = "not a left submodule") : Error(msg) {}
};

/// A subspace handed to an operation requiring a subring fails closure or unit.
struct NotASubring : Error {
    explicit NotASubring(const std::string& msg = "not a subring") : Error(msg) {}
};

/// A claimed left basis is not free, or the greedy sweep cannot complete one.
struct NotFree : Error {
    explicit NotFree(const std::string& msg = "not a free left module") : Error(msg) {}
};

/// An embedding operation required 1-tightness that does not hold.
struct NotOneTight : Error {
    explicit NotOneTight(const std::string& msg = "embedding is not 1-tight") : Error(msg) {}
};

/// A ring that must act like a division ring carries a zero-divisor certificate.
struct NotDivisionCertified : Error {
    explicit NotDivisionCertified(const std::string& msg = "ring certified not a division ring")
        : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct UnknownCommand : Error {
    explicit UnknownCommand(const std::string& msg) : Error(msg) {}
};

struct UnknownObject : Error {
    explicit UnknownObject(const std::string& msg) : Error(msg) {}
};

}  // namespace divring
