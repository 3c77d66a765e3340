#pragma once

#include <stdexcept>
#include <string>

namespace eqdist {

// Base for every error raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroPolynomial : Error {
    explicit ZeroPolynomial(const std::string& w = "zero polynomial") : Error(w) {}
};

struct NotDivisible : Error {
    explicit NotDivisible(const std::string& w = "polynomial division is not exact") : Error(w) {}
};

struct ConstantPolynomial : Error {
    explicit ConstantPolynomial(const std::string& w = "constant polynomial has no roots") : Error(w) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& w = "root iteration did not converge") : Error(w) {}
};

struct ClusterDetected : Error {
    explicit ClusterDetected(const std::string& w = "certified root disks overlap") : Error(w) {}
};

struct NodeOnRoot : Error {
    explicit NodeOnRoot(const std::string& w = "quadrature node hit a root") : Error(w) {}
};

struct NotPrimitive : Error {
    explicit NotPrimitive(const std::string& w = "polynomial content is not 1") : Error(w) {}
};

struct NotSquarefree : Error {
    explicit NotSquarefree(const std::string& w = "polynomial has repeated roots") : Error(w) {}
};

struct DegreeTooSmall : Error {
    explicit DegreeTooSmall(const std::string& w = "target degree too small") : Error(w) {}
};

struct ZeroIsRoot : Error {
    explicit ZeroIsRoot(const std::string& w = "zero is a root; point sets must avoid 0") : Error(w) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& w = "malformed input file") : Error(w) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& w = "invariant violated") : Error(w) {}
};

struct BadWindow : Error {
    explicit BadWindow(const std::string& w = "window length must lie in (0, 1/2]") : Error(w) {}
};

struct NoGap : Error {
    explicit NoGap(const std::string& w = "no angular gap wide enough for a safe cut") : Error(w) {}
};

struct VanishingEndCoefficient : Error {
    explicit VanishingEndCoefficient(const std::string& w = "leading or constant coefficient vanishes") : Error(w) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& w = "bad usage") : Error(w) {}
};

} // namespace eqdist
