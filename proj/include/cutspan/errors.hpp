#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cutspan {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class MetricErrorKind {
    MalformedTable,
    DuplicateLabel,
    NonzeroDiagonal,
    NegativeEntry,
    Asymmetry,
    ZeroOffDiagonal,
    TriangleViolation,
};

const char* to_string(MetricErrorKind kind);

/// Rejection of a distance table. `witness` holds the offending point
/// indices: one for diagonal problems, a pair for entry problems, and the
/// triple (x, y, z) with d(x,z) > d(x,y) + d(y,z) for triangle violations.
class MetricError : public Error {
public:
    MetricError(MetricErrorKind kind, std::vector<int> witness, const std::string& message)
        : Error(message), kind_(kind), witness_(std::move(witness)) {}

    MetricErrorKind kind() const { return kind_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    MetricErrorKind kind_;
    std::vector<int> witness_;
};

class UnknownPoint : public Error {
public:
    using Error::Error;
};

class EmptySubset : public Error {
public:
    using Error::Error;
};

class GammaOutOfRange : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    CapExceeded(int n, int cap)
        : Error("instance size " + std::to_string(n) + " exceeds oracle cap " + std::to_string(cap)),
          n_(n),
          cap_(cap) {}
    int n() const { return n_; }
    int cap() const { return cap_; }

private:
    int n_;
    int cap_;
};

/// A built realization violated one of its defining properties.
class RealizationCheckFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace cutspan
