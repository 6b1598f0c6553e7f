#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roadfield {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a formula (negative discriminant, β ≤ −1/d, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A root bracket could not be established.
class BracketError : public Error {
public:
    using Error::Error;
};

/// The strip dispersion curves never become tangent (strip too thin).
class NoTangencyError : public Error {
public:
    using Error::Error;
};

class EmptyDatumError : public Error {
public:
    using Error::Error;
};

class CflError : public Error {
public:
    using Error::Error;
};

class BlowUpError : public Error {
public:
    BlowUpError(std::size_t step_index, double time, const std::string& what)
        : Error(what), step_index_(step_index), time_(time) {}

    std::size_t step_index() const noexcept { return step_index_; }
    double time() const noexcept { return time_; }

private:
    std::size_t step_index_;
    double time_;
};

class NoCrossingError : public Error {
public:
    using Error::Error;
};

class TooFewSamplesError : public Error {
public:
    using Error::Error;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace roadfield
