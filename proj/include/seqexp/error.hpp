#pragma once

#include <stdexcept>
#include <string>

namespace seqexp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (bad keys, missing snapshot, layout mismatch).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A stencil needs more ghost layers than the field provides.
class StencilReachError : public Error {
public:
    using Error::Error;
};

/// The compressive denominator of a flux fell below its floor.
class CompressionCollapse : public Error {
public:
    using Error::Error;
};

/// Density or internal energy became non-positive.
class PositivityError : public Error {
public:
    using Error::Error;
};

/// The exact Riemann solution would contain vacuum.
class VacuumError : public Error {
public:
    using Error::Error;
};

}  // namespace seqexp
