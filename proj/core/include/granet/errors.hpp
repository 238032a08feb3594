#pragma once

#include <stdexcept>
#include <string>

namespace granet {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Values outside an operation's domain (non-finite inputs, empty batches, ...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Mismatched vector lengths or inconsistent layer shapes.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Unusable configuration: unknown activation name, empty channel catalog, ...
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed input files; the message carries the line/column location.
class ParseError : public Error {
public:
    using Error::Error;
};

// Missing or unreadable files.
class IoError : public Error {
public:
    using Error::Error;
};

// Training loss became non-finite; the message names the epoch.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// Fitness evaluation failed during search; the message names particle and iteration.
class OptimizerError : public Error {
public:
    using Error::Error;
};

// Unknown user, item, or channel identifier.
class LookupError : public Error {
public:
    using Error::Error;
};

// Stage-labeled failure raised by pipeline orchestration.
class PipelineError : public Error {
public:
    using Error::Error;
};

}  // namespace granet
