#pragma once

#include <stdexcept>
#include <string>

namespace thermint {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters: spectra, grids, layouts, config files.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An estimator could not produce a result from the requested sample set.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// The operation is defined only for some layout kinds.
class UnsupportedLayoutError : public Error {
public:
    using Error::Error;
};

/// A two-photon amplitude was requested for a degenerate mode pair.
class InvalidPairError : public Error {
public:
    using Error::Error;
};

}  // namespace thermint
