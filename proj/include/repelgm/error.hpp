#pragma once

#include <stdexcept>
#include <string>

namespace repelgm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configuration or table has the wrong length for the model it is used with.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A node label lies outside [0, p).
class IndexError : public Error {
public:
  using Error::Error;
};

/// The requested exact computation exceeds the configured enumeration cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// A parameter lies outside the domain where a formula is defined.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Conditioning on an event of probability zero.
class UndefinedConditionalError : public Error {
public:
  using Error::Error;
};

/// Malformed input file (JSON, sample file).
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace repelgm
