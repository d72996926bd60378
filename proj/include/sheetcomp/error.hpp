#pragma once

#include <stdexcept>
#include <string>

namespace sheetcomp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed A1 address or range text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input file could not be turned into a Sheet (bad JSON, bad archive, ...).
class IngestError : public Error {
 public:
  using Error::Error;
};

// A structure violates one of its invariants (overlapping index ranges, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Range lies outside the grid it is resolved against.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A ratio with a zero denominator was requested.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value or missing credential.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage could not produce its output.
class PipelineError : public Error {
 public:
  using Error::Error;
};

// LLM transport failure. Retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace sheetcomp
