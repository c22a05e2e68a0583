#pragma once

#include <stdexcept>
#include <string>

namespace ssnmf {

/// Operand shapes do not line up.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value is out of its valid range.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable input files.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Corpus ingestion produced something unusable (empty vocabulary, short class).
class IngestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The solver could not start or continue (e.g. infinite initial objective).
class FitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Cluster evaluation is undefined for the given inputs.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ssnmf
