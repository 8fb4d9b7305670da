#pragma once

#include <stdexcept>
#include <string>

namespace fisgen {

/// Base class for all library errors. The three direct subclasses map onto
/// the CLI exit codes: UsageError -> 1, DataError -> 2, NumericError -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// -- configuration / usage ---------------------------------------------------

class InvalidConfig : public UsageError {
 public:
  using UsageError::UsageError;
};

class InvalidK : public UsageError {
 public:
  using UsageError::UsageError;
};

class InvalidSizes : public UsageError {
 public:
  using UsageError::UsageError;
};

class InvalidSpec : public UsageError {
 public:
  using UsageError::UsageError;
};

// -- input data --------------------------------------------------------------

class EmptyInput : public DataError {
 public:
  using DataError::DataError;
};

class TooFewPoints : public DataError {
 public:
  using DataError::DataError;
};

class NonFiniteInput : public DataError {
 public:
  using DataError::DataError;
};

class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

class EmptyRuleSet : public DataError {
 public:
  using DataError::DataError;
};

class EmptyTestSet : public DataError {
 public:
  using DataError::DataError;
};

class EmptyRecords : public DataError {
 public:
  using DataError::DataError;
};

class MisalignedRecords : public DataError {
 public:
  using DataError::DataError;
};

class NoPredictionsMade : public DataError {
 public:
  using DataError::DataError;
};

class TooFewObservations : public DataError {
 public:
  using DataError::DataError;
};

// -- file parsing ------------------------------------------------------------

class MissingColumn : public DataError {
 public:
  using DataError::DataError;
};

class NonNumericCell : public DataError {
 public:
  using DataError::DataError;
};

class RaggedRow : public DataError {
 public:
  using DataError::DataError;
};

class EmptyFile : public DataError {
 public:
  using DataError::DataError;
};

class JsonSchemaError : public DataError {
 public:
  using DataError::DataError;
};

// -- numerical failures ------------------------------------------------------

class DegenerateCluster : public NumericError {
 public:
  using NumericError::NumericError;
};

class DuplicateCenters : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroVariance : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace fisgen
