#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace simfs {

enum class ErrorCode {
  // dataset_io
  DuplicateIndicator,
  MalformedCell,
  MalformedHeader,
  MixedCountries,
  UnknownTarget,
  YearRangeError,
  EmptyTarget,
  // preprocessing
  TargetTooSparse,
  UnimputableColumn,
  NotImputed,
  // similarity
  EmptySeries,
  NonFiniteInput,
  LengthMismatch,
  TooShortForSSPD,
  // selection
  DegenerateTarget,
  BudgetExceeded,
  UnknownMethod,
  // evaluation
  TooManyFolds,
  BenchmarkEmpty,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the contract case;
/// `what()` carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A numeric cell that could not be parsed. Row and column are 0-based
/// positions in the CSV body (row 0 = first line after the header).
class MalformedCellError : public Error {
 public:
  MalformedCellError(std::size_t row, std::size_t column, const std::string& cell);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace simfs
