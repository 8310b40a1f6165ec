#include "simfs/error.hpp"

namespace simfs {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateIndicator: return "DuplicateIndicator";
    case ErrorCode::MalformedCell: return "MalformedCell";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MixedCountries: return "MixedCountries";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::YearRangeError: return "YearRangeError";
    case ErrorCode::EmptyTarget: return "EmptyTarget";
    case ErrorCode::TargetTooSparse: return "TargetTooSparse";
    case ErrorCode::UnimputableColumn: return "UnimputableColumn";
    case ErrorCode::NotImputed: return "NotImputed";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooShortForSSPD: return "TooShortForSSPD";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnknownMethod: return "UnknownMethod";
    case ErrorCode::TooManyFolds: return "TooManyFolds";
    case ErrorCode::BenchmarkEmpty: return "BenchmarkEmpty";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

MalformedCellError::MalformedCellError(std::size_t row, std::size_t column, const std::string& cell)
    : Error(ErrorCode::MalformedCell, "row " + std::to_string(row) + ", column " +
                                          std::to_string(column) + ": cannot parse '" + cell + "'"),
      row_(row),
      column_(column) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace simfs
