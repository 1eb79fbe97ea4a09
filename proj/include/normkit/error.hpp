#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace normkit {

enum class Errc {
    EmptyColumn,
    NonFiniteValue,
    InvalidBoundary,
    DegenerateParams,
    NonIntegerValue,
    LengthMismatch,
    OutOfRange,
    FileNotFound,
    ParseError,
    RaggedRows,
    EmptyFile,
    IoError,
    FormatError,
    VersionError,
    MethodMismatch,
    UnknownColumn,
    UnknownMethod,
};

std::string_view to_string(Errc code) noexcept;

/// Location of a failure inside tabular input. Rows and columns are 1-based;
/// rows count data records, not physical lines, and row 0 is the header.
struct Location {
    std::size_t row = 0;
    std::size_t column = 0;
};

/// The single exception type thrown by the library. what() reads
/// "<Code>: <detail>", so a caller printing it always names the failure kind.
class Error : public std::runtime_error {
public:
    Error(Errc code, std::string detail, std::optional<Location> where = std::nullopt);

    Errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }
    const std::optional<Location>& where() const noexcept { return where_; }

    /// Same code and location, detail prefixed with `context: `.
    Error annotated(std::string_view context) const;

private:
    Errc code_;
    std::string detail_;
    std::optional<Location> where_;
};

}  // namespace normkit
