#include "normkit/error.hpp"

namespace normkit {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::EmptyColumn: return "EmptyColumn";
        case Errc::NonFiniteValue: return "NonFiniteValue";
        case Errc::InvalidBoundary: return "InvalidBoundary";
        case Errc::DegenerateParams: return "DegenerateParams";
        case Errc::NonIntegerValue: return "NonIntegerValue";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::FileNotFound: return "FileNotFound";
        case Errc::ParseError: return "ParseError";
        case Errc::RaggedRows: return "RaggedRows";
        case Errc::EmptyFile: return "EmptyFile";
        case Errc::IoError: return "IoError";
        case Errc::FormatError: return "FormatError";
        case Errc::VersionError: return "VersionError";
        case Errc::MethodMismatch: return "MethodMismatch";
        case Errc::UnknownColumn: return "UnknownColumn";
        case Errc::UnknownMethod: return "UnknownMethod";
    }
    return "Unknown";
}

Error::Error(Errc code, std::string detail, std::optional<Location> where)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)),
      where_(where) {}

Error Error::annotated(std::string_view context) const {
    return Error(code_, std::string(context) + ": " + detail_, where_);
}

}  // namespace normkit
