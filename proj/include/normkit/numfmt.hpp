#pragma once

// Locale-free number text. Output never uses exponent notation; input
// accepts it.

#include <optional>
#include <string>
#include <string_view>

namespace normkit::numfmt {

/// Shortest fixed-notation text that parses back to exactly `v`.
std::string shortest(double v);

/// `v` rounded half away from zero to `decimals` places, computed on the
/// exact binary value so ties are real ties. A result that rounds to zero
/// carries no minus sign.
std::string fixed(double v, int decimals);

/// Parses a decimal number: optional sign, digits, optional fraction and
/// exponent. Surrounding spaces are ignored. Returns nullopt for anything
/// else, including nan/inf spellings and out-of-range magnitudes.
std::optional<double> parse(std::string_view text);

}  // namespace normkit::numfmt
