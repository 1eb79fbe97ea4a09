#include "normkit/numfmt.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

namespace normkit::numfmt {

namespace {

// Enough fraction digits to print any double exactly (smallest subnormal
// has 1074 binary fraction digits, hence at most 1074 decimal ones).
constexpr int kExactDigits = 1080;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string shortest(double v) {
    std::array<char, 512> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    return std::string(buf.data(), res.ptr);
}

std::string fixed(double v, int decimals) {
    decimals = std::clamp(decimals, 0, kExactDigits - 1);
    std::array<char, 1500> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(v), std::chars_format::fixed, kExactDigits);
    std::string_view exact(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));

    const auto dot = exact.find('.');
    std::string digits(exact.substr(0, dot));
    digits.append(exact.substr(dot + 1, static_cast<std::size_t>(decimals)));

    // The exact expansion terminates, so digit >= 5 at the cut means the
    // remainder is at least half a unit: round away from zero.
    if (exact[dot + 1 + static_cast<std::size_t>(decimals)] >= '5') {
        std::size_t i = digits.size();
        while (i > 0) {
            --i;
            if (digits[i] == '9') {
                digits[i] = '0';
            } else {
                ++digits[i];
                break;
            }
            if (i == 0) digits.insert(digits.begin(), '1');
        }
    }

    const std::size_t whole = digits.size() - static_cast<std::size_t>(decimals);
    std::string out;
    const bool zero = digits.find_first_not_of('0') == std::string::npos;
    if (std::signbit(v) && !zero) out.push_back('-');
    out.append(digits, 0, whole);
    if (decimals > 0) {
        out.push_back('.');
        out.append(digits, whole, std::string::npos);
    }
    return out;
}

std::optional<double> parse(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
        if (!text.empty() && text.front() == '-') return std::nullopt;
    }
    if (text.empty()) return std::nullopt;

    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value, std::chars_format::general);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

}  // namespace normkit::numfmt
