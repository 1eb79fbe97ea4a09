#pragma once

// Four column normalizers (Min-Max, Z-score, Decimal Scaling, Integer Scaling)
// and their inverses. Every function here is a pure map from inputs to a new
// value; nothing is mutated and nothing is cached.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace normkit {

/// A named series of finite values. Integer Scaling additionally requires
/// every value to be an integer.
struct NumericColumn {
    std::string name;
    std::vector<double> values;

    friend bool operator==(const NumericColumn&, const NumericColumn&) = default;
};

enum class Method { MinMax, ZScore, Decimal, IntScale };

/// Tags used on the command line and in sidecar files: minmax, zscore,
/// decimal, intscale.
std::string_view to_string(Method m) noexcept;
/// Throws Error(UnknownMethod) for anything but the four tags.
Method parse_method(std::string_view tag);

/// Target interval [low, high] for Min-Max. Defaults to [0, 1].
struct Boundary {
    double low = 0.0;
    double high = 1.0;

    friend bool operator==(const Boundary&, const Boundary&) = default;
};

struct MinMaxParams {
    double src_min = 0.0;
    double src_max = 0.0;
    double target_low = 0.0;
    double target_high = 1.0;

    friend bool operator==(const MinMaxParams&, const MinMaxParams&) = default;
};

struct ZScoreParams {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation, (n - 1) divisor
    std::uint64_t n = 1;

    friend bool operator==(const ZScoreParams&, const ZScoreParams&) = default;
};

struct DecimalScalingParams {
    int j = 0;

    friend bool operator==(const DecimalScalingParams&, const DecimalScalingParams&) = default;
};

struct DigitRecord {
    int sign = 1;      // -1 or +1
    int n_digits = 1;  // decimal digits of |x|, 1 for zero
    int leading = 0;   // most significant digit of |x|, 0 only for zero

    friend bool operator==(const DigitRecord&, const DigitRecord&) = default;
};

/// One record per source element, in element order.
struct IntegerScalingMetadata {
    std::vector<DigitRecord> records;

    friend bool operator==(const IntegerScalingMetadata&, const IntegerScalingMetadata&) = default;
};

using ParamSet = std::variant<MinMaxParams, ZScoreParams, DecimalScalingParams, IntegerScalingMetadata>;

Method method_of(const ParamSet& params) noexcept;

/// Output of a normalizer: the scaled values plus everything needed to undo
/// the scaling.
struct NormalizedColumn {
    std::string name;
    std::vector<double> values;
    ParamSet params;

    Method method() const noexcept { return method_of(params); }

    template <class P>
    const P& params_as() const {
        return std::get<P>(params);
    }
};

// --- Min-Max ---------------------------------------------------------------

/// Affine map of [min, max] onto [low, high]. A constant column maps to low.
NormalizedColumn min_max_normalize(const NumericColumn& col, Boundary target = {});
/// Throws DegenerateParams when src_min == src_max.
NumericColumn min_max_denormalize(const NormalizedColumn& norm, const MinMaxParams& params);

// --- Z-score ---------------------------------------------------------------

/// (v - mean) / std with the sample standard deviation. Columns whose values
/// are all identical (including single-element columns) map to all zeros.
NormalizedColumn z_score_normalize(const NumericColumn& col);
/// With std == 0 every output is the mean.
NumericColumn z_score_denormalize(const NormalizedColumn& norm, const ZScoreParams& params);

// --- Decimal Scaling -------------------------------------------------------

/// v / 10^j with j the smallest non-negative exponent for which every
/// output is strictly inside (-1, 1).
NormalizedColumn decimal_scaling_normalize(const NumericColumn& col);
NumericColumn decimal_scaling_denormalize(const NormalizedColumn& norm, const DecimalScalingParams& params);

/// 10^j as a double. Exact for j <= 22.
double power_of_ten(int j);

// --- Integer Scaling -------------------------------------------------------

/// Number of decimal digits in |x|; 1 for zero.
int digit_count(std::int64_t x) noexcept;
/// Most significant decimal digit of |x|; 0 for zero.
int leading_digit(std::int64_t x) noexcept;

/// Sign, digit count and leading digit of x.
DigitRecord describe_integer(std::int64_t x) noexcept;

/// Drops the leading digit of |x| and divides the remainder by 10^(N-1),
/// giving a value in [0, 1).
double integer_scale(std::int64_t x) noexcept;

/// Element-wise Integer Scaling. Every value must be an integer within the
/// int64 range; otherwise NonIntegerValue (or OutOfRange) naming the 1-based
/// row is thrown.
NormalizedColumn integer_scaling_normalize(const NumericColumn& col);
NormalizedColumn integer_scaling_normalize(std::string name, std::span<const std::int64_t> values);

/// Exact inverse: sign * (round(y * 10^(N-1)) + A * 10^(N-1)).
NumericColumn integer_scaling_denormalize(const NormalizedColumn& norm, const IntegerScalingMetadata& meta);
std::vector<std::int64_t> integer_scaling_restore(std::span<const double> scaled, const IntegerScalingMetadata& meta);

// --- Dispatch --------------------------------------------------------------

/// Runs the normalizer selected by `method`; `target` only affects Min-Max.
NormalizedColumn normalize(const NumericColumn& col, Method method, Boundary target = {});
/// Inverts with the parameter kind held in `params`.
NumericColumn denormalize(const NormalizedColumn& norm, const ParamSet& params);

}  // namespace normkit
