#include "normkit/normcore.hpp"

#include "normkit/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

namespace normkit {

namespace {

constexpr int kMaxDecimalExponent = 308;
constexpr int kMaxIntegerDigits = 19;  // digits of 2^63

void require_finite_column(const std::string& name, std::span<const double> values) {
    if (values.empty()) {
        throw Error(Errc::EmptyColumn, "column '" + name + "' has no values");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(Errc::NonFiniteValue, "column '" + name + "' row " + std::to_string(i + 1) + " is not finite",
                        Location{i + 1, 0});
        }
    }
}

void require_finite_values(const std::string& name, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(Errc::NonFiniteValue, "column '" + name + "' row " + std::to_string(i + 1) + " is not finite",
                        Location{i + 1, 0});
        }
    }
}

void require_boundary(double low, double high) {
    if (!std::isfinite(low) || !std::isfinite(high) || !(low < high)) {
        throw Error(Errc::InvalidBoundary, "target boundary [" + std::to_string(low) + ", " + std::to_string(high) +
                                               "] must satisfy low < high");
    }
}

// Position of v inside [lo, hi] as a fraction; 0 at lo and exactly 1 at hi.
double unit_position(double v, double lo, double hi) {
    double span = hi - lo;
    if (std::isfinite(span)) {
        return (v - lo) / span;
    }
    return (v * 0.5 - lo * 0.5) / (hi * 0.5 - lo * 0.5);
}

// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double carry = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

double column_mean(std::span<const double> values) {
    const auto n = static_cast<double>(values.size());
    double sum = compensated_sum(values);
    if (std::isfinite(sum)) {
        return sum / n;
    }
    std::vector<double> scaled(values.begin(), values.end());
    for (double& v : scaled) v /= n;
    return compensated_sum(scaled);
}

const std::array<double, kMaxDecimalExponent + 1>& decimal_powers() {
    static const auto table = [] {
        std::array<double, kMaxDecimalExponent + 1> t{};
        for (int j = 0; j <= kMaxDecimalExponent; ++j) {
            // from_chars rounds correctly, std::pow is not required to.
            std::string text = "1e" + std::to_string(j);
            std::from_chars(text.data(), text.data() + text.size(), t[static_cast<std::size_t>(j)]);
        }
        return t;
    }();
    return table;
}

std::uint64_t pow10_u64(int exponent) noexcept {
    std::uint64_t p = 1;
    for (int i = 0; i < exponent; ++i) p *= 10;
    return p;
}

std::uint64_t magnitude(std::int64_t x) noexcept {
    return x < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x);
}

std::int64_t as_integer(const std::string& name, std::size_t index, double v) {
    const std::string where = "column '" + name + "' row " + std::to_string(index + 1);
    if (!std::isfinite(v)) {
        throw Error(Errc::NonFiniteValue, where + " is not finite", Location{index + 1, 0});
    }
    if (v != std::trunc(v)) {
        throw Error(Errc::NonIntegerValue, where + ": value " + std::to_string(v) + " is not an integer",
                    Location{index + 1, 0});
    }
    constexpr double kTwo63 = 9223372036854775808.0;
    if (v < -kTwo63 || v >= kTwo63) {
        throw Error(Errc::OutOfRange, where + ": integer exceeds the 64-bit range", Location{index + 1, 0});
    }
    return static_cast<std::int64_t>(v);
}

void require_record(const DigitRecord& r, std::size_t index) {
    const bool ok = (r.sign == 1 || r.sign == -1) && r.n_digits >= 1 && r.n_digits <= kMaxIntegerDigits &&
                    r.leading >= 0 && r.leading <= 9 && (r.leading != 0 || r.n_digits == 1);
    if (!ok) {
        throw Error(Errc::OutOfRange, "digit record " + std::to_string(index + 1) + " is inconsistent (sign " +
                                          std::to_string(r.sign) + ", digits " + std::to_string(r.n_digits) +
                                          ", leading " + std::to_string(r.leading) + ")",
                    Location{index + 1, 0});
    }
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::MinMax: return "minmax";
        case Method::ZScore: return "zscore";
        case Method::Decimal: return "decimal";
        case Method::IntScale: return "intscale";
    }
    return "unknown";
}

Method parse_method(std::string_view tag) {
    for (Method m : {Method::MinMax, Method::ZScore, Method::Decimal, Method::IntScale}) {
        if (tag == to_string(m)) return m;
    }
    throw Error(Errc::UnknownMethod,
                "'" + std::string(tag) + "' is not one of minmax, zscore, decimal, intscale");
}

Method method_of(const ParamSet& params) noexcept {
    switch (params.index()) {
        case 0: return Method::MinMax;
        case 1: return Method::ZScore;
        case 2: return Method::Decimal;
        default: return Method::IntScale;
    }
}

// --- Min-Max ---------------------------------------------------------------

NormalizedColumn min_max_normalize(const NumericColumn& col, Boundary target) {
    require_finite_column(col.name, col.values);
    require_boundary(target.low, target.high);

    const auto [lo_it, hi_it] = std::minmax_element(col.values.begin(), col.values.end());
    MinMaxParams params{*lo_it, *hi_it, target.low, target.high};

    std::vector<double> out(col.values.size(), target.low);
    if (params.src_min < params.src_max) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            // lerp is exact at both ends and monotone in t.
            double t = unit_position(col.values[i], params.src_min, params.src_max);
            out[i] = std::lerp(target.low, target.high, t);
        }
    }
    return {col.name, std::move(out), params};
}

NumericColumn min_max_denormalize(const NormalizedColumn& norm, const MinMaxParams& params) {
    require_boundary(params.target_low, params.target_high);
    if (!std::isfinite(params.src_min) || !std::isfinite(params.src_max) || params.src_min > params.src_max) {
        throw Error(Errc::DegenerateParams, "source range must be finite with min <= max");
    }
    if (params.src_min == params.src_max) {
        throw Error(Errc::DegenerateParams,
                    "source column was constant; its values cannot be recovered from the scaled column");
    }
    require_finite_values(norm.name, norm.values);

    std::vector<double> out(norm.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double t = unit_position(norm.values[i], params.target_low, params.target_high);
        out[i] = std::lerp(params.src_min, params.src_max, t);
    }
    return {norm.name, std::move(out)};
}

// --- Z-score ---------------------------------------------------------------

NormalizedColumn z_score_normalize(const NumericColumn& col) {
    require_finite_column(col.name, col.values);
    const std::span<const double> v(col.values);
    const std::size_t n = v.size();

    ZScoreParams params{v.front(), 0.0, n};
    std::vector<double> out(n, 0.0);

    const bool identical = std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    if (identical) {
        return {col.name, std::move(out), params};
    }

    params.mean = column_mean(v);

    // Corrected two-pass variance on deviations rescaled by their largest
    // magnitude, so neither tiny nor huge columns under/overflow.
    std::vector<double> dev(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dev[i] = v[i] - params.mean;
        scale = std::max(scale, std::abs(dev[i]));
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double d : dev) {
        double s = d / scale;
        sum += s;
        sum_sq += s * s;
    }
    const auto nd = static_cast<double>(n);
    double var = (sum_sq - sum * sum / nd) / (nd - 1.0);
    params.std = scale * std::sqrt(std::max(var, 0.0));

    if (params.std > 0.0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = dev[i] / params.std;
    }
    return {col.name, std::move(out), params};
}

NumericColumn z_score_denormalize(const NormalizedColumn& norm, const ZScoreParams& params) {
    if (!std::isfinite(params.mean) || !std::isfinite(params.std) || params.std < 0.0 || params.n == 0) {
        throw Error(Errc::DegenerateParams, "z-score parameters need a finite mean, std >= 0 and n >= 1");
    }
    require_finite_values(norm.name, norm.values);

    std::vector<double> out(norm.values.size(), params.mean);
    if (params.std > 0.0) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = norm.values[i] * params.std + params.mean;
    }
    return {norm.name, std::move(out)};
}

// --- Decimal Scaling -------------------------------------------------------

double power_of_ten(int j) {
    if (j < 0 || j > kMaxDecimalExponent) {
        throw Error(Errc::OutOfRange, "decimal exponent " + std::to_string(j) + " is outside 0.." +
                                          std::to_string(kMaxDecimalExponent));
    }
    return decimal_powers()[static_cast<std::size_t>(j)];
}

NormalizedColumn decimal_scaling_normalize(const NumericColumn& col) {
    require_finite_column(col.name, col.values);

    double peak = 0.0;
    for (double v : col.values) peak = std::max(peak, std::abs(v));

    int j = 0;
    if (peak >= 1.0) {
        j = std::clamp(static_cast<int>(std::floor(std::log10(peak))) + 1, 0, kMaxDecimalExponent + 1);
        // log10 is only an estimate; the criterion is the division actually
        // performed on the outputs.
        while (j > 0 && j - 1 <= kMaxDecimalExponent && peak / power_of_ten(j - 1) < 1.0) --j;
        while (j <= kMaxDecimalExponent && peak / power_of_ten(j) >= 1.0) ++j;
        if (j > kMaxDecimalExponent) {
            throw Error(Errc::OutOfRange, "column '" + col.name + "' magnitude needs a decimal exponent above " +
                                              std::to_string(kMaxDecimalExponent));
        }
    }

    const double divisor = power_of_ten(j);
    std::vector<double> out(col.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = col.values[i] / divisor;
    return {col.name, std::move(out), DecimalScalingParams{j}};
}

NumericColumn decimal_scaling_denormalize(const NormalizedColumn& norm, const DecimalScalingParams& params) {
    const double factor = power_of_ten(params.j);
    require_finite_values(norm.name, norm.values);

    std::vector<double> out(norm.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = norm.values[i] * factor;
    return {norm.name, std::move(out)};
}

// --- Integer Scaling -------------------------------------------------------

int digit_count(std::int64_t x) noexcept {
    std::uint64_t u = magnitude(x);
    int count = 1;
    while (u >= 10) {
        u /= 10;
        ++count;
    }
    return count;
}

int leading_digit(std::int64_t x) noexcept {
    std::uint64_t u = magnitude(x);
    while (u >= 10) u /= 10;
    return static_cast<int>(u);
}

DigitRecord describe_integer(std::int64_t x) noexcept {
    return {x < 0 ? -1 : 1, digit_count(x), leading_digit(x)};
}

double integer_scale(std::int64_t x) noexcept {
    const DigitRecord r = describe_integer(x);
    const std::uint64_t unit = pow10_u64(r.n_digits - 1);
    const std::uint64_t rest = magnitude(x) - static_cast<std::uint64_t>(r.leading) * unit;
    return static_cast<double>(rest) / static_cast<double>(unit);
}

NormalizedColumn integer_scaling_normalize(std::string name, std::span<const std::int64_t> values) {
    if (values.empty()) {
        throw Error(Errc::EmptyColumn, "column '" + name + "' has no values");
    }
    IntegerScalingMetadata meta;
    meta.records.reserve(values.size());
    std::vector<double> out;
    out.reserve(values.size());
    for (std::int64_t x : values) {
        meta.records.push_back(describe_integer(x));
        out.push_back(integer_scale(x));
    }
    return {std::move(name), std::move(out), std::move(meta)};
}

NormalizedColumn integer_scaling_normalize(const NumericColumn& col) {
    if (col.values.empty()) {
        throw Error(Errc::EmptyColumn, "column '" + col.name + "' has no values");
    }
    std::vector<std::int64_t> ints;
    ints.reserve(col.values.size());
    for (std::size_t i = 0; i < col.values.size(); ++i) ints.push_back(as_integer(col.name, i, col.values[i]));
    return integer_scaling_normalize(col.name, ints);
}

std::vector<std::int64_t> integer_scaling_restore(std::span<const double> scaled, const IntegerScalingMetadata& meta) {
    if (scaled.size() != meta.records.size()) {
        throw Error(Errc::LengthMismatch, "metadata describes " + std::to_string(meta.records.size()) +
                                              " values but " + std::to_string(scaled.size()) + " were given");
    }
    std::vector<std::int64_t> out;
    out.reserve(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        const DigitRecord& r = meta.records[i];
        require_record(r, i);
        const double y = scaled[i];
        if (!(y >= 0.0 && y < 1.0)) {
            throw Error(Errc::OutOfRange, "row " + std::to_string(i + 1) + ": scaled value " + std::to_string(y) +
                                              " is outside [0, 1)",
                        Location{i + 1, 0});
        }
        const std::uint64_t unit = pow10_u64(r.n_digits - 1);
        const auto rest = static_cast<std::uint64_t>(std::llround(y * static_cast<double>(unit)));
        const std::uint64_t head = static_cast<std::uint64_t>(r.leading) * unit;
        const std::uint64_t limit =
            r.sign < 0 ? std::uint64_t{1} << 63 : static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
        if (head > limit || rest > limit - head) {
            throw Error(Errc::OutOfRange, "row " + std::to_string(i + 1) + " does not fit a 64-bit integer",
                        Location{i + 1, 0});
        }
        const std::uint64_t mag = head + rest;
        out.push_back(r.sign < 0 ? static_cast<std::int64_t>(std::uint64_t{0} - mag) : static_cast<std::int64_t>(mag));
    }
    return out;
}

NumericColumn integer_scaling_denormalize(const NormalizedColumn& norm, const IntegerScalingMetadata& meta) {
    std::vector<std::int64_t> ints = integer_scaling_restore(norm.values, meta);
    std::vector<double> out(ints.begin(), ints.end());
    return {norm.name, std::move(out)};
}

// --- Dispatch --------------------------------------------------------------

NormalizedColumn normalize(const NumericColumn& col, Method method, Boundary target) {
    switch (method) {
        case Method::MinMax: return min_max_normalize(col, target);
        case Method::ZScore: return z_score_normalize(col);
        case Method::Decimal: return decimal_scaling_normalize(col);
        case Method::IntScale: return integer_scaling_normalize(col);
    }
    throw Error(Errc::UnknownMethod, "unhandled method");
}

NumericColumn denormalize(const NormalizedColumn& norm, const ParamSet& params) {
    return std::visit(
        [&](const auto& p) -> NumericColumn {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MinMaxParams>) {
                return min_max_denormalize(norm, p);
            } else if constexpr (std::is_same_v<P, ZScoreParams>) {
                return z_score_denormalize(norm, p);
            } else if constexpr (std::is_same_v<P, DecimalScalingParams>) {
                return decimal_scaling_denormalize(norm, p);
            } else {
                return integer_scaling_denormalize(norm, p);
            }
        },
        params);
}

}  // namespace normkit
