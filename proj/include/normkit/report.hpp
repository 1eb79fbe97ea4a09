#pragma once

// Side-by-side comparison of normalization methods on one column, rendered
// as Markdown, CSV or an SVG line chart.

#include "normkit/dataio.hpp"
#include "normkit/normcore.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace normkit {

struct MethodColumn {
    Method method;
    std::vector<double> values;
};

/// Rows are numbered 1..n in source order; every method column has n values.
struct ComparisonTable {
    std::string name;
    std::vector<double> original;
    std::vector<MethodColumn> columns;
    Boundary boundary;  // Min-Max target used for this table

    std::size_t row_count() const noexcept { return original.size(); }
};

/// Column heading for a method, e.g. "Integer Scaling Normalization".
std::string_view display_name(Method m) noexcept;

/// Runs each method over `col` in the requested order. Errors from a method
/// are rethrown with the method tag prefixed to the detail.
ComparisonTable compare(const NumericColumn& col, std::span<const Method> methods,
                        std::optional<Boundary> boundary = std::nullopt);

std::string render_markdown(const ComparisonTable& t, int decimals = 3);

/// Sl. No., original values (shortest text) and method columns rounded to
/// `decimals`.
std::string render_csv(const ComparisonTable& t, int decimals = 3);

/// Static SVG 1.1 line chart, one series per method over the row index.
/// The y-axis is pinned to [0, 1] when every method is bounded to it.
std::string render_svg_chart(const ComparisonTable& t, std::string_view title);

}  // namespace normkit
