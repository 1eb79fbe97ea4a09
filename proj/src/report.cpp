#include "normkit/report.hpp"

#include "normkit/error.hpp"
#include "normkit/numfmt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace normkit {

std::string_view display_name(Method m) noexcept {
    switch (m) {
        case Method::MinMax: return "Min-Max Normalization";
        case Method::ZScore: return "Z-score Normalization";
        case Method::Decimal: return "Decimal Scaling Normalization";
        case Method::IntScale: return "Integer Scaling Normalization";
    }
    return "Unknown";
}

ComparisonTable compare(const NumericColumn& col, std::span<const Method> methods, std::optional<Boundary> boundary) {
    if (methods.empty()) throw Error(Errc::UnknownMethod, "no methods requested");
    ComparisonTable t{col.name, col.values, {}, boundary.value_or(Boundary{})};
    for (Method m : methods) {
        try {
            t.columns.push_back({m, normalize(col, m, t.boundary).values});
        } catch (const Error& e) {
            throw e.annotated(to_string(m));
        }
    }
    return t;
}

std::string render_markdown(const ComparisonTable& t, int decimals) {
    std::string out = "| Sl. No. | Original Data |";
    std::string rule = "|---:|---:|";
    for (const auto& c : t.columns) {
        out += ' ';
        out += display_name(c.method);
        out += " |";
        rule += "---:|";
    }
    out += '\n' + rule + '\n';
    if (t.columns.empty()) return out;

    for (std::size_t r = 0; r < t.row_count(); ++r) {
        out += "| " + std::to_string(r + 1) + " | " + numfmt::shortest(t.original[r]) + " |";
        for (const auto& c : t.columns) out += ' ' + numfmt::fixed(c.values[r], decimals) + " |";
        out += '\n';
    }
    return out;
}

std::string render_csv(const ComparisonTable& t, int decimals) {
    std::vector<NumericColumn> cols;
    std::vector<std::optional<int>> places;
    std::vector<double> index(t.row_count());
    for (std::size_t r = 0; r < index.size(); ++r) index[r] = static_cast<double>(r + 1);
    cols.push_back({"Sl. No.", std::move(index)});
    cols.push_back({"Original Data", t.original});
    places.assign(2, std::nullopt);
    for (const auto& c : t.columns) {
        cols.push_back({std::string(display_name(c.method)), c.values});
        places.emplace_back(decimals);
    }
    return format_csv(Dataset(std::move(cols)), places);
}

// --- SVG -------------------------------------------------------------------

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 30;
constexpr double kTop = 70;
constexpr double kBottom = 55;
constexpr std::array<std::string_view, 4> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string px(double v) { return numfmt::fixed(v, 2); }

bool unit_bounded(Method m, const Boundary& b) {
    switch (m) {
        case Method::IntScale: return true;
        case Method::MinMax: return b.low >= 0.0 && b.high <= 1.0;
        default: return false;
    }
}

struct Range {
    double lo;
    double hi;
};

Range value_range(const ComparisonTable& t) {
    const bool bounded = std::all_of(t.columns.begin(), t.columns.end(),
                                     [&](const MethodColumn& c) { return unit_bounded(c.method, t.boundary); });
    if (bounded) return {0.0, 1.0};

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : t.columns) {
        for (double v : c.values) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    double span = hi - lo;
    if (!(span > 0.0)) span = std::max(std::abs(hi), 1.0);
    return {lo - 0.05 * span, hi + 0.05 * span};
}

}  // namespace

std::string render_svg_chart(const ComparisonTable& t, std::string_view title) {
    const std::size_t n = t.row_count();
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const Range yr = value_range(t);

    auto x_of = [&](std::size_t row) {
        if (n <= 1) return kLeft + plot_w / 2;
        return kLeft + plot_w * static_cast<double>(row) / static_cast<double>(n - 1);
    };
    auto y_of = [&](double v) { return kTop + plot_h * (yr.hi - v) / (yr.hi - yr.lo); };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + px(kWidth) + "\" height=\"" +
         px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + ' ' + px(kHeight) + "\">\n";
    s += "<title>" + xml_escape(title) + "</title>\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + px(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + xml_escape(title) + "</text>\n";

    // Axes, grid and ticks.
    s += "<g class=\"axes\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    constexpr int kYTicks = 5;
    const double step = (yr.hi - yr.lo) / kYTicks;
    const int label_places = std::clamp(1 - static_cast<int>(std::floor(std::log10(step))), 0, 6);
    for (int i = 0; i <= kYTicks; ++i) {
        const double v = yr.lo + step * i;
        const std::string y = px(y_of(v));
        s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + y + "\" x2=\"" + px(kLeft + plot_w) + "\" y2=\"" + y +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + y + "\" text-anchor=\"end\" dominant-baseline=\"middle\">" +
             numfmt::fixed(v, label_places) + "</text>\n";
    }
    const std::size_t every = n > 20 ? (n + 9) / 10 : 1;
    for (std::size_t r = 0; r < n; r += every) {
        s += "<text x=\"" + px(x_of(r)) + "\" y=\"" + px(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
             std::to_string(r + 1) + "</text>\n";
    }
    s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop + plot_h) + "\" x2=\"" + px(kLeft + plot_w) + "\" y2=\"" +
         px(kTop + plot_h) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) + "\" y2=\"" + px(kTop + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"" + px(kHeight - 12) +
         "\" text-anchor=\"middle\">Sl. No.</text>\n";
    s += "<text x=\"16\" y=\"" + px(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         px(kTop + plot_h / 2) + ")\">Normalized value</text>\n";
    s += "</g>\n";

    // One series per method: polyline for two or more points, markers always.
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
        const MethodColumn& c = t.columns[k];
        const std::string_view color = kPalette[k % kPalette.size()];
        s += "<g class=\"series\" data-method=\"" + std::string(to_string(c.method)) + "\">\n";
        if (n >= 2) {
            s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"";
            for (std::size_t r = 0; r < n; ++r) {
                if (r) s += ' ';
                s += px(x_of(r)) + ',' + px(y_of(c.values[r]));
            }
            s += "\"/>\n";
        }
        for (std::size_t r = 0; r < n; ++r) {
            s += "<circle cx=\"" + px(x_of(r)) + "\" cy=\"" + px(y_of(c.values[r])) + "\" r=\"3\" fill=\"" +
                 std::string(color) + "\"/>\n";
        }
        s += "</g>\n";
    }

    // Legend under the title, two entries per row.
    s += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
        const std::string_view color = kPalette[k % kPalette.size()];
        const double lx = kLeft + 300.0 * static_cast<double>(k % 2);
        const double ly = 42.0 + 16.0 * static_cast<double>(k / 2);
        s += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" + px(lx + 24) + "\" y2=\"" + px(ly) +
             "\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + px(lx + 30) + "\" y=\"" + px(ly + 4) + "\">" +
             xml_escape(display_name(t.columns[k].method)) + "</text>\n";
    }
    s += "</g>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace normkit
