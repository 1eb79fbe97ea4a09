#include "normkit/cli.hpp"

#include "normkit/dataio.hpp"
#include "normkit/error.hpp"
#include "normkit/numfmt.hpp"
#include "normkit/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace normkit::cli {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kMethodTags = {"minmax", "zscore", "decimal", "intscale"};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool use_color(const std::ostream& err) {
    return &err == &std::cerr && std::getenv("NORMKIT_NO_COLOR") == nullptr && ::isatty(STDERR_FILENO) == 1;
}

void report_error(std::ostream& err, std::string_view message) {
    if (use_color(err)) {
        err << "normkit: \x1b[31merror:\x1b[0m " << message << '\n';
    } else {
        err << "normkit: error: " << message << '\n';
    }
}

void report_note(std::ostream& err, std::string_view message) { err << "normkit: note: " << message << '\n'; }

template <class Fn>
int guarded(std::ostream& err, Fn&& body) {
    try {
        body();
        return kExitOk;
    } catch (const UsageError& e) {
        report_error(err, e.what());
        return kExitUsage;
    } catch (const Error& e) {
        report_error(err, e.what());
        return kExitDataError;
    } catch (const std::exception& e) {
        report_error(err, e.what());
        return kExitDataError;
    }
}

std::vector<const NumericColumn*> select_columns(const Dataset& ds, const std::vector<std::string>& selectors) {
    std::vector<const NumericColumn*> out;
    if (selectors.empty()) {
        for (const auto& c : ds.columns()) out.push_back(&c);
        return out;
    }
    for (const auto& s : selectors) out.push_back(&ds.column(s));
    return out;
}

std::string scaled_name(const std::string& source, Method m) { return source + "_" + std::string(to_string(m)); }

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    f << text;
    f.flush();
    if (!f) throw Error(Errc::IoError, "failed writing '" + path.string() + "'");
}

std::optional<int> parse_decimals(const std::string& text) {
    if (text == "shortest") return std::nullopt;
    int value = -1;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || value < 0 || value > 17) {
        throw UsageError("--decimals must be an integer in 0..17 or 'shortest', got '" + text + "'");
    }
    return value;
}

}  // namespace

fs::path default_sidecar_path(const fs::path& data_path, const std::optional<std::string>& column) {
    fs::path p = data_path;
    if (column) {
        p.replace_extension();
        p += "." + *column + std::string(kSidecarExtension);
        return p;
    }
    p.replace_extension(kSidecarExtension);
    return p;
}

int cmd_normalize(const CliConfig& cfg, std::ostream&, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.methods.size() != 1) throw UsageError("normalize takes exactly one --method");
        const Method method = cfg.methods.front();
        const Dataset ds = read_csv(cfg.input, cfg.has_header);
        const auto selected = select_columns(ds, cfg.columns);
        if (selected.size() > 1 && cfg.meta) {
            throw UsageError("--meta names a single sidecar; it cannot be combined with several columns");
        }

        Dataset out = ds;
        std::vector<std::optional<int>> places(ds.column_count(), std::nullopt);
        std::vector<ParamSidecar> sidecars;
        for (const NumericColumn* col : selected) {
            NormalizedColumn nc;
            try {
                nc = normalize(*col, method, cfg.boundary);
            } catch (const Error& e) {
                throw e.annotated(std::string(to_string(method)));
            }
            if (method == Method::IntScale && cfg.decimals) {
                const auto& recs = nc.params_as<IntegerScalingMetadata>().records;
                const bool lossy = std::any_of(recs.begin(), recs.end(),
                                               [&](const DigitRecord& r) { return r.n_digits - 1 > *cfg.decimals; });
                if (lossy) {
                    report_note(err, "column '" + col->name + "' has values with more than " +
                                         std::to_string(*cfg.decimals + 1) +
                                         " digits; rounded output will not scale up exactly (use --decimals shortest)");
                }
            }
            out.add_column({scaled_name(col->name, method), nc.values});
            places.push_back(cfg.decimals);
            sidecars.push_back({col->name, nc.params});
        }

        write_csv(out, cfg.output, places);
        for (const ParamSidecar& sc : sidecars) {
            fs::path meta = cfg.meta ? *cfg.meta
                                     : default_sidecar_path(cfg.output, sidecars.size() > 1
                                                                            ? std::optional<std::string>(sc.column)
                                                                            : std::nullopt);
            save_sidecar(sc, meta);
        }
    });
}

int cmd_denormalize(const CliConfig& cfg, std::ostream&, std::ostream& err) {
    return guarded(err, [&] {
        const fs::path meta = cfg.meta ? *cfg.meta : default_sidecar_path(cfg.input);
        const ParamSidecar sc = load_sidecar(meta);
        const Method method = sc.method();
        if (!cfg.methods.empty() && cfg.methods.front() != method) {
            throw Error(Errc::MethodMismatch, "sidecar '" + meta.string() + "' holds " +
                                                  std::string(to_string(method)) + " parameters, not " +
                                                  std::string(to_string(cfg.methods.front())));
        }

        const Dataset ds = read_csv(cfg.input, cfg.has_header);
        const NumericColumn* scaled = nullptr;
        if (!cfg.columns.empty()) {
            if (cfg.columns.size() != 1) throw UsageError("denormalize takes at most one --column");
            scaled = &ds.column(cfg.columns.front());
        } else {
            const std::string preferred = scaled_name(sc.column, method);
            const auto names = ds.names();
            if (std::find(names.begin(), names.end(), preferred) != names.end()) {
                scaled = &ds.column(preferred);
            } else {
                scaled = &ds.column(sc.column);
            }
        }
        for (Method other : {Method::MinMax, Method::ZScore, Method::Decimal, Method::IntScale}) {
            if (other != method && scaled->name.ends_with("_" + std::string(to_string(other)))) {
                throw Error(Errc::MethodMismatch, "column '" + scaled->name + "' looks " +
                                                      std::string(to_string(other)) + "-scaled but the sidecar holds " +
                                                      std::string(to_string(method)) + " parameters");
            }
        }
        if (const auto* z = std::get_if<ZScoreParams>(&sc.params); z && z->n != scaled->values.size()) {
            throw Error(Errc::LengthMismatch, "sidecar was fitted on " + std::to_string(z->n) + " values but column '" +
                                                  scaled->name + "' has " + std::to_string(scaled->values.size()));
        }

        NormalizedColumn norm{scaled->name, scaled->values, sc.params};
        NumericColumn restored = denormalize(norm, sc.params);
        restored.name = sc.column;
        write_csv(Dataset({std::move(restored)}), cfg.output, cfg.decimals);
    });
}

int cmd_compare(const CliConfig& cfg, std::ostream&, std::ostream& err) {
    return guarded(err, [&] {
        if (!cfg.table && !cfg.csv && !cfg.plot) {
            throw UsageError("compare needs at least one of --table, --csv, --plot");
        }
        if (cfg.methods.empty()) throw UsageError("compare needs --methods");
        if (cfg.columns.size() > 1) throw UsageError("compare works on one --column");

        const Dataset ds = read_csv(cfg.input, cfg.has_header);
        const NumericColumn& col = cfg.columns.empty() ? ds.columns().front() : ds.column(cfg.columns.front());
        const ComparisonTable t = compare(col, cfg.methods, cfg.boundary);
        const int places = cfg.decimals.value_or(3);

        if (cfg.table) write_file(*cfg.table, render_markdown(t, places));
        if (cfg.csv) write_file(*cfg.csv, render_csv(t, places));
        if (cfg.plot) {
            std::string title = cfg.title;
            if (title.empty()) {
                title = "Comparison on " + col.name + ":";
                for (std::size_t i = 0; i < t.columns.size(); ++i) {
                    title += i ? " vs " : " ";
                    title += display_name(t.columns[i].method);
                }
            }
            write_file(*cfg.plot, render_svg_chart(t, title));
        }
    });
}

int cmd_stats(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Dataset ds = read_csv(cfg.input, cfg.has_header);
        const auto selected = select_columns(ds, cfg.columns);
        std::string text;
        for (std::size_t i = 0; i < selected.size(); ++i) {
            const NumericColumn& col = *selected[i];
            const auto [lo, hi] = std::minmax_element(col.values.begin(), col.values.end());
            const auto z = z_score_normalize(col).params_as<ZScoreParams>();
            const auto d = decimal_scaling_normalize(col).params_as<DecimalScalingParams>();
            if (i) text += '\n';
            text += "column=" + col.name + '\n';
            text += "count=" + std::to_string(col.values.size()) + '\n';
            text += "min=" + numfmt::shortest(*lo) + '\n';
            text += "max=" + numfmt::shortest(*hi) + '\n';
            text += "mean=" + numfmt::shortest(z.mean) + '\n';
            text += "std=" + numfmt::shortest(z.std) + '\n';
            text += "j=" + std::to_string(d.j) + '\n';
        }
        out << text;
    });
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Normalize numeric CSV columns (Min-Max, Z-score, Decimal Scaling, Integer Scaling)", "normkit"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string method_tag;
    std::vector<std::string> method_tags;
    std::string decimals_text = "3";
    std::string meta, table, csv, plot;
    bool no_header = false;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", cfg.input, "CSV file to read")->required();
        sub->add_flag("--no-header", no_header, "First row is data, columns are named col0, col1, ...");
    };
    auto add_boundary = [&](CLI::App* sub) {
        sub->add_option("--c", cfg.boundary.low, "Lower Min-Max target")->capture_default_str();
        sub->add_option("--d", cfg.boundary.high, "Upper Min-Max target")->capture_default_str();
    };

    CLI::App* norm = app.add_subcommand("normalize", "Scale columns and write a .normmeta sidecar");
    add_input(norm);
    norm->add_option("--method", method_tag, "minmax, zscore, decimal or intscale")
        ->required()
        ->check(CLI::IsMember(kMethodTags));
    norm->add_option("--output", cfg.output, "CSV file to write")->required();
    norm->add_option("--column", cfg.columns, "Column name or zero-based index (repeatable; default all)");
    norm->add_option("--decimals", decimals_text, "Places for scaled values, or 'shortest'")->capture_default_str();
    norm->add_option("--meta", meta, "Sidecar path (default: output with .normmeta extension)");
    add_boundary(norm);

    CLI::App* denorm = app.add_subcommand("denormalize", "Scale a normalized column back up using its sidecar");
    add_input(denorm);
    denorm->add_option("--output", cfg.output, "CSV file to write")->required();
    denorm->add_option("--meta", meta, "Sidecar path (default: input with .normmeta extension)");
    denorm->add_option("--column", cfg.columns, "Column holding scaled values (default <source>_<method>)");
    denorm->add_option("--method", method_tag, "Expected method; a different sidecar method is an error")
        ->check(CLI::IsMember(kMethodTags));
    auto* denorm_decimals = denorm->add_option("--decimals", decimals_text, "Places for restored values (default shortest)");

    CLI::App* cmp = app.add_subcommand("compare", "Tabulate and plot several methods side by side");
    add_input(cmp);
    cmp->add_option("--methods", method_tags, "Comma-separated method list")
        ->required()
        ->delimiter(',')
        ->check(CLI::IsMember(kMethodTags));
    cmp->add_option("--column", cfg.columns, "Column name or zero-based index (default first)");
    cmp->add_option("--decimals", decimals_text, "Places for table cells")->capture_default_str();
    cmp->add_option("--table", table, "Markdown table output");
    cmp->add_option("--csv", csv, "CSV table output");
    cmp->add_option("--plot", plot, "SVG chart output");
    cmp->add_option("--title", cfg.title, "Chart title");
    add_boundary(cmp);

    CLI::App* stats = app.add_subcommand("stats", "Print count, min, max, mean, std and decimal exponent");
    add_input(stats);
    stats->add_option("--column", cfg.columns, "Column name or zero-based index (repeatable; default all)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CLI::App* chosen = app.get_subcommands().front();
        cfg.subcommand = chosen->get_name();
        cfg.has_header = !no_header;
        if (!method_tag.empty()) cfg.methods.push_back(parse_method(method_tag));
        for (const auto& tag : method_tags) cfg.methods.push_back(parse_method(tag));
        if (!meta.empty()) cfg.meta = meta;
        if (!table.empty()) cfg.table = table;
        if (!csv.empty()) cfg.csv = csv;
        if (!plot.empty()) cfg.plot = plot;
        if (chosen == denorm && denorm_decimals->count() == 0) {
            cfg.decimals = std::nullopt;
        } else {
            cfg.decimals = parse_decimals(decimals_text);
        }
    } catch (const std::exception& e) {
        report_error(err, e.what());
        return kExitUsage;
    }

    if (cfg.subcommand == "normalize") return cmd_normalize(cfg, out, err);
    if (cfg.subcommand == "denormalize") return cmd_denormalize(cfg, out, err);
    if (cfg.subcommand == "compare") return cmd_compare(cfg, out, err);
    return cmd_stats(cfg, out, err);
}

}  // namespace normkit::cli
