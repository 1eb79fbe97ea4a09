#include "normkit/dataio.hpp"

#include "normkit/error.hpp"
#include "normkit/numfmt.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace normkit {

namespace fs = std::filesystem;

// --- Dataset ---------------------------------------------------------------

Dataset::Dataset(std::vector<NumericColumn> columns) {
    for (auto& c : columns) add_column(std::move(c));
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(columns_.size());
    for (const auto& c : columns_) out.push_back(c.name);
    return out;
}

std::size_t Dataset::index_of(std::string_view selector) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == selector) return i;
    }
    std::size_t index = 0;
    auto res = std::from_chars(selector.data(), selector.data() + selector.size(), index);
    if (res.ec == std::errc{} && res.ptr == selector.data() + selector.size() && index < columns_.size()) {
        return index;
    }
    throw Error(Errc::UnknownColumn, "no column named or numbered '" + std::string(selector) + "'");
}

const NumericColumn& Dataset::column(std::string_view selector) const { return columns_[index_of(selector)]; }

void Dataset::add_column(NumericColumn col) {
    for (const auto& c : columns_) {
        if (c.name == col.name) throw Error(Errc::FormatError, "duplicate column name '" + col.name + "'");
    }
    if (!columns_.empty() && col.values.size() != row_count()) {
        throw Error(Errc::FormatError, "column '" + col.name + "' has " + std::to_string(col.values.size()) +
                                           " rows, expected " + std::to_string(row_count()));
    }
    columns_.push_back(std::move(col));
}

// --- CSV reading -----------------------------------------------------------

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw Error(Errc::IoError, "failed writing '" + path.string() + "'");
}

std::string read_text(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec) || fs::is_directory(path, ec)) {
        throw Error(Errc::FileNotFound, "cannot find '" + path.string() + "'");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(Errc::IoError, "failed reading '" + path.string() + "'");
    return text;
}

struct Field {
    std::string text;
    bool quoted = false;
};

struct Record {
    std::vector<Field> fields;
    std::size_t line = 0;
};

std::string_view trim_blank(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

class CsvTokenizer {
public:
    CsvTokenizer(std::string_view text, bool has_header) : text_(text), header_rows_(has_header ? 1 : 0) {
        if (text_.substr(0, 3) == "\xEF\xBB\xBF") text_.remove_prefix(3);
    }

    std::vector<Record> records() {
        std::vector<Record> out;
        while (pos_ < text_.size()) {
            if (skip_ignorable_line()) continue;
            out.push_back(record());
            ++records_;
        }
        return out;
    }

private:
    bool at_eol() const {
        return pos_ >= text_.size() || text_[pos_] == '\n' ||
               (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n');
    }

    void consume_eol() {
        if (pos_ >= text_.size()) return;
        pos_ += text_[pos_] == '\r' ? 2 : 1;
        ++line_;
    }

    // Blank (whitespace-only) lines and '#' comment lines.
    bool skip_ignorable_line() {
        std::size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        std::string_view line = text_.substr(pos_, end - pos_);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim_blank(line).empty() && line.front() != '#') return false;
        pos_ = end;
        consume_eol();
        return true;
    }

    Record record() {
        Record rec;
        rec.line = line_;
        while (true) {
            rec.fields.push_back(field(rec.fields.size() + 1));
            if (at_eol()) {
                consume_eol();
                return rec;
            }
            ++pos_;  // ','
        }
    }

    Field field(std::size_t column) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '"') return quoted_field(column);

        pos_ = start;
        while (pos_ < text_.size() && text_[pos_] != ',' && !at_eol()) {
            if (text_[pos_] == '"') fail(column, "stray quote inside unquoted field");
            ++pos_;
        }
        return {std::string(trim_blank(text_.substr(start, pos_ - start))), false};
    }

    Field quoted_field(std::size_t column) {
        const std::size_t open_line = line_;
        ++pos_;
        Field f{{}, true};
        while (true) {
            if (pos_ >= text_.size()) {
                throw Error(Errc::ParseError,
                            "unterminated quoted field opened on line " + std::to_string(open_line),
                            Location{data_row(), column});
            }
            char c = text_[pos_++];
            if (c == '"') {
                if (pos_ < text_.size() && text_[pos_] == '"') {
                    f.text.push_back('"');
                    ++pos_;
                    continue;
                }
                break;
            }
            if (c == '\n') ++line_;
            f.text.push_back(c);
        }
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
        if (pos_ < text_.size() && text_[pos_] != ',' && !at_eol()) fail(column, "text after closing quote");
        return f;
    }

    [[noreturn]] void fail(std::size_t column, const std::string& what) const {
        throw Error(Errc::ParseError, "line " + std::to_string(line_) + " column " + std::to_string(column) + ": " + what,
                    Location{data_row(), column});
    }

    // 0 while inside the header record.
    std::size_t data_row() const { return records_ + 1 > header_rows_ ? records_ + 1 - header_rows_ : 0; }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t records_ = 0;
    std::size_t header_rows_ = 0;
};

}  // namespace

Dataset parse_csv(std::string_view text, bool has_header) {
    std::vector<Record> records = CsvTokenizer(text, has_header).records();
    if (records.empty()) throw Error(Errc::EmptyFile, "no rows found");

    std::vector<NumericColumn> columns;
    std::size_t first_data = 0;
    if (has_header) {
        for (const Field& f : records.front().fields) columns.push_back({f.text, {}});
        first_data = 1;
    } else {
        for (std::size_t i = 0; i < records.front().fields.size(); ++i) columns.push_back({"col" + std::to_string(i), {}});
    }
    if (records.size() == first_data) throw Error(Errc::EmptyFile, "header present but no data rows");

    const std::size_t width = columns.size();
    for (auto& c : columns) c.values.reserve(records.size() - first_data);

    for (std::size_t r = first_data; r < records.size(); ++r) {
        const Record& rec = records[r];
        const std::size_t row = r - first_data + 1;
        if (rec.fields.size() != width) {
            throw Error(Errc::RaggedRows,
                        "row " + std::to_string(row) + " (line " + std::to_string(rec.line) + ") has " +
                            std::to_string(rec.fields.size()) + " fields, expected " + std::to_string(width),
                        Location{row, std::min(rec.fields.size(), width) + 1});
        }
        for (std::size_t c = 0; c < width; ++c) {
            auto value = numfmt::parse(rec.fields[c].text);
            if (!value) {
                throw Error(Errc::ParseError,
                            "row " + std::to_string(row) + " (line " + std::to_string(rec.line) + ") column " +
                                std::to_string(c + 1) + " ('" + columns[c].name + "'): '" + rec.fields[c].text +
                                "' is not a finite number",
                            Location{row, c + 1});
            }
            columns[c].values.push_back(*value);
        }
    }
    return Dataset(std::move(columns));
}

Dataset read_csv(const fs::path& path, bool has_header) {
    std::string text = read_text(path);
    try {
        return parse_csv(text, has_header);
    } catch (const Error& e) {
        throw e.annotated(path.string());
    }
}

// --- CSV writing -----------------------------------------------------------

namespace {

std::string csv_name(const std::string& name) {
    const bool needs_quotes = name.empty() || name.front() == '#' || name.front() == ' ' || name.front() == '\t' ||
                              name.back() == ' ' || name.back() == '\t' ||
                              name.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string format_csv(const Dataset& ds, std::span<const std::optional<int>> decimals) {
    const auto& cols = ds.columns();
    if (decimals.size() != cols.size()) {
        throw Error(Errc::LengthMismatch, "formatting needs one decimals entry per column");
    }
    std::string out;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (c) out.push_back(',');
        out += csv_name(cols[c].name);
    }
    out.push_back('\n');
    for (std::size_t r = 0; r < ds.row_count(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) out.push_back(',');
            const double v = cols[c].values[r];
            out += decimals[c] ? numfmt::fixed(v, *decimals[c]) : numfmt::shortest(v);
        }
        out.push_back('\n');
    }
    return out;
}

void write_csv(const Dataset& ds, const fs::path& path, std::span<const std::optional<int>> decimals) {
    write_text(path, format_csv(ds, decimals));
}

void write_csv(const Dataset& ds, const fs::path& path, std::optional<int> decimals) {
    std::vector<std::optional<int>> per_column(ds.column_count(), decimals);
    write_csv(ds, path, per_column);
}

// --- Sidecar ---------------------------------------------------------------

namespace {

constexpr std::string_view kMagic = "normkit-meta v";

std::string escape_line(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string unescape_line(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out.push_back(s[i]);
            continue;
        }
        if (++i >= s.size()) throw Error(Errc::FormatError, "dangling escape in column name");
        switch (s[i]) {
            case '\\': out.push_back('\\'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            default: throw Error(Errc::FormatError, std::string("unknown escape \\") + s[i]);
        }
    }
    return out;
}

template <class Int>
Int parse_int(std::string_view text, std::string_view what) {
    Int value{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
        throw Error(Errc::FormatError, std::string(what) + ": '" + std::string(text) + "' is not an integer");
    }
    return value;
}

double parse_real(std::string_view text, std::string_view what) {
    auto v = numfmt::parse(text);
    if (!v) throw Error(Errc::FormatError, std::string(what) + ": '" + std::string(text) + "' is not a finite number");
    return *v;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

// Reads the key=value lines of a scalar section; every key must appear once.
std::map<std::string, std::string_view> key_values(std::span<const std::string_view> lines,
                                                   std::initializer_list<std::string_view> keys) {
    std::map<std::string, std::string_view> out;
    for (std::string_view line : lines) {
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw Error(Errc::FormatError, "expected key=value, got '" + std::string(line) + "'");
        std::string key(line.substr(0, eq));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw Error(Errc::FormatError, "unexpected key '" + key + "'");
        }
        if (!out.emplace(key, line.substr(eq + 1)).second) throw Error(Errc::FormatError, "repeated key '" + key + "'");
    }
    for (std::string_view k : keys) {
        if (!out.count(std::string(k))) throw Error(Errc::FormatError, "missing key '" + std::string(k) + "'");
    }
    return out;
}

ParamSet parse_block(Method method, std::span<const std::string_view> lines) {
    switch (method) {
        case Method::MinMax: {
            auto kv = key_values(lines, {"src_min", "src_max", "target_low", "target_high"});
            return MinMaxParams{parse_real(kv["src_min"], "src_min"), parse_real(kv["src_max"], "src_max"),
                                parse_real(kv["target_low"], "target_low"),
                                parse_real(kv["target_high"], "target_high")};
        }
        case Method::ZScore: {
            auto kv = key_values(lines, {"mean", "std", "n"});
            return ZScoreParams{parse_real(kv["mean"], "mean"), parse_real(kv["std"], "std"),
                                parse_int<std::uint64_t>(kv["n"], "n")};
        }
        case Method::Decimal: {
            auto kv = key_values(lines, {"j"});
            return DecimalScalingParams{parse_int<int>(kv["j"], "j")};
        }
        case Method::IntScale: {
            if (lines.empty() || !lines.front().starts_with("count=")) {
                throw Error(Errc::FormatError, "intscale block must start with count=");
            }
            const auto count = parse_int<std::size_t>(lines.front().substr(6), "count");
            if (lines.size() - 1 != count) {
                throw Error(Errc::FormatError, "count=" + std::to_string(count) + " but " +
                                                   std::to_string(lines.size() - 1) + " records follow");
            }
            IntegerScalingMetadata meta;
            meta.records.reserve(count);
            for (std::size_t i = 0; i < count; ++i) {
                std::string_view line = lines[i + 1];
                std::vector<std::string_view> parts;
                while (true) {
                    auto comma = line.find(',');
                    parts.push_back(line.substr(0, comma));
                    if (comma == std::string_view::npos) break;
                    line.remove_prefix(comma + 1);
                }
                if (parts.size() != 4) throw Error(Errc::FormatError, "record " + std::to_string(i) + " needs 4 fields");
                if (parse_int<std::size_t>(parts[0], "index") != i) {
                    throw Error(Errc::FormatError, "record indices must run 0.." + std::to_string(count - 1));
                }
                meta.records.push_back({parse_int<int>(parts[1], "sign"), parse_int<int>(parts[2], "n_digits"),
                                        parse_int<int>(parts[3], "leading")});
            }
            return meta;
        }
    }
    throw Error(Errc::FormatError, "unhandled method");
}

}  // namespace

std::string format_sidecar(const ParamSidecar& sc) {
    std::ostringstream out;
    out << kMagic << kSidecarVersion << '\n';
    out << "column=" << escape_line(sc.column) << '\n';
    out << '[' << to_string(sc.method()) << "]\n";
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MinMaxParams>) {
                out << "src_min=" << numfmt::shortest(p.src_min) << '\n'
                    << "src_max=" << numfmt::shortest(p.src_max) << '\n'
                    << "target_low=" << numfmt::shortest(p.target_low) << '\n'
                    << "target_high=" << numfmt::shortest(p.target_high) << '\n';
            } else if constexpr (std::is_same_v<P, ZScoreParams>) {
                out << "mean=" << numfmt::shortest(p.mean) << '\n'
                    << "std=" << numfmt::shortest(p.std) << '\n'
                    << "n=" << p.n << '\n';
            } else if constexpr (std::is_same_v<P, DecimalScalingParams>) {
                out << "j=" << p.j << '\n';
            } else {
                out << "count=" << p.records.size() << '\n';
                for (std::size_t i = 0; i < p.records.size(); ++i) {
                    const DigitRecord& r = p.records[i];
                    out << i << ',' << r.sign << ',' << r.n_digits << ',' << r.leading << '\n';
                }
            }
        },
        sc.params);
    return out.str();
}

ParamSidecar parse_sidecar(std::string_view text) {
    std::vector<std::string_view> lines = split_lines(text);
    if (lines.empty() || !lines.front().starts_with(kMagic)) {
        throw Error(Errc::FormatError, "missing 'normkit-meta v1' header");
    }
    const std::string_view version_text = lines.front().substr(kMagic.size());
    const int version = parse_int<int>(version_text, "format version");
    if (version != kSidecarVersion) {
        throw Error(Errc::VersionError, "format version " + std::to_string(version) + " is not supported (expected " +
                                            std::to_string(kSidecarVersion) + ")");
    }
    if (lines.size() < 3 || !lines[1].starts_with("column=")) {
        throw Error(Errc::FormatError, "second line must be column=<name>");
    }
    ParamSidecar sc;
    sc.column = unescape_line(lines[1].substr(7));

    std::string_view section = lines[2];
    if (section.size() < 3 || section.front() != '[' || section.back() != ']') {
        throw Error(Errc::FormatError, "expected a [method] section header, got '" + std::string(section) + "'");
    }
    Method method{};
    try {
        method = parse_method(section.substr(1, section.size() - 2));
    } catch (const Error& e) {
        throw Error(Errc::FormatError, e.detail());
    }
    sc.params = parse_block(method, std::span(lines).subspan(3));
    return sc;
}

void save_sidecar(const ParamSidecar& sc, const fs::path& path) { write_text(path, format_sidecar(sc)); }

ParamSidecar load_sidecar(const fs::path& path) {
    std::string text = read_text(path);
    try {
        return parse_sidecar(text);
    } catch (const Error& e) {
        throw e.annotated(path.string());
    }
}

}  // namespace normkit
