#pragma once

// CSV ingestion/emission for numeric tables and the `.normmeta` sidecar that
// carries fitted parameters between a normalize run and a later scale-up.

#include "normkit/normcore.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace normkit {

/// Equal-length numeric columns with unique names.
class Dataset {
public:
    Dataset() = default;
    /// Throws FormatError on duplicate names or unequal lengths.
    explicit Dataset(std::vector<NumericColumn> columns);

    const std::vector<NumericColumn>& columns() const noexcept { return columns_; }
    std::vector<std::string> names() const;
    std::size_t row_count() const noexcept { return columns_.empty() ? 0 : columns_.front().values.size(); }
    std::size_t column_count() const noexcept { return columns_.size(); }

    /// Resolves a header name first, then a zero-based index.
    /// Throws UnknownColumn.
    const NumericColumn& column(std::string_view selector) const;
    std::size_t index_of(std::string_view selector) const;

    void add_column(NumericColumn col);

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<NumericColumn> columns_;
};

/// Reads a comma-separated file. Blank lines and lines starting with '#' are
/// skipped; quoted fields follow RFC 4180. Without a header, columns are
/// named col0, col1, ...
Dataset read_csv(const std::filesystem::path& path, bool has_header = true);
Dataset parse_csv(std::string_view text, bool has_header = true);

/// Header row then data rows, '\n' line endings. `decimals` rounds every
/// value half away from zero; without it values use shortest round-trip text.
void write_csv(const Dataset& ds, const std::filesystem::path& path, std::optional<int> decimals = std::nullopt);
/// Per-column variant; `decimals.size()` must equal the column count.
void write_csv(const Dataset& ds, const std::filesystem::path& path, std::span<const std::optional<int>> decimals);
std::string format_csv(const Dataset& ds, std::span<const std::optional<int>> decimals);

// --- Sidecar ---------------------------------------------------------------

inline constexpr int kSidecarVersion = 1;
inline constexpr std::string_view kSidecarExtension = ".normmeta";

struct ParamSidecar {
    std::string column;  // source column name
    ParamSet params;

    Method method() const noexcept { return method_of(params); }

    friend bool operator==(const ParamSidecar&, const ParamSidecar&) = default;
};

std::string format_sidecar(const ParamSidecar& sc);
/// Throws VersionError for a well-formed header with an unsupported version
/// and FormatError for anything else malformed.
ParamSidecar parse_sidecar(std::string_view text);

void save_sidecar(const ParamSidecar& sc, const std::filesystem::path& path);
ParamSidecar load_sidecar(const std::filesystem::path& path);

}  // namespace normkit
