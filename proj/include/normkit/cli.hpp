#pragma once

// `normkit` command line: normalize, denormalize, compare, stats.
// Exit codes: 0 success, 1 data or processing error, 2 usage error.

#include "normkit/normcore.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace normkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
    std::string subcommand;
    std::filesystem::path input;
    std::filesystem::path output;
    std::vector<std::string> columns;  // names or zero-based indices
    std::vector<Method> methods;       // one entry for normalize/denormalize
    Boundary boundary;
    std::optional<int> decimals;       // nullopt: shortest round-trip text
    std::optional<std::filesystem::path> meta;
    std::optional<std::filesystem::path> table;
    std::optional<std::filesystem::path> csv;
    std::optional<std::filesystem::path> plot;
    std::string title;
    bool has_header = true;
};

/// Each command returns an exit status and writes diagnostics to `err`.
/// Library errors are reported, never propagated.
int cmd_normalize(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_denormalize(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_stats(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and dispatches.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Sidecar location used when --meta is absent: the output path with its
/// extension replaced by `.normmeta`, or `<stem>.<column>.normmeta` when
/// several columns are normalized at once.
std::filesystem::path default_sidecar_path(const std::filesystem::path& data_path,
                                           const std::optional<std::string>& column = std::nullopt);

}  // namespace normkit::cli
