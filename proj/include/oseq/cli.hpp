#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "oseq/census.hpp"

namespace oseq::cli {

enum class Command { check, count, enumerate, census, bounds, partitions, remark };
enum class OutputFormat { table, csv, json };

enum ExitStatus : int {
    kExitOk = 0,
    kExitInvalidSequence = 1,
    kExitRefused = 2, // resource limits and malformed input
    kExitInternal = 3 // a theorem-backed invariant failed
};

struct RunConfig {
    Command command = Command::check;
    std::optional<std::size_t> n;
    std::optional<std::size_t> max_n;
    std::optional<std::string> sequence; // comma-separated, for check and remark
    OutputFormat format = OutputFormat::table;
    std::optional<std::filesystem::path> cache_path;
    bool no_cache = false;
    std::uint64_t cap = kDefaultStreamCap;
    std::size_t ceiling = kDefaultCensusCeiling;
    unsigned threads = 1;
    bool log_space = false;
};

/// --cache, then $OSEQ_CACHE, then $XDG_CACHE_HOME/oseq or ~/.cache/oseq.
std::optional<std::filesystem::path> resolve_cache_path(const RunConfig& config);

/// Executes one command. Payload goes to out, warnings and errors to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig. On --help or a parse error the returned
/// config is empty and exit_code holds the status to return.
struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;
};
ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                std::ostream& err);

int main_entry(int argc, const char* const* argv);

} // namespace oseq::cli
