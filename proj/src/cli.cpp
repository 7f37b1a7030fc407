#include "oseq/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oseq/bounds.hpp"
#include "oseq/errors.hpp"
#include "oseq/macaulay.hpp"
#include "oseq/partition.hpp"

namespace oseq::cli {

namespace {

using Json = nlohmann::ordered_json;

class MalformedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::vector<std::int64_t> parse_sequence(std::string_view text) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        std::string_view token = text.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw MalformedInput("malformed sequence element '" + std::string(token) + "'");
        }
        out.push_back(value);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string join(const std::vector<std::int64_t>& values, char sep) {
    std::string s;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) {
            s += sep;
        }
        s += std::to_string(values[k]);
    }
    return s;
}

std::string join(std::span<const std::uint64_t> values, char sep) {
    return join(std::vector<std::int64_t>(values.begin(), values.end()), sep);
}

Json sequence_json(std::span<const std::uint64_t> values) {
    Json arr = Json::array();
    for (const auto v : values) {
        arr.push_back(v);
    }
    return arr;
}

// Right-aligned text columns.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << row[c];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) {
        emit(row);
    }
}

std::string fixed(double value, int digits = 6) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << value;
    return s.str();
}

CensusOptions census_options(const RunConfig& config) {
    CensusOptions options;
    options.ceiling = config.ceiling;
    options.threads = config.threads;
    return options;
}

CensusTable census_with_cache(const RunConfig& config, std::size_t max_n, std::ostream& err) {
    const auto path = resolve_cache_path(config);
    CensusBuild build = build_census(max_n, census_options(config), path);
    if (build.cache_status == CacheStatus::rejected) {
        err << "warning: ignoring census cache " << path->string() << " ("
            << build.cache_message << "); rebuilt from scratch\n";
    } else if (!build.cache_message.empty()) {
        err << "warning: census cache: " << build.cache_message << '\n';
    }
    return std::move(build.table);
}

std::size_t required(const std::optional<std::size_t>& value, const char* flag) {
    if (!value) {
        throw MalformedInput(std::string("missing required flag ") + flag);
    }
    if (*value == 0) {
        throw MalformedInput(std::string(flag) + " must be positive");
    }
    return *value;
}

void report_violation(std::ostream& out, const RunConfig& config,
                      const std::vector<std::int64_t>& seq, const ValidityReport& report) {
    const std::string reason(report.reason ? to_string(*report.reason) : "");
    switch (config.format) {
    case OutputFormat::json: {
        Json j;
        Json arr = Json::array();
        for (const auto v : seq) {
            arr.push_back(v);
        }
        j["sequence"] = std::move(arr);
        j["valid"] = report.valid;
        j["reason"] = report.valid ? Json(nullptr) : Json(reason);
        j["first_violation"] = report.first_violation ? Json(*report.first_violation) : Json(nullptr);
        out << j.dump() << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "sequence,valid,reason,first_violation\n"
            << join(seq, ' ') << ',' << (report.valid ? "true" : "false") << ',' << reason << ','
            << (report.first_violation ? std::to_string(*report.first_violation) : "") << '\n';
        break;
    case OutputFormat::table:
        if (report.valid) {
            long long total = 0;
            for (const auto v : seq) {
                total += v;
            }
            out << "valid O-sequence (" << join(seq, ',') << "): n = " << total
                << ", e = " << seq.size() - 1 << '\n';
        } else {
            const std::size_t at = *report.first_violation;
            out << "invalid: " << reason << " at index " << at;
            if (*report.reason == ViolationReason::growth_violation) {
                const auto bound = pseudopower(static_cast<std::uint64_t>(seq[at]),
                                               static_cast<std::uint32_t>(at));
                out << " (h_" << at + 1 << " = " << seq[at + 1] << " exceeds " << seq[at] << "^<"
                    << at << "> = " << to_decimal(bound) << ')';
            }
            out << '\n';
        }
        break;
    }
}

int run_check(const RunConfig& config, std::ostream& out) {
    if (!config.sequence) {
        throw MalformedInput("check requires a comma-separated sequence");
    }
    const auto seq = parse_sequence(*config.sequence);
    const ValidityReport report = is_o_sequence(seq);
    report_violation(out, config, seq, report);
    return report.valid ? kExitOk : kExitInvalidSequence;
}

int run_count(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::size_t n = required(config.n, "--n");
    const CensusTable census = census_with_cache(config, n, err);
    const std::string value = to_decimal(census.at(n));
    switch (config.format) {
    case OutputFormat::json: {
        Json j;
        j["n"] = n;
        j["L"] = value;
        out << j.dump() << '\n';
        break;
    }
    case OutputFormat::csv: out << "n,L\n" << n << ',' << value << '\n'; break;
    case OutputFormat::table: out << "L(" << n << ") = " << value << '\n'; break;
    }
    return kExitOk;
}

int run_enumerate(const RunConfig& config, std::ostream& out) {
    const std::size_t n = required(config.n, "--n");
    auto stream = enumerate_osequences(n, config.cap, census_options(config));
    Json sequences = Json::array();
    std::uint64_t emitted = 0;
    if (config.format == OutputFormat::csv) {
        out << "index,e,sequence\n";
    }
    while (auto h = stream.next()) {
        switch (config.format) {
        case OutputFormat::json: sequences.push_back(sequence_json(h->entries())); break;
        case OutputFormat::csv:
            out << emitted << ',' << h->top_degree() << ',' << join(h->entries(), ' ') << '\n';
            break;
        case OutputFormat::table: out << join(h->entries(), ',') << '\n'; break;
        }
        ++emitted;
    }
    if (config.format == OutputFormat::json) {
        Json j;
        j["n"] = n;
        j["count"] = std::to_string(emitted);
        j["sequences"] = std::move(sequences);
        out << j.dump() << '\n';
    }
    return kExitOk;
}

int run_census(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::size_t max_n = required(config.max_n, "--max-n");
    const CensusTable census = census_with_cache(config, max_n, err);
    switch (config.format) {
    case OutputFormat::json: {
        Json records = Json::array();
        for (const auto& [n, value] : census.records) {
            Json row;
            row["n"] = n;
            row["L"] = to_decimal(value);
            records.push_back(std::move(row));
        }
        Json j;
        j["max_n"] = max_n;
        j["records"] = std::move(records);
        out << j.dump() << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "n,L\n";
        for (const auto& [n, value] : census.records) {
            out << n << ',' << to_decimal(value) << '\n';
        }
        break;
    case OutputFormat::table: {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [n, value] : census.records) {
            rows.push_back({std::to_string(n), to_decimal(value)});
        }
        print_table(out, {"n", "L(n)"}, rows);
        break;
    }
    }
    return kExitOk;
}

int run_bounds(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::size_t max_n = required(config.max_n, "--max-n");
    const CensusTable census = census_with_cache(config, max_n, err);
    const PartitionTable partitions = build_partition_table(max_n);
    const BoundsReport report = build_bounds_report(census, partitions);
    switch (config.format) {
    case OutputFormat::json: {
        Json j;
        j["max_n"] = max_n;
        Json body = to_json(report);
        j["records"] = std::move(body["records"]);
        j["envelope"] = std::move(body["envelope"]);
        out << j.dump() << '\n';
        break;
    }
    case OutputFormat::csv: write_bounds_csv(out, report); break;
    case OutputFormat::table: {
        std::vector<std::vector<std::string>> rows;
        for (const auto& rec : report.records) {
            rows.push_back({std::to_string(rec.n), to_decimal(rec.count), to_decimal(rec.lower),
                            fixed(rec.log_count), fixed(rec.log_upper), fixed(rec.c1_emp),
                            rec.c2_emp ? fixed(*rec.c2_emp) : "-",
                            rec.lower_holds && rec.upper_holds ? "ok" : "FAIL"});
        }
        print_table(out, {"n", "L(n)", "p(n-1)", "ln L", "ln upper", "c1_emp", "c2_emp", "bounds"},
                    rows);
        if (report.c1_min && report.c2_max) {
            out << "envelope over n >= 3: min c1_emp = " << fixed(*report.c1_min)
                << ", max c2_emp = " << fixed(*report.c2_max) << '\n';
        }
        if (report.first_strict_lower) {
            out << "first n with L(n) > p(n-1): " << *report.first_strict_lower << '\n';
        }
        break;
    }
    }
    return kExitOk;
}

int run_partitions(const RunConfig& config, std::ostream& out) {
    if (!config.max_n) {
        throw MalformedInput("missing required flag --max-n");
    }
    const std::size_t max_n = *config.max_n;
    const PartitionTable table = build_partition_table(max_n);
    const auto scale = config.log_space ? EstimateScale::log : EstimateScale::linear;
    std::vector<PqComparison> pq;
    if (max_n >= 1) {
        pq = check_pq_inequality(table);
    }
    std::vector<AsymptoticEstimate> hr;
    for (std::size_t n = 1; n <= max_n; ++n) {
        hr.push_back(hardy_ramanujan(n, &table, scale));
    }
    switch (config.format) {
    case OutputFormat::csv: write_partition_csv(out, table); break;
    case OutputFormat::json: {
        Json records = Json::array();
        for (std::size_t n = 0; n <= max_n; ++n) {
            Json row;
            row["n"] = n;
            row["p"] = to_decimal(table.p(n));
            row["q"] = to_decimal(table.q(n));
            if (n >= 1) {
                const auto& est = hr[n - 1];
                row["hr_log_estimate"] = est.log_estimate;
                row["hr_estimate"] = est.estimate ? Json(*est.estimate) : Json(nullptr);
                row["hr_ratio"] = *est.ratio;
                row["pq_strict"] = pq[n - 1].strict;
            }
            records.push_back(std::move(row));
        }
        Json j;
        j["max_n"] = max_n;
        j["log_space"] = config.log_space;
        j["records"] = std::move(records);
        out << j.dump() << '\n';
        break;
    }
    case OutputFormat::table: {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t n = 0; n <= max_n; ++n) {
            std::vector<std::string> row{std::to_string(n), to_decimal(table.p(n)),
                                         to_decimal(table.q(n)), "-", "-"};
            if (n >= 1) {
                const auto& est = hr[n - 1];
                row[3] = config.log_space ? fixed(est.log_estimate) : fixed(*est.estimate, 3);
                row[4] = fixed(*est.ratio);
            }
            rows.push_back(std::move(row));
        }
        print_table(out, {"n", "p(n)", "q(n)", config.log_space ? "ln HR(n)" : "HR(n)",
                          "p/HR"},
                    rows);
        break;
    }
    }
    return kExitOk;
}

Json sweep_json(const RemarkSweep& s) {
    Json row;
    row["n"] = s.n;
    row["sequences"] = s.sequences;
    row["profiled"] = s.profiled;
    row["t_violations"] = s.t_violations;
    row["alpha_violations"] = s.alpha_violations;
    row["tail_failures"] = s.tail_failures;
    row["prefix_failures"] = s.prefix_failures;
    return row;
}

int run_remark(const RunConfig& config, std::ostream& out) {
    if (config.sequence) {
        const auto seq = parse_sequence(*config.sequence);
        const ValidityReport validity = is_o_sequence(seq);
        if (!validity.valid) {
            report_violation(out, config, seq, validity);
            return kExitInvalidSequence;
        }
        const HVector h(std::vector<std::uint64_t>(seq.begin(), seq.end()));
        const RemarkReport report = remark_profile(h);
        switch (config.format) {
        case OutputFormat::json: {
            Json decompositions = Json::array();
            for (const auto& e : report.entries) {
                Json row;
                row["degree"] = e.decomposition.degree;
                row["h"] = e.value;
                row["t"] = e.decomposition.t;
                row["alpha"] = e.decomposition.alpha;
                decompositions.push_back(std::move(row));
            }
            Json j;
            j["sequence"] = sequence_json(h.entries());
            j["critical_index"] = report.critical_index;
            j["first_applicable_degree"] = report.first_applicable_degree
                                               ? Json(*report.first_applicable_degree)
                                               : Json(nullptr);
            j["t_monotone"] = report.t_monotone;
            j["alpha_monotone_within_t_plateaus"] = report.alpha_monotone_within_t_plateaus;
            j["decompositions"] = std::move(decompositions);
            out << j.dump() << '\n';
            break;
        }
        case OutputFormat::csv:
            out << "degree,h,t,alpha\n";
            for (const auto& e : report.entries) {
                out << e.decomposition.degree << ',' << e.value << ',' << e.decomposition.t << ','
                    << e.decomposition.alpha << '\n';
            }
            break;
        case OutputFormat::table: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& e : report.entries) {
                rows.push_back({std::to_string(e.decomposition.degree), std::to_string(e.value),
                                std::to_string(e.decomposition.t),
                                std::to_string(e.decomposition.alpha)});
            }
            out << "critical index j = " << report.critical_index << '\n';
            print_table(out, {"i", "h_i", "t_i", "alpha_i"}, rows);
            out << "t nonincreasing: " << (report.t_monotone ? "yes" : "no")
                << "; alpha nonincreasing on t plateaus: "
                << (report.alpha_monotone_within_t_plateaus ? "yes" : "no") << '\n';
            break;
        }
        }
        return kExitOk;
    }

    std::size_t lo = 0;
    std::size_t hi = 0;
    if (config.n) {
        lo = hi = required(config.n, "--n");
    } else if (config.max_n) {
        lo = 1;
        hi = required(config.max_n, "--max-n");
    } else {
        throw MalformedInput("remark requires a sequence, --n, or --max-n");
    }
    std::vector<RemarkSweep> sweeps;
    for (std::size_t n = lo; n <= hi; ++n) {
        sweeps.push_back(remark_sweep(n, config.cap, census_options(config)));
        if (sweeps.back().tail_failures != 0 || sweeps.back().prefix_failures != 0) {
            throw InvariantViolation("proof-step invariant failed on the sweep at n = " +
                                     std::to_string(n));
        }
    }
    switch (config.format) {
    case OutputFormat::json: {
        Json records = Json::array();
        for (const auto& s : sweeps) {
            records.push_back(sweep_json(s));
        }
        Json j;
        j["records"] = std::move(records);
        out << j.dump() << '\n';
        break;
    }
    case OutputFormat::csv:
        out << "n,sequences,profiled,t_violations,alpha_violations\n";
        for (const auto& s : sweeps) {
            out << s.n << ',' << s.sequences << ',' << s.profiled << ',' << s.t_violations << ','
                << s.alpha_violations << '\n';
        }
        break;
    case OutputFormat::table: {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : sweeps) {
            const double denom = s.profiled ? static_cast<double>(s.profiled) : 1.0;
            rows.push_back({std::to_string(s.n), std::to_string(s.sequences),
                            std::to_string(s.profiled), std::to_string(s.t_violations),
                            std::to_string(s.alpha_violations),
                            fixed(static_cast<double>(s.t_violations + s.alpha_violations) / denom,
                                  4)});
        }
        print_table(out, {"n", "sequences", "profiled", "t_viol", "alpha_viol", "rate"}, rows);
        break;
    }
    }
    return kExitOk;
}

} // namespace

std::optional<std::filesystem::path> resolve_cache_path(const RunConfig& config) {
    if (config.no_cache) {
        return std::nullopt;
    }
    if (config.cache_path) {
        return config.cache_path;
    }
    if (const char* env = std::getenv("OSEQ_CACHE"); env && *env) {
        return std::filesystem::path(env);
    }
    if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
        return std::filesystem::path(xdg) / "oseq" / "census.cache";
    }
    if (const char* home = std::getenv("HOME"); home && *home) {
        return std::filesystem::path(home) / ".cache" / "oseq" / "census.cache";
    }
    return std::nullopt;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
        case Command::check: return run_check(config, out);
        case Command::count: return run_count(config, out, err);
        case Command::enumerate: return run_enumerate(config, out);
        case Command::census: return run_census(config, out, err);
        case Command::bounds: return run_bounds(config, out, err);
        case Command::partitions: return run_partitions(config, out);
        case Command::remark: return run_remark(config, out);
        }
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const ResourceLimitError& e) {
        err << "refused: " << e.what() << '\n';
        return kExitRefused;
    } catch (const OverflowError& e) {
        err << "refused: " << e.what() << " (pass --log-space)\n";
        return kExitRefused;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitRefused;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out,
                                std::ostream& err) {
    CLI::App app{"Count, enumerate and bound O-sequences (Hilbert functions of standard "
                 "graded artinian algebras)",
                 "oseq"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "table";
    std::string cache;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_option("--cache", cache, "Census cache file (overrides $OSEQ_CACHE)");
        sub->add_flag("--no-cache", config.no_cache, "Do not read or write the census cache");
        sub->add_option("--cap", config.cap, "Maximum number of streamed sequences")
            ->check(CLI::PositiveNumber);
        sub->add_option("--ceiling", config.ceiling, "Largest n the census will compute")
            ->check(CLI::PositiveNumber);
        sub->add_option("--threads", config.threads, "Worker threads for counting")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--log-space", config.log_space,
                      "Report Hardy-Ramanujan estimates as natural logarithms");
    };

    struct Spec {
        const char* name;
        const char* help;
        Command command;
    };
    const Spec specs[] = {
        {"check", "Test a comma-separated sequence against Macaulay's condition", Command::check},
        {"count", "Exact L(n)", Command::count},
        {"enumerate", "List every O-sequence of sum n in lexicographic order", Command::enumerate},
        {"census", "Table of L(1..max_n)", Command::census},
        {"bounds", "Check p(n-1) <= L(n) and the log-space upper bound for n <= max_n",
         Command::bounds},
        {"partitions", "Table of p(n), q(n) and the Hardy-Ramanujan estimate", Command::partitions},
        {"remark", "Staircase decomposition diagnostics", Command::remark},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    for (const auto& spec : specs) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        common(sub);
        subs.emplace_back(sub, spec.command);
        if (spec.command == Command::check || spec.command == Command::remark) {
            auto* opt = sub->add_option("sequence", config.sequence, "e.g. 1,3,4,4");
            if (spec.command == Command::check) {
                opt->required();
            }
        }
        if (spec.command == Command::count || spec.command == Command::enumerate ||
            spec.command == Command::remark) {
            auto* opt = sub->add_option("--n", config.n, "Sum of the sequence");
            if (spec.command != Command::remark) {
                opt->required();
            }
        }
        if (spec.command == Command::census || spec.command == Command::bounds ||
            spec.command == Command::partitions || spec.command == Command::remark) {
            auto* opt = sub->add_option("--max-n", config.max_n, "Largest n");
            if (spec.command != Command::remark) {
                opt->required();
            }
        }
    }

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        outcome.exit_code = code == 0 ? kExitOk : kExitRefused;
        return outcome;
    }
    for (const auto& [sub, command] : subs) {
        if (sub->parsed()) {
            config.command = command;
        }
    }
    config.format = format == "csv"    ? OutputFormat::csv
                    : format == "json" ? OutputFormat::json
                                       : OutputFormat::table;
    if (!cache.empty()) {
        config.cache_path = cache;
    }
    outcome.config = std::move(config);
    return outcome;
}

int main_entry(int argc, const char* const* argv) {
    ParseOutcome parsed = parse_command_line(argc, argv, std::cout, std::cerr);
    if (!parsed.config) {
        return parsed.exit_code;
    }
    return run(*parsed.config, std::cout, std::cerr);
}

} // namespace oseq::cli
