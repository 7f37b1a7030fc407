#include "oseq/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

#include "oseq/errors.hpp"

namespace oseq {

std::size_t critical_index(const HVector& h) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (h[i] <= i) {
            return i;
        }
    }
    return h.size();
}

bool verify_tail_partition(const HVector& h) {
    for (std::size_t i = critical_index(h); i + 1 < h.size(); ++i) {
        if (h[i] < h[i + 1]) {
            return false;
        }
    }
    return true;
}

bool check_prefix_bound(const HVector& h) {
    const auto j = static_cast<std::uint64_t>(critical_index(h));
    return j * j < 2 * h.total();
}

double log_upper_bound(std::size_t n, const BigInt& p_n) {
    const double x = static_cast<double>(n);
    const double root = std::sqrt(2.0 * x);
    return std::log(root) + natural_log(p_n) + root * std::log(x);
}

BoundsReport build_bounds_report(const CensusTable& census, const PartitionTable& partitions) {
    const std::size_t top = census.max_n();
    if (top == 0 || census.records.size() != top) {
        throw std::invalid_argument("build_bounds_report: census must cover 1..N contiguously");
    }
    if (partitions.limit() < top) {
        throw std::invalid_argument("build_bounds_report: partition table shorter than census");
    }
    BoundsReport report;
    report.records.reserve(top);
    for (const auto& [n, count] : census.records) {
        BoundsRecord rec;
        rec.n = n;
        rec.count = count;
        rec.lower = partitions.p(n - 1);
        rec.log_count = natural_log(count);
        rec.log_upper = log_upper_bound(n, partitions.p(n));
        const double x = static_cast<double>(n);
        rec.c1_emp = rec.log_count / std::sqrt(x);
        if (n >= 2) {
            rec.c2_emp = rec.log_count / (std::sqrt(x) * std::log(x));
        }
        rec.lower_holds = rec.lower <= count;
        rec.upper_holds =
            rec.log_count <= rec.log_upper + kUpperBoundSlack * std::fabs(rec.log_upper);
        if (!rec.lower_holds) {
            throw InvariantViolation("lower bound p(n-1) <= L(n) fails at n = " +
                                     std::to_string(n));
        }
        if (!rec.upper_holds) {
            throw InvariantViolation("upper bound on ln L(n) fails at n = " + std::to_string(n));
        }
        if (n >= 3) {
            if (!(rec.c1_emp > 0.0) || !(*rec.c2_emp > 0.0)) {
                throw InvariantViolation("empirical constants not positive at n = " +
                                         std::to_string(n));
            }
            if (!report.c1_min || rec.c1_emp < *report.c1_min) {
                report.c1_min = rec.c1_emp;
            }
            if (!report.c2_max || *rec.c2_emp > *report.c2_max) {
                report.c2_max = *rec.c2_emp;
            }
        }
        if (!report.first_strict_lower && rec.lower < count) {
            report.first_strict_lower = n;
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

void write_bounds_csv(std::ostream& out, const BoundsReport& report) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << "n,L,p_lower,log_upper,c1_emp,c2_emp\n" << std::fixed << std::setprecision(12);
    for (const auto& rec : report.records) {
        out << rec.n << ',' << to_decimal(rec.count) << ',' << to_decimal(rec.lower) << ','
            << rec.log_upper << ',' << rec.c1_emp << ',';
        if (rec.c2_emp) {
            out << *rec.c2_emp;
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

nlohmann::ordered_json to_json(const BoundsReport& report) {
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& rec : report.records) {
        nlohmann::ordered_json row;
        row["n"] = rec.n;
        row["L"] = to_decimal(rec.count);
        row["p_lower"] = to_decimal(rec.lower);
        row["log_L"] = rec.log_count;
        row["log_upper"] = rec.log_upper;
        row["c1_emp"] = rec.c1_emp;
        row["c2_emp"] = rec.c2_emp ? nlohmann::ordered_json(*rec.c2_emp) : nullptr;
        row["lower_holds"] = rec.lower_holds;
        row["upper_holds"] = rec.upper_holds;
        records.push_back(std::move(row));
    }
    nlohmann::ordered_json envelope;
    envelope["c1_min"] = report.c1_min ? nlohmann::ordered_json(*report.c1_min) : nullptr;
    envelope["c2_max"] = report.c2_max ? nlohmann::ordered_json(*report.c2_max) : nullptr;
    envelope["first_strict_lower"] =
        report.first_strict_lower ? nlohmann::ordered_json(*report.first_strict_lower) : nullptr;

    nlohmann::ordered_json out;
    out["records"] = std::move(records);
    out["envelope"] = std::move(envelope);
    return out;
}

std::uint64_t staircase_sum(std::size_t degree, std::uint64_t t) {
    const std::uint64_t i = degree;
    return (t + 1) * (i + 1) - t * (t + 1) / 2;
}

std::optional<StaircaseDecomposition> staircase_decompose(std::uint64_t h, std::size_t degree) {
    if (degree == 0) {
        throw std::invalid_argument("staircase_decompose: degree must be positive");
    }
    if (h <= degree) {
        return std::nullopt;
    }
    std::uint64_t t = 0;
    while (t + 1 < degree && staircase_sum(degree, t + 1) <= h) {
        ++t;
    }
    const std::uint64_t alpha = h - staircase_sum(degree, t);
    if (alpha >= degree - t) {
        return std::nullopt;
    }
    return StaircaseDecomposition{degree, t, alpha};
}

RemarkReport remark_profile(const HVector& h) {
    RemarkReport report;
    report.critical_index = critical_index(h);
    for (std::size_t i = 1; i < report.critical_index; ++i) {
        if (auto d = staircase_decompose(h[i], i)) {
            report.entries.push_back({h[i], *d});
        }
    }
    if (!report.entries.empty()) {
        report.first_applicable_degree = report.entries.front().decomposition.degree;
    }
    for (std::size_t k = 1; k < report.entries.size(); ++k) {
        const auto& prev = report.entries[k - 1].decomposition;
        const auto& cur = report.entries[k].decomposition;
        if (cur.t > prev.t) {
            report.t_monotone = false;
        }
        // A plateau is a run of adjacent degrees sharing t.
        if (cur.degree == prev.degree + 1 && cur.t == prev.t && cur.alpha > prev.alpha) {
            report.alpha_monotone_within_t_plateaus = false;
        }
    }
    return report;
}

RemarkSweep remark_sweep(std::size_t n, std::uint64_t cap, const CensusOptions& options) {
    RemarkSweep sweep;
    sweep.n = n;
    auto stream = enumerate_osequences(n, cap, options);
    while (auto h = stream.next()) {
        ++sweep.sequences;
        const RemarkReport report = remark_profile(*h);
        if (!report.entries.empty()) {
            ++sweep.profiled;
        }
        sweep.t_violations += report.t_monotone ? 0 : 1;
        sweep.alpha_violations += report.alpha_monotone_within_t_plateaus ? 0 : 1;
        sweep.tail_failures += verify_tail_partition(*h) ? 0 : 1;
        sweep.prefix_failures += check_prefix_bound(*h) ? 0 : 1;
    }
    return sweep;
}

} // namespace oseq
