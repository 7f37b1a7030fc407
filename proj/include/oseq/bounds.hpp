#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "oseq/bigint.hpp"
#include "oseq/census.hpp"
#include "oseq/macaulay.hpp"
#include "oseq/partition.hpp"

namespace oseq {

/// Smallest i with h_i <= i, or e + 1 when there is none.
std::size_t critical_index(const HVector& h);

/// Entries from the critical index onward are nonincreasing.
bool verify_tail_partition(const HVector& h);

/// critical_index(h)^2 < 2n, i.e. j < sqrt(2n), decided in integers.
bool check_prefix_bound(const HVector& h);

inline constexpr double kUpperBoundSlack = 1e-6;

/// ln sqrt(2n) + ln p(n) + sqrt(2n) ln n.
double log_upper_bound(std::size_t n, const BigInt& p_n);

struct BoundsRecord {
    std::size_t n = 0;
    BigInt count;       // L(n)
    BigInt lower;       // p(n - 1)
    double log_count = 0.0;
    double log_upper = 0.0;
    double c1_emp = 0.0;           // ln L / sqrt n
    std::optional<double> c2_emp;  // ln L / (sqrt n ln n); undefined at n = 1
    bool lower_holds = false;
    bool upper_holds = false;
};

struct BoundsReport {
    std::vector<BoundsRecord> records;
    // Envelope over n >= 3.
    std::optional<double> c1_min;
    std::optional<double> c2_max;
    // First n with p(n - 1) < L(n).
    std::optional<std::size_t> first_strict_lower;
};

/// Requires census records for every n in [1, N] and partitions up to N.
/// Throws InvariantViolation naming the first n where either bound fails.
BoundsReport build_bounds_report(const CensusTable& census, const PartitionTable& partitions);

/// `n,L,p_lower,log_upper,c1_emp,c2_emp`
void write_bounds_csv(std::ostream& out, const BoundsReport& report);
nlohmann::ordered_json to_json(const BoundsReport& report);

/// h_i = (i+1) + i + ... + (i-t+1) + alpha with 0 <= alpha < i - t.
struct StaircaseDecomposition {
    std::size_t degree = 0;
    std::uint64_t t = 0;
    std::uint64_t alpha = 0;

    friend bool operator==(const StaircaseDecomposition&, const StaircaseDecomposition&) = default;
};

/// Sum of the t + 1 consecutive integers i+1, i, ..., i-t+1.
std::uint64_t staircase_sum(std::size_t degree, std::uint64_t t);

/// Greedy maximal t. Empty when h <= degree or when the remainder cannot be
/// brought under i - t. Throws std::invalid_argument for degree 0.
std::optional<StaircaseDecomposition> staircase_decompose(std::uint64_t h, std::size_t degree);

struct StaircaseEntry {
    std::uint64_t value = 0; // h_i
    StaircaseDecomposition decomposition;
};

struct RemarkReport {
    std::size_t critical_index = 0;
    std::vector<StaircaseEntry> entries; // degrees in [1, j - 1] that decompose
    std::optional<std::size_t> first_applicable_degree;
    bool t_monotone = true;
    bool alpha_monotone_within_t_plateaus = true;
};

/// Diagnostic only; the flags are never asserted.
RemarkReport remark_profile(const HVector& h);

struct RemarkSweep {
    std::size_t n = 0;
    std::uint64_t sequences = 0;
    std::uint64_t profiled = 0; // sequences with at least one decomposition
    std::uint64_t t_violations = 0;
    std::uint64_t alpha_violations = 0;
    std::uint64_t tail_failures = 0;
    std::uint64_t prefix_failures = 0;
};

/// Profiles every O-sequence of sum n and tallies the diagnostics.
RemarkSweep remark_sweep(std::size_t n, std::uint64_t cap = kDefaultStreamCap,
                         const CensusOptions& options = {});

} // namespace oseq
