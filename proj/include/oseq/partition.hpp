#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "oseq/bigint.hpp"

namespace oseq {

inline constexpr std::size_t kDefaultPartitionLimit = 100'000;

/// Exact p(0..N) and q(0..N), where q counts partitions into distinct parts.
/// Immutable once built.
class PartitionTable {
public:
    /// Both vectors must be nonempty and of equal length.
    PartitionTable(std::vector<BigInt> p, std::vector<BigInt> q);

    std::size_t limit() const noexcept { return p_.size() - 1; }
    const BigInt& p(std::size_t n) const { return p_.at(n); }
    const BigInt& q(std::size_t n) const { return q_.at(n); }
    std::span<const BigInt> p_values() const noexcept { return p_; }
    std::span<const BigInt> q_values() const noexcept { return q_; }

private:
    std::vector<BigInt> p_;
    std::vector<BigInt> q_;
};

/// p(0..limit) by Euler's pentagonal-number recurrence.
std::vector<BigInt> partition_counts(std::size_t limit);

/// q(0..limit) by a dynamic program over the number of (distinct) parts:
/// Q_m(n) = Q_m(n - m) + Q_{m-1}(n - m).
std::vector<BigInt> distinct_partition_counts(std::size_t limit);

/// Throws ResourceLimitError when limit > max_limit.
PartitionTable build_partition_table(std::size_t limit,
                                     std::size_t max_limit = kDefaultPartitionLimit);

/// Number of partitions of s into parts of size at most k, for s <= max_sum
/// and k <= max_part. count(0, k) = 1.
class RestrictedPartitionTable {
public:
    RestrictedPartitionTable() = default;
    RestrictedPartitionTable(std::size_t max_sum, std::size_t max_part);

    std::size_t max_sum() const noexcept { return max_sum_; }
    std::size_t max_part() const noexcept { return max_part_; }
    const BigInt& count(std::size_t sum, std::size_t part_bound) const;

private:
    std::size_t max_sum_ = 0;
    std::size_t max_part_ = 0;
    std::vector<BigInt> cells_; // row-major over sum, then part bound
};

enum class EstimateScale { linear, log };

struct AsymptoticEstimate {
    std::size_t n = 0;
    double log_estimate = 0.0;       // always present
    std::optional<double> estimate;  // absent in log scale
    std::optional<double> ratio;     // p(n) / estimate, when p(n) is tabulated
};

/// (1 / (4 n sqrt 3)) * exp(pi * sqrt(2n / 3)).
/// In linear scale throws OverflowError once the value exceeds double range;
/// log scale is total. Throws std::invalid_argument for n == 0.
AsymptoticEstimate hardy_ramanujan(std::size_t n, const PartitionTable* table = nullptr,
                                   EstimateScale scale = EstimateScale::linear);

struct PqComparison {
    std::size_t n = 0;
    BigInt p_prev; // p(n - 1)
    BigInt q;      // q(n)
    bool strict = false;
};

/// One row per 1 <= n <= table.limit(). Throws InvariantViolation naming the
/// first n where p(n-1) < q(n), or where strictness differs from (n >= 4).
std::vector<PqComparison> check_pq_inequality(const PartitionTable& table);
std::vector<PqComparison> check_pq_inequality(std::size_t limit);

/// `n,p,q` rows with a header line, decimal digits.
void write_partition_csv(std::ostream& out, const PartitionTable& table);

} // namespace oseq
