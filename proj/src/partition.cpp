#include "oseq/partition.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "oseq/errors.hpp"

namespace oseq {

PartitionTable::PartitionTable(std::vector<BigInt> p, std::vector<BigInt> q)
    : p_(std::move(p)), q_(std::move(q)) {
    if (p_.empty() || p_.size() != q_.size()) {
        throw std::invalid_argument("PartitionTable: p and q must be nonempty and equal length");
    }
}

std::vector<BigInt> partition_counts(std::size_t limit) {
    std::vector<BigInt> p(limit + 1);
    p[0] = 1;
    for (std::size_t n = 1; n <= limit; ++n) {
        BigInt acc;
        // Generalized pentagonal numbers k(3k-1)/2 and k(3k+1)/2, signs + + - - ...
        for (std::size_t k = 1;; ++k) {
            const std::size_t g1 = k * (3 * k - 1) / 2;
            if (g1 > n) {
                break;
            }
            const bool add = (k % 2) == 1;
            if (add) {
                acc += p[n - g1];
            } else {
                acc -= p[n - g1];
            }
            const std::size_t g2 = k * (3 * k + 1) / 2;
            if (g2 <= n) {
                if (add) {
                    acc += p[n - g2];
                } else {
                    acc -= p[n - g2];
                }
            }
        }
        p[n] = std::move(acc);
    }
    return p;
}

std::vector<BigInt> distinct_partition_counts(std::size_t limit) {
    std::vector<BigInt> q(limit + 1);
    q[0] = 1;
    // prev[s] = Q_{m-1}(s), cur[s] = Q_m(s); Q_0 is the indicator of s = 0.
    std::vector<BigInt> prev(limit + 1);
    std::vector<BigInt> cur(limit + 1);
    prev[0] = 1;
    for (std::size_t m = 1; m * (m + 1) / 2 <= limit; ++m) {
        const std::size_t smallest = m * (m + 1) / 2;
        for (std::size_t s = 0; s < smallest; ++s) {
            cur[s] = 0;
        }
        for (std::size_t s = smallest; s <= limit; ++s) {
            cur[s] = cur[s - m] + prev[s - m];
            q[s] += cur[s];
        }
        std::swap(prev, cur);
    }
    return q;
}

PartitionTable build_partition_table(std::size_t limit, std::size_t max_limit) {
    if (limit > max_limit) {
        throw ResourceLimitError("partition table limit " + std::to_string(limit) +
                                 " exceeds configured maximum " + std::to_string(max_limit));
    }
    return PartitionTable(partition_counts(limit), distinct_partition_counts(limit));
}

RestrictedPartitionTable::RestrictedPartitionTable(std::size_t max_sum, std::size_t max_part)
    : max_sum_(max_sum), max_part_(max_part), cells_((max_sum + 1) * (max_part + 1)) {
    const std::size_t width = max_part + 1;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        cells_[s * width] = s == 0 ? 1 : 0;
        for (std::size_t k = 1; k <= max_part; ++k) {
            BigInt value = cells_[s * width + k - 1];
            if (k <= s) {
                value += cells_[(s - k) * width + k];
            }
            cells_[s * width + k] = std::move(value);
        }
    }
}

const BigInt& RestrictedPartitionTable::count(std::size_t sum, std::size_t part_bound) const {
    if (sum > max_sum_ || part_bound > max_part_) {
        throw std::out_of_range("RestrictedPartitionTable: index outside table");
    }
    return cells_[sum * (max_part_ + 1) + part_bound];
}

AsymptoticEstimate hardy_ramanujan(std::size_t n, const PartitionTable* table,
                                   EstimateScale scale) {
    if (n == 0) {
        throw std::invalid_argument("hardy_ramanujan: n must be positive");
    }
    const double x = static_cast<double>(n);
    AsymptoticEstimate out;
    out.n = n;
    out.log_estimate =
        std::numbers::pi * std::sqrt(2.0 * x / 3.0) - std::log(4.0 * x * std::numbers::sqrt3);
    if (scale == EstimateScale::linear) {
        if (out.log_estimate >= std::log(DBL_MAX)) {
            throw OverflowError("hardy_ramanujan: estimate for n = " + std::to_string(n) +
                                " overflows double; use log scale");
        }
        out.estimate = std::exp(out.log_estimate);
    }
    if (table != nullptr && n <= table->limit()) {
        out.ratio = std::exp(natural_log(table->p(n)) - out.log_estimate);
    }
    return out;
}

std::vector<PqComparison> check_pq_inequality(const PartitionTable& table) {
    std::vector<PqComparison> rows;
    rows.reserve(table.limit());
    for (std::size_t n = 1; n <= table.limit(); ++n) {
        PqComparison row{n, table.p(n - 1), table.q(n), false};
        const int cmp = ::cmp(row.p_prev, row.q);
        if (cmp < 0) {
            throw InvariantViolation("p(n-1) >= q(n) fails at n = " + std::to_string(n));
        }
        row.strict = cmp > 0;
        if (row.strict != (n >= 4)) {
            throw InvariantViolation("strictness of p(n-1) >= q(n) is wrong at n = " +
                                     std::to_string(n));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<PqComparison> check_pq_inequality(std::size_t limit) {
    if (limit == 0) {
        throw std::invalid_argument("check_pq_inequality: limit must be positive");
    }
    return check_pq_inequality(build_partition_table(limit));
}

void write_partition_csv(std::ostream& out, const PartitionTable& table) {
    out << "n,p,q\n";
    for (std::size_t n = 0; n <= table.limit(); ++n) {
        out << n << ',' << to_decimal(table.p(n)) << ',' << to_decimal(table.q(n)) << '\n';
    }
}

} // namespace oseq
