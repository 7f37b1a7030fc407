#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oseq/bigint.hpp"

namespace oseq {

/// A sequence (h_0, ..., h_e) in canonical form: h_0 = 1 and every entry is
/// positive. Canonical form says nothing about Macaulay's growth condition;
/// use is_o_sequence() for that.
class HVector {
public:
    /// Throws std::invalid_argument unless h_0 = 1 and all entries are >= 1.
    explicit HVector(std::vector<std::uint64_t> entries);
    HVector(std::initializer_list<std::uint64_t> entries)
        : HVector(std::vector<std::uint64_t>(entries)) {}

    std::span<const std::uint64_t> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t top_degree() const noexcept { return entries_.size() - 1; }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t operator[](std::size_t i) const { return entries_[i]; }

    friend bool operator==(const HVector&, const HVector&) = default;
    friend auto operator<=>(const HVector& a, const HVector& b) {
        return a.entries_ <=> b.entries_;
    }

private:
    std::vector<std::uint64_t> entries_;
    std::uint64_t total_ = 0;
};

/// Exact C(m, k); zero when k > m.
BigInt binomial(std::uint64_t m, std::uint64_t k);

struct MacaulayTerm {
    std::uint64_t top;    // a_k
    std::uint32_t degree; // k

    friend bool operator==(const MacaulayTerm&, const MacaulayTerm&) = default;
};

/// a = C(a_d, d) + C(a_{d-1}, d-1) + ... + C(a_j, j),
/// with a_d > a_{d-1} > ... > a_j >= j >= 1.
struct MacaulayExpansion {
    std::uint32_t degree = 0;
    std::vector<MacaulayTerm> terms;

    BigInt value() const;
};

/// Greedy d-th Macaulay representation. Throws std::invalid_argument when
/// a == 0 or d == 0.
MacaulayExpansion macaulay_expand(std::uint64_t a, std::uint32_t d);

/// a^<d> = sum of C(a_k + 1, k + 1) over the d-th expansion of a; 0 for a = 0.
/// Throws std::invalid_argument when d == 0.
BigInt pseudopower(std::uint64_t a, std::uint32_t d);

/// min(a^<d>, cap) without materialising large intermediates in the caller.
std::uint64_t pseudopower_clamped(std::uint64_t a, std::uint32_t d, std::uint64_t cap);

enum class ViolationReason { bad_h0, zero_entry, growth_violation };

std::string_view to_string(ViolationReason reason) noexcept;

struct ValidityReport {
    bool valid = true;
    // bad_h0: 0. zero_entry: index of the offending entry.
    // growth_violation: the i with h_{i+1} > h_i^<i>.
    std::optional<std::size_t> first_violation;
    std::optional<ViolationReason> reason;

    static ValidityReport ok() { return {}; }
    static ValidityReport fail(std::size_t index, ViolationReason why) {
        return {false, index, why};
    }
};

/// Checks h_0 = 1, all entries >= 1, and h_{i+1} <= h_i^<i> for 1 <= i < e.
/// Entries are scanned left to right and the first failure is reported.
ValidityReport is_o_sequence(std::span<const std::int64_t> candidate);
ValidityReport is_o_sequence(const HVector& h);

} // namespace oseq
