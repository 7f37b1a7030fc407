#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "oseq/bigint.hpp"
#include "oseq/errors.hpp"
#include "oseq/macaulay.hpp"
#include "oseq/partition.hpp"

namespace oseq {

inline constexpr std::size_t kDefaultCensusCeiling = 200;
inline constexpr std::size_t kBruteForceCap = 16;
inline constexpr std::uint64_t kDefaultStreamCap = 1'000'000;

struct CensusOptions {
    std::size_t ceiling = kDefaultCensusCeiling;
    // Memo is cleared before a top-level count once it holds more entries
    // than this; 0 disables eviction.
    std::size_t max_memo_entries = 0;
    // Worker threads for the top-level h_1 split; 1 runs inline.
    unsigned threads = 1;
};

/// Counts O-sequences of a given sum. Completions from a state
/// (degree i, last value h_i, remaining r) depend on nothing else, so they are
/// memoised, and shared across all n. Once h_i <= i the rest of the sequence is
/// a partition of r into parts <= h_i and is read from a partition table.
///
/// Safe to call from several threads; top-level calls are serialised.
class CensusEngine {
public:
    explicit CensusEngine(CensusOptions options = {});

    /// Exact L(n). L(0) = 0. Throws ResourceLimitError above the ceiling.
    BigInt count(std::size_t n);

    std::size_t memo_size() const;
    const CensusOptions& options() const noexcept { return options_; }

private:
    using Prefix = std::vector<BigInt>;

    // prefix(i, r)[m] = sum over 1 <= h <= m of completions(i, h, r - h).
    const Prefix& prefix(std::size_t degree, std::size_t remaining);
    BigInt completions(std::size_t degree, std::uint64_t last, std::size_t remaining);
    std::uint64_t growth_bound(std::uint64_t last, std::size_t degree);
    void ensure_capacity(std::size_t n);

    CensusOptions options_;
    std::mutex count_mutex_;
    std::size_t capacity_ = 0;
    RestrictedPartitionTable tails_;

    mutable std::shared_mutex memo_mutex_;
    std::unordered_map<std::uint64_t, Prefix> memo_;

    mutable std::shared_mutex bound_mutex_;
    std::unordered_map<std::uint64_t, std::uint64_t> bounds_;
};

/// Convenience wrapper over a fresh CensusEngine.
BigInt count_osequences(std::size_t n, const CensusOptions& options = {});

/// Generate-and-test oracle: every composition of n with first part 1,
/// filtered by is_o_sequence. Throws ResourceLimitError for n > kBruteForceCap.
BigInt brute_force_count(std::size_t n);

class StreamCapExceeded : public ResourceLimitError {
public:
    StreamCapExceeded(std::size_t n, BigInt count, std::uint64_t cap);
    std::size_t n() const noexcept { return n_; }
    const BigInt& count() const noexcept { return count_; }

private:
    std::size_t n_;
    BigInt count_;
};

/// Lexicographic stream of all O-sequences of sum n.
class OSequenceStream {
public:
    explicit OSequenceStream(std::size_t n);
    std::optional<HVector> next();

private:
    std::size_t n_;
    std::vector<std::uint64_t> current_;
    bool started_ = false;
    bool done_ = false;
};

/// Throws StreamCapExceeded, reporting L(n), when L(n) > cap.
OSequenceStream enumerate_osequences(std::size_t n, std::uint64_t cap = kDefaultStreamCap,
                                     const CensusOptions& options = {});

/// L(1..max_n).
struct CensusTable {
    std::map<std::size_t, BigInt> records;

    std::size_t max_n() const noexcept { return records.empty() ? 0 : records.rbegin()->first; }
    const BigInt& at(std::size_t n) const { return records.at(n); }
};

enum class CacheStatus { disabled, hit, miss, rejected };

struct CensusBuild {
    CensusTable table;
    CacheStatus cache_status = CacheStatus::disabled;
    std::string cache_message; // why a cache file was rejected or not written
};

CensusBuild build_census(std::size_t max_n, const CensusOptions& options = {},
                         const std::optional<std::filesystem::path>& cache_path = std::nullopt);

// On-disk cache of L(1..m): a version header, one "n L" line per record, and a
// trailing FNV-1a checksum of the record lines.
inline constexpr const char* kCensusCacheHeader = "oseq-census-cache v1";

struct CacheLoad {
    std::optional<std::vector<BigInt>> values; // values[k] = L(k + 1)
    std::string problem;                       // nonempty when the file was rejected
};

CacheLoad load_census_cache(const std::filesystem::path& path);
void save_census_cache(const std::filesystem::path& path, const std::vector<BigInt>& values);

} // namespace oseq
