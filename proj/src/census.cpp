#include "oseq/census.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

namespace oseq {

namespace {

std::uint64_t pack(std::size_t high, std::size_t low) {
    return (static_cast<std::uint64_t>(high) << 32) | static_cast<std::uint64_t>(low);
}

} // namespace

CensusEngine::CensusEngine(CensusOptions options) : options_(options) {
    if (options_.ceiling == 0) {
        throw std::invalid_argument("CensusEngine: ceiling must be positive");
    }
    if (options_.threads == 0) {
        options_.threads = 1;
    }
}

std::size_t CensusEngine::memo_size() const {
    std::shared_lock lock(memo_mutex_);
    return memo_.size();
}

void CensusEngine::ensure_capacity(std::size_t n) {
    if (n <= capacity_) {
        return;
    }
    const std::size_t grown = std::min(std::max(n, 2 * capacity_), options_.ceiling);
    tails_ = RestrictedPartitionTable(grown, grown);
    capacity_ = grown;
    std::unique_lock lock(bound_mutex_);
    bounds_.clear();
}

std::uint64_t CensusEngine::growth_bound(std::uint64_t last, std::size_t degree) {
    const std::uint64_t key = pack(degree, last);
    {
        std::shared_lock lock(bound_mutex_);
        if (auto it = bounds_.find(key); it != bounds_.end()) {
            return it->second;
        }
    }
    const std::uint64_t value =
        pseudopower_clamped(last, static_cast<std::uint32_t>(degree), capacity_);
    std::unique_lock lock(bound_mutex_);
    bounds_.try_emplace(key, value);
    return value;
}

BigInt CensusEngine::completions(std::size_t degree, std::uint64_t last, std::size_t remaining) {
    if (last <= degree) {
        // Every later entry satisfies h_k <= last <= degree < k, so the growth
        // condition reduces to h_{k+1} <= h_k.
        return tails_.count(remaining, last);
    }
    BigInt total = remaining == 0 ? 1 : 0;
    if (remaining > 0) {
        const std::uint64_t bound = growth_bound(last, degree);
        const auto upper = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, bound));
        total += prefix(degree + 1, remaining)[upper];
    }
    return total;
}

const CensusEngine::Prefix& CensusEngine::prefix(std::size_t degree, std::size_t remaining) {
    const std::uint64_t key = pack(degree, remaining);
    {
        std::shared_lock lock(memo_mutex_);
        if (auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
    }
    Prefix sums(remaining + 1);
    for (std::size_t m = 1; m <= remaining; ++m) {
        sums[m] = sums[m - 1] + completions(degree, m, remaining - m);
    }
    std::unique_lock lock(memo_mutex_);
    // A concurrent caller may have inserted the same (identical) entry first.
    return memo_.try_emplace(key, std::move(sums)).first->second;
}

BigInt CensusEngine::count(std::size_t n) {
    if (n == 0) {
        return 0;
    }
    if (n > options_.ceiling) {
        throw ResourceLimitError("census n = " + std::to_string(n) + " exceeds ceiling " +
                                 std::to_string(options_.ceiling));
    }
    std::lock_guard guard(count_mutex_);
    if (options_.max_memo_entries != 0 && memo_size() > options_.max_memo_entries) {
        std::unique_lock lock(memo_mutex_);
        memo_.clear();
    }
    ensure_capacity(n);
    if (n == 1) {
        return 1;
    }
    const std::size_t rest = n - 1; // sum of h_1, ..., h_e
    if (options_.threads <= 1) {
        return prefix(1, rest)[rest];
    }

    const unsigned workers = std::min<unsigned>(options_.threads, static_cast<unsigned>(rest));
    std::vector<BigInt> partial(workers);
    std::vector<std::exception_ptr> failures(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t h1 = 1 + w; h1 <= rest; h1 += workers) {
                        partial[w] += completions(1, h1, rest - h1);
                    }
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    BigInt total;
    for (unsigned w = 0; w < workers; ++w) {
        if (failures[w]) {
            std::rethrow_exception(failures[w]);
        }
        total += partial[w];
    }
    return total;
}

BigInt count_osequences(std::size_t n, const CensusOptions& options) {
    CensusEngine engine(options);
    return engine.count(n);
}

BigInt brute_force_count(std::size_t n) {
    if (n == 0) {
        return 0;
    }
    if (n > kBruteForceCap) {
        throw ResourceLimitError("brute_force_count: n = " + std::to_string(n) +
                                 " exceeds hard cap " + std::to_string(kBruteForceCap));
    }
    if (n == 1) {
        return 1;
    }
    // Compositions of n - 1: bit g of the mask set means "cut after unit g".
    const std::size_t gaps = n - 2;
    std::uint64_t hits = 0;
    std::vector<std::int64_t> candidate;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << gaps); ++mask) {
        candidate.assign(1, 1);
        std::int64_t part = 1;
        for (std::size_t g = 0; g < gaps; ++g) {
            if ((mask >> g) & 1U) {
                candidate.push_back(part);
                part = 1;
            } else {
                ++part;
            }
        }
        candidate.push_back(part);
        if (is_o_sequence(candidate).valid) {
            ++hits;
        }
    }
    return BigInt{static_cast<unsigned long>(hits)};
}

StreamCapExceeded::StreamCapExceeded(std::size_t n, BigInt count, std::uint64_t cap)
    : ResourceLimitError("L(" + std::to_string(n) + ") = " + to_decimal(count) +
                         " exceeds stream cap " + std::to_string(cap)),
      n_(n), count_(std::move(count)) {}

OSequenceStream::OSequenceStream(std::size_t n) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("OSequenceStream: n must be positive");
    }
}

std::optional<HVector> OSequenceStream::next() {
    if (done_) {
        return std::nullopt;
    }
    if (!started_) {
        started_ = true;
        current_.assign(n_, 1);
        return HVector(current_);
    }
    // Lexicographic successor: bump the rightmost entry that can grow (never
    // the last one, whose growth would overshoot n), then refill with ones.
    for (std::size_t k = current_.size() - 1; k-- > 1;) {
        const std::uint64_t bumped = current_[k] + 1;
        if (k >= 2 &&
            bumped > pseudopower_clamped(current_[k - 1], static_cast<std::uint32_t>(k - 1), n_)) {
            continue;
        }
        current_.resize(k + 1);
        current_[k] = bumped;
        std::uint64_t used = 0;
        for (const auto h : current_) {
            used += h;
        }
        current_.resize(current_.size() + (n_ - used), 1);
        return HVector(current_);
    }
    done_ = true;
    return std::nullopt;
}

OSequenceStream enumerate_osequences(std::size_t n, std::uint64_t cap,
                                     const CensusOptions& options) {
    if (n == 0) {
        throw std::invalid_argument("enumerate_osequences: n must be positive");
    }
    BigInt total = count_osequences(n, options);
    if (total > BigInt{static_cast<unsigned long>(cap)}) {
        throw StreamCapExceeded(n, std::move(total), cap);
    }
    return OSequenceStream(n);
}

CensusBuild build_census(std::size_t max_n, const CensusOptions& options,
                         const std::optional<std::filesystem::path>& cache_path) {
    if (max_n == 0) {
        throw std::invalid_argument("build_census: max_n must be positive");
    }
    if (max_n > options.ceiling) {
        throw ResourceLimitError("census max_n = " + std::to_string(max_n) +
                                 " exceeds ceiling " + std::to_string(options.ceiling));
    }
    CensusBuild build;
    std::size_t cached_length = 0;
    if (cache_path) {
        CacheLoad load = load_census_cache(*cache_path);
        if (load.values) {
            cached_length = load.values->size();
            if (cached_length >= max_n) {
                build.cache_status = CacheStatus::hit;
                for (std::size_t n = 1; n <= max_n; ++n) {
                    build.table.records.emplace(n, (*load.values)[n - 1]);
                }
                return build;
            }
            build.cache_status = CacheStatus::miss;
        } else if (load.problem.empty()) {
            build.cache_status = CacheStatus::miss;
        } else {
            build.cache_status = CacheStatus::rejected;
            build.cache_message = load.problem;
        }
    }

    CensusEngine engine(options);
    std::vector<BigInt> values;
    values.reserve(max_n);
    for (std::size_t n = 1; n <= max_n; ++n) {
        values.push_back(engine.count(n));
        build.table.records.emplace(n, values.back());
    }
    if (cache_path && values.size() > cached_length) {
        try {
            save_census_cache(*cache_path, values);
        } catch (const std::exception& e) {
            if (!build.cache_message.empty()) {
                build.cache_message += "; ";
            }
            build.cache_message += e.what();
        }
    }
    return build;
}

} // namespace oseq
