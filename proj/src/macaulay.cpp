#include "oseq/macaulay.hpp"

#include <stdexcept>
#include <string>

namespace oseq {

HVector::HVector(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {
    if (entries_.empty() || entries_.front() != 1) {
        throw std::invalid_argument("HVector: h_0 must equal 1");
    }
    for (const auto h : entries_) {
        if (h == 0) {
            throw std::invalid_argument("HVector: entries must be positive");
        }
        total_ += h;
    }
}

BigInt binomial(std::uint64_t m, std::uint64_t k) {
    BigInt out;
    if (k > m) {
        return out;
    }
    mpz_bin_uiui(out.get_mpz_t(), m, k);
    return out;
}

namespace {

// Largest m >= k with C(m, k) <= rem; requires rem >= 1 and k >= 1.
std::uint64_t greedy_top(const BigInt& rem, std::uint32_t k) {
    if (k == 1) {
        return rem.get_ui();
    }
    std::uint64_t lo = k; // C(k, k) = 1 <= rem
    std::uint64_t step = 1;
    std::uint64_t hi = lo + step;
    while (binomial(hi, k) <= rem) {
        lo = hi;
        step *= 2;
        hi = lo + step;
    }
    // C(lo, k) <= rem < C(hi, k)
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (binomial(mid, k) <= rem) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

} // namespace

BigInt MacaulayExpansion::value() const {
    BigInt sum;
    for (const auto& term : terms) {
        sum += binomial(term.top, term.degree);
    }
    return sum;
}

MacaulayExpansion macaulay_expand(std::uint64_t a, std::uint32_t d) {
    if (a == 0) {
        throw std::invalid_argument("macaulay_expand: a must be positive");
    }
    if (d == 0) {
        throw std::invalid_argument("macaulay_expand: degree must be positive");
    }
    MacaulayExpansion expansion{d, {}};
    BigInt rem{static_cast<unsigned long>(a)};
    for (std::uint32_t k = d; k >= 1 && sgn(rem) > 0; --k) {
        const std::uint64_t top = greedy_top(rem, k);
        expansion.terms.push_back({top, k});
        rem -= binomial(top, k);
    }
    if (sgn(rem) != 0) {
        // Unreachable: the degree-1 step absorbs any remainder as C(rem, 1).
        throw std::logic_error("macaulay_expand: nonzero remainder");
    }
    return expansion;
}

BigInt pseudopower(std::uint64_t a, std::uint32_t d) {
    if (d == 0) {
        throw std::invalid_argument("pseudopower: degree must be positive");
    }
    BigInt sum;
    if (a == 0) {
        return sum;
    }
    BigInt raised;
    for (const auto& term : macaulay_expand(a, d).terms) {
        BigInt top{static_cast<unsigned long>(term.top)};
        top += 1;
        mpz_bin_ui(raised.get_mpz_t(), top.get_mpz_t(), term.degree + 1UL);
        sum += raised;
    }
    return sum;
}

std::uint64_t pseudopower_clamped(std::uint64_t a, std::uint32_t d, std::uint64_t cap) {
    // Below the diagonal the operator is the identity.
    if (a <= d) {
        return a < cap ? a : cap;
    }
    const BigInt value = pseudopower(a, d);
    if (value >= BigInt{static_cast<unsigned long>(cap)}) {
        return cap;
    }
    return value.get_ui();
}

std::string_view to_string(ViolationReason reason) noexcept {
    switch (reason) {
    case ViolationReason::bad_h0: return "bad-h0";
    case ViolationReason::zero_entry: return "zero-entry";
    case ViolationReason::growth_violation: return "growth-violation";
    }
    return "unknown";
}

namespace {

// Entries 1..k are already known to be positive.
bool growth_ok(std::uint64_t prev, std::size_t prev_degree, std::uint64_t next) {
    const auto bound = pseudopower(prev, static_cast<std::uint32_t>(prev_degree));
    return BigInt{static_cast<unsigned long>(next)} <= bound;
}

} // namespace

ValidityReport is_o_sequence(std::span<const std::int64_t> candidate) {
    if (candidate.empty() || candidate.front() != 1) {
        return ValidityReport::fail(0, ViolationReason::bad_h0);
    }
    for (std::size_t k = 1; k < candidate.size(); ++k) {
        if (candidate[k] <= 0) {
            return ValidityReport::fail(k, ViolationReason::zero_entry);
        }
        if (k >= 2 && !growth_ok(static_cast<std::uint64_t>(candidate[k - 1]), k - 1,
                                 static_cast<std::uint64_t>(candidate[k]))) {
            return ValidityReport::fail(k - 1, ViolationReason::growth_violation);
        }
    }
    return ValidityReport::ok();
}

ValidityReport is_o_sequence(const HVector& h) {
    for (std::size_t k = 2; k < h.size(); ++k) {
        if (!growth_ok(h[k - 1], k - 1, h[k])) {
            return ValidityReport::fail(k - 1, ViolationReason::growth_violation);
        }
    }
    return ValidityReport::ok();
}

} // namespace oseq
