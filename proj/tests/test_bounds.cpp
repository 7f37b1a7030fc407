#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "oseq/bounds.hpp"
#include "oseq/errors.hpp"

using namespace oseq;

TEST_CASE("critical index", "[bounds]") {
    CHECK(critical_index(HVector{1}) == 1);
    CHECK(critical_index(HVector{1, 1, 1}) == 1);
    CHECK(critical_index(HVector{1, 3, 2, 1}) == 2);
    CHECK(critical_index(HVector{1, 3, 4, 4}) == 4);
    CHECK(critical_index(HVector{1, 4}) == 2);
}

TEST_CASE("tail partition and prefix bound", "[bounds]") {
    CHECK(verify_tail_partition(HVector{1, 3, 2, 1}));
    CHECK(verify_tail_partition(HVector{1, 1, 1, 1}));
    // Not an O-sequence: the check itself must still notice the rise.
    CHECK_FALSE(verify_tail_partition(HVector{1, 1, 2}));

    CHECK(check_prefix_bound(HVector{1, 4}));
    CHECK(check_prefix_bound(HVector{1}));
    CHECK(check_prefix_bound(HVector{1, 3, 4, 4}));
}

TEST_CASE("proof-step invariants over every O-sequence with n <= 12", "[bounds][property]") {
    std::size_t seen = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
        auto stream = enumerate_osequences(n);
        while (auto h = stream.next()) {
            REQUIRE(verify_tail_partition(*h));
            REQUIRE(check_prefix_bound(*h));
            ++seen;
        }
    }
    CHECK(seen == 1 + 1 + 2 + 3 + 5 + 8 + 12 + 18 + 27 + 40 + 57 + 82);
}

TEST_CASE("bounds report", "[bounds]") {
    const auto census = build_census(60).table;
    const auto partitions = build_partition_table(60);
    const auto report = build_bounds_report(census, partitions);
    REQUIRE(report.records.size() == 60);

    const auto& five = report.records[4];
    CHECK(five.count == 5);
    CHECK(five.lower == 5);

    const auto& three = report.records[2];
    const double by_hand = std::log(std::sqrt(6.0)) + std::log(3.0) + std::sqrt(6.0) * std::log(3.0);
    CHECK(three.log_upper == Catch::Approx(by_hand).epsilon(1e-14));
    CHECK(three.log_count == Catch::Approx(std::log(2.0)).epsilon(1e-15));

    for (const auto& rec : report.records) {
        CHECK(rec.lower_holds);
        CHECK(rec.upper_holds);
        if (rec.n >= 3) {
            CHECK(rec.c1_emp > 0.0);
            CHECK(*rec.c2_emp > 0.0);
        }
    }
    CHECK_FALSE(report.records[0].c2_emp);
    REQUIRE(report.c1_min);
    REQUIRE(report.c2_max);
    CHECK(*report.c1_min > 0.0);
    CHECK(std::isfinite(*report.c2_max));
    CHECK(report.first_strict_lower == 6);

    // ln L is exact to double precision.
    const auto& last = report.records.back();
    CHECK(last.log_count == Catch::Approx(std::log(9469536.0)).epsilon(1e-15));
}

TEST_CASE("bounds report rejects corrupted inputs", "[bounds]") {
    auto census = build_census(10).table;
    const auto partitions = build_partition_table(10);
    CHECK_THROWS_AS(build_bounds_report(census, build_partition_table(9)), std::invalid_argument);

    auto low = census;
    low.records[8] = 1; // below p(7) = 15
    try {
        build_bounds_report(low, partitions);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(std::string(e.what()).find("n = 8") != std::string::npos);
    }

    auto high = census;
    high.records[4] = BigInt("1" + std::string(40, '0'));
    CHECK_THROWS_AS(build_bounds_report(high, partitions), InvariantViolation);

    auto gap = census;
    gap.records.erase(3);
    CHECK_THROWS_AS(build_bounds_report(gap, partitions), std::invalid_argument);
}

TEST_CASE("bounds export", "[bounds]") {
    const auto report = build_bounds_report(build_census(4).table, build_partition_table(4));
    std::ostringstream csv;
    write_bounds_csv(csv, report);
    const std::string text = csv.str();
    CHECK(text.rfind("n,L,p_lower,log_upper,c1_emp,c2_emp\n", 0) == 0);
    CHECK(text.find("\n1,1,1,") != std::string::npos);
    CHECK(text.find("\n4,3,3,") != std::string::npos);

    const auto json = to_json(report);
    CHECK(json["records"].size() == 4);
    CHECK(json["records"][3]["L"] == "3");
    CHECK(json["records"][0]["c2_emp"].is_null());
    CHECK(json["records"][2]["upper_holds"] == true);
    CHECK(json["envelope"]["first_strict_lower"].is_null());
}

TEST_CASE("staircase examples", "[bounds]") {
    for (std::size_t i = 1; i <= 20; ++i) {
        CHECK(staircase_decompose(i + 1, i) == StaircaseDecomposition{i, 0, 0});
    }
    CHECK(staircase_decompose(7, 3) == StaircaseDecomposition{3, 1, 0});
    CHECK(staircase_decompose(6, 3) == StaircaseDecomposition{3, 0, 2});
    CHECK_FALSE(staircase_decompose(3, 3));
    CHECK_FALSE(staircase_decompose(3, 1)); // 2 + 1 would need alpha < 1
    CHECK(staircase_decompose(4, 2) == StaircaseDecomposition{2, 0, 1});
    CHECK(staircase_decompose(5, 2) == StaircaseDecomposition{2, 1, 0});
    CHECK_FALSE(staircase_decompose(6, 2));
    CHECK_THROWS_AS(staircase_decompose(3, 0), std::invalid_argument);
}

TEST_CASE("staircase recomposition over the full range", "[bounds][property]") {
    for (std::size_t i = 1; i <= 50; ++i) {
        const std::uint64_t top = (i + 1) * (i + 2) / 2 - 1;
        for (std::uint64_t h = i + 1; h <= top; ++h) {
            const auto d = staircase_decompose(h, i);
            REQUIRE(d);
            std::uint64_t sum = 0;
            for (std::uint64_t k = 0; k <= d->t; ++k) {
                sum += (i + 1) - k; // C(i+1-k, i-k)
            }
            REQUIRE(sum + d->alpha == h);
            REQUIRE(d->alpha < i - d->t);
        }
        CHECK_FALSE(staircase_decompose(top + 1, i));
    }
}

TEST_CASE("staircase greedy equals exhaustive search", "[bounds][oracle]") {
    for (std::size_t i = 1; i <= 12; ++i) {
        for (std::uint64_t h = 1; h <= (i + 1) * (i + 2); ++h) {
            const auto pairs = oracle::staircase_pairs(h, i);
            REQUIRE(pairs.size() <= 1);
            const auto greedy = staircase_decompose(h, i);
            REQUIRE(greedy.has_value() == !pairs.empty());
            if (greedy) {
                CHECK(greedy->t == pairs.front().first);
                CHECK(greedy->alpha == pairs.front().second);
            }
        }
    }
}

TEST_CASE("remark profile", "[bounds]") {
    const auto flat = remark_profile(HVector{1, 1, 1, 1});
    CHECK(flat.critical_index == 1);
    CHECK(flat.entries.empty());
    CHECK_FALSE(flat.first_applicable_degree);

    const auto r = remark_profile(HVector{1, 3, 4, 4});
    CHECK(r.critical_index == 4);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].decomposition == StaircaseDecomposition{2, 0, 1});
    CHECK(r.entries[1].decomposition == StaircaseDecomposition{3, 0, 0});
    CHECK(r.first_applicable_degree == 2);
    CHECK(r.t_monotone);
    CHECK(r.alpha_monotone_within_t_plateaus);

    // The next two violate the growth condition; they only exercise the flags.
    // 4 = 3 + 1 at i = 2 (t = 0, alpha = 1), 6 = 4 + 2 at i = 3 (t = 0, alpha = 2).
    const auto rising = remark_profile(HVector{1, 3, 4, 6});
    CHECK(rising.t_monotone);
    CHECK_FALSE(rising.alpha_monotone_within_t_plateaus);

    // 5 = 3 + 2 at i = 2 (t = 1), 9 = 4 + 3 + 2 at i = 3 (t = 2): t rises.
    const auto t_up = remark_profile(HVector{1, 3, 5, 9});
    CHECK_FALSE(t_up.t_monotone);
}

TEST_CASE("remark sweep", "[bounds]") {
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto s = remark_sweep(n);
        CHECK(BigInt{static_cast<unsigned long>(s.sequences)} == count_osequences(n));
        CHECK(s.tail_failures == 0);
        CHECK(s.prefix_failures == 0);
        CHECK(s.profiled <= s.sequences);
    }
}
