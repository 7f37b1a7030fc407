#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "oseq/errors.hpp"
#include "oseq/partition.hpp"

using namespace oseq;

TEST_CASE("empty table", "[partition]") {
    const auto t = build_partition_table(0);
    CHECK(t.limit() == 0);
    CHECK(t.p(0) == 1);
    CHECK(t.q(0) == 1);
}

TEST_CASE("small values", "[partition]") {
    const auto t = build_partition_table(10);
    CHECK(t.p(4) == 5);
    CHECK(t.q(4) == 2);
    const int p[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    const int q[] = {1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10};
    for (std::size_t n = 0; n <= 10; ++n) {
        CHECK(t.p(n) == p[n]);
        CHECK(t.q(n) == q[n]);
    }
}

TEST_CASE("pentagonal recurrence and distinct DP match the naive DP", "[partition][oracle]") {
    const auto fast_p = partition_counts(500);
    const auto fast_q = distinct_partition_counts(500);
    const auto slow_p = oracle::naive_partitions(500);
    const auto slow_q = oracle::naive_distinct_partitions(500);
    for (std::size_t n = 0; n <= 500; ++n) {
        REQUIRE(fast_p[n] == slow_p[n]);
        REQUIRE(fast_q[n] == slow_q[n]);
    }
    CHECK(fast_p[100] == BigInt("190569292"));
    CHECK(fast_p[500] == BigInt("2300165032574323995027"));
    CHECK(fast_q[100] == 444793);
    CHECK(fast_q[500] == BigInt("732986521245024"));
}

TEST_CASE("table invariants", "[partition][property]") {
    const auto t = build_partition_table(2000);
    for (std::size_t n = 1; n <= t.limit(); ++n) {
        REQUIRE(t.p(n) >= t.q(n));
        REQUIRE(t.q(n) >= 1);
        REQUIRE(t.p(n) >= t.p(n - 1));
        if (n >= 2) {
            REQUIRE(t.q(n) >= t.q(n - 1));
        }
    }
}

TEST_CASE("resource limit", "[partition]") {
    CHECK_THROWS_AS(build_partition_table(11, 10), ResourceLimitError);
    CHECK_NOTHROW(build_partition_table(10, 10));
    CHECK_THROWS_AS(PartitionTable({}, {}), std::invalid_argument);
}

TEST_CASE("restricted partition counts", "[partition]") {
    const RestrictedPartitionTable t(30, 30);
    const auto p = oracle::naive_partitions(30);
    for (std::size_t s = 0; s <= 30; ++s) {
        CHECK(t.count(s, 30) == p[s]);
        CHECK(t.count(s, 1) == 1);
        CHECK(t.count(s, 0) == (s == 0 ? 1 : 0));
    }
    CHECK(t.count(5, 2) == 3); // 2+2+1, 2+1+1+1, 1*5
    CHECK(t.count(6, 3) == 7);
    CHECK_THROWS_AS(t.count(31, 1), std::out_of_range);
}

TEST_CASE("Hardy-Ramanujan estimate", "[partition]") {
    const auto t = build_partition_table(10'000);
    const auto one = hardy_ramanujan(1, &t);
    const double direct = std::exp(std::numbers::pi * std::sqrt(2.0 / 3.0)) / (4.0 * std::sqrt(3.0));
    CHECK(*one.estimate == Catch::Approx(direct).epsilon(1e-14));
    CHECK(*one.estimate == Catch::Approx(1.88).margin(0.005));
    CHECK(*one.ratio == Catch::Approx(1.0 / direct).epsilon(1e-12));

    const double r100 = *hardy_ramanujan(100, &t).ratio;
    const double r2000 = *hardy_ramanujan(2000, &t).ratio;
    CHECK(r100 >= 0.90);
    CHECK(r100 <= 1.00);
    CHECK(std::fabs(r2000 - 1.0) < std::fabs(r100 - 1.0));

    for (std::size_t n = 10; n <= 10'000; ++n) {
        const double r = *hardy_ramanujan(n, &t).ratio;
        REQUIRE(r > 0.0);
        REQUIRE(r < 1.05);
    }
    CHECK_FALSE(hardy_ramanujan(10'001, &t).ratio);
    CHECK_THROWS_AS(hardy_ramanujan(0), std::invalid_argument);
}

TEST_CASE("Hardy-Ramanujan log scale is total", "[partition]") {
    CHECK_THROWS_AS(hardy_ramanujan(3'000'000), OverflowError);
    const auto big = hardy_ramanujan(3'000'000, nullptr, EstimateScale::log);
    CHECK_FALSE(big.estimate);
    const double x = 3'000'000.0;
    CHECK(big.log_estimate ==
          Catch::Approx(std::numbers::pi * std::sqrt(2 * x / 3) - std::log(4 * x * std::sqrt(3.0))));
    const auto small = hardy_ramanujan(50, nullptr, EstimateScale::log);
    CHECK(std::exp(small.log_estimate) ==
          Catch::Approx(*hardy_ramanujan(50).estimate).epsilon(1e-12));
}

TEST_CASE("p(n-1) >= q(n) with strictness from n = 4", "[partition]") {
    const auto rows = check_pq_inequality(500);
    REQUIRE(rows.size() == 500);
    CHECK(rows[0].n == 1);
    CHECK(rows[0].p_prev == 1);
    CHECK(rows[0].q == 1);
    CHECK_FALSE(rows[0].strict);
    CHECK(rows[2].p_prev == 2);
    CHECK(rows[2].q == 2);
    CHECK_FALSE(rows[2].strict);
    CHECK(rows[3].p_prev == 3);
    CHECK(rows[3].q == 2);
    CHECK(rows[3].strict);
    for (const auto& row : rows) {
        REQUIRE(row.strict == (row.n >= 4));
    }
    CHECK_THROWS_AS(check_pq_inequality(0), std::invalid_argument);
}

TEST_CASE("inequality checker reports the first bad n", "[partition]") {
    auto p = partition_counts(8);
    auto q = distinct_partition_counts(8);
    q[6] = p[5] + 1;
    const PartitionTable bad(std::move(p), std::move(q));
    try {
        check_pq_inequality(bad);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(std::string(e.what()).find("n = 6") != std::string::npos);
    }
}

TEST_CASE("CSV export", "[partition]") {
    std::ostringstream out;
    write_partition_csv(out, build_partition_table(4));
    CHECK(out.str() == "n,p,q\n0,1,1\n1,1,1\n2,2,1\n3,3,2\n4,5,2\n");

    std::ostringstream big;
    write_partition_csv(big, build_partition_table(500));
    CHECK(big.str().find("500,2300165032574323995027,732986521245024\n") != std::string::npos);
    CHECK(big.str().find('e') == std::string::npos);
}
