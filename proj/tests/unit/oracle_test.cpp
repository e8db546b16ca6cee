#include <gtest/gtest.h>

#include <chrono>

#include "kgcube/olap/execute.hpp"
#include "support/oracle.hpp"

using namespace kgcube;
namespace t = kgcube::testing;

TEST(Oracle, RandomQueriesMatchBruteForce) {
    const auto& f = t::oracle_fixture();
    ASSERT_GE(f.rows.size(), 2000u);
    t::Oracle oracle(f);
    t::QueryGenerator gen(f, 7771);
    auto start = std::chrono::steady_clock::now();
    std::size_t nonempty = 0;
    for (int i = 0; i < 100; ++i) {
        auto q = gen.next();
        auto expected = oracle.run(q);
        auto got = olap::run_query(q, f.schema, f.graph);
        EXPECT_EQ(t::oracle_mismatch(q, got, expected), "") << "query " << i;
        if (!expected.empty()) ++nonempty;
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_LT(seconds, 60.0);
    EXPECT_GT(nonempty, 50u);
}

TEST(Oracle, WalksHierarchiesThroughTheLevelTables) {
    const auto& f = t::oracle_fixture();
    t::Oracle oracle(f);
    t::OracleFixture::Row row{"A010192", "1004", "201819", 1.0, 2.0};
    EXPECT_EQ(oracle.member(row, "Division"), "10");
    EXPECT_EQ(oracle.value(row, "Division", "divisionName"), "Barishal");
    EXPECT_EQ(oracle.value(row, "Category", "categoryName"), "Fruits");
    EXPECT_EQ(oracle.member(row, "Agriculture"), "AG");
    EXPECT_EQ(oracle.value(row, "Time", "yearName"), "2018-19");
}
