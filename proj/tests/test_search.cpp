#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cspix/search.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <set>

using namespace cspix;
using namespace cspix::test;
using std::set;
using std::vector;

namespace
{
    auto expand(const CspInstance & c, const vector<SolutionBundle> & bundles) -> vector<vector<int>>
    {
        vector<vector<int>> out;
        for (const auto & b : bundles) {
            vector<int> tuple(c.variable_count());
            auto rec = [&](auto && self, int v) -> void {
                if (v == c.variable_count()) {
                    out.push_back(tuple);
                    return;
                }
                for (int val : b.values[v]) {
                    tuple[v] = val;
                    self(self, v + 1);
                }
            };
            rec(rec, 0);
        }
        return out;
    }
}

TEST_CASE("plain search on degenerate instances")
{
    auto unsat = inst("var X a\nvar Y p\ncon X Y : forbid (a,p)\n");
    auto [set0, stats0] = solve_plain(unsat);
    CHECK(set0.count() == 0);
    CHECK(stats0.nodes >= 1);

    auto loose = inst("var X a b c\nvar Y p q r\nvar Z u v w\n");
    auto [set1, stats1] = solve_plain(loose);
    CHECK(set1.count() == 27);  // d^n
}

TEST_CASE("plain search equals the oracle enumeration")
{
    for (const auto & c : small_corpus(30, 8000, 5, 3)) {
        auto expected = enumerate_solutions(c).solutions;
        auto [found, stats] = solve_plain(c);
        CHECK(found.solutions == expected);
    }
}

TEST_CASE("search respects custom orders and limits")
{
    auto c = inst("var X a b\nvar Y p q\n");
    SearchOrders orders;
    orders.variables = vector<int>{1, 0};
    auto [set0, s0] = solve_plain(c, orders);
    CHECK(set0.count() == 4);

    auto [one, s1] = solve_plain(c, {}, 1);
    CHECK(one.count() == 1);
    CHECK(! one.complete);

    orders.variables = vector<int>{0};
    CHECK_THROWS_AS(solve_plain(c, orders), InvalidOrderingError);
}

TEST_CASE("one interchangeable block gives one bundle covering everything")
{
    auto c = inst(
        "var X a b\n"
        "var Y p\n"
        "con X Y : allow (a,p) (b,p)\n");
    auto [bundles, stats] = solve_bundled(c);
    REQUIRE(bundles.size() == 1);
    CHECK(bundles[0].covered() == 2);
    CHECK(stats.solutions == 2);
}

TEST_CASE("without nontrivial blocks the bundled search is the plain search")
{
    auto c = inst(
        "var X a b\n"
        "var Y p q\n"
        "con X Y : allow (a,p) (b,q)\n");
    auto [bundles, bstats] = solve_bundled(c);
    auto [sols, pstats] = solve_plain(c);
    CHECK(bundles.size() == sols.count());
    for (const auto & b : bundles)
        CHECK(b.covered() == 1);
    CHECK(bstats.nodes == pstats.nodes);
}

TEST_CASE("bundles partition the oracle solution set")
{
    int with_blocks = 0;
    for (const auto & c : small_corpus(40, 9000, 5, 3)) {
        auto [bundles, bstats] = solve_bundled(c);
        auto [sols, pstats] = solve_plain(c);

        auto members = expand(c, bundles);
        set<vector<int>> unique_members(members.begin(), members.end());
        CHECK(unique_members.size() == members.size());  // pairwise disjoint

        set<vector<int>> expected;
        for (const auto & s : enumerate_solutions(c).solutions)
            expected.insert(s.values);
        CHECK(unique_members == expected);
        CHECK(bstats.solutions == expected.size());

        CHECK(bstats.nodes <= pstats.nodes);
        if (bstats.nodes < pstats.nodes)
            ++with_blocks;
    }
    CHECK(with_blocks > 0);  // the corpus exercises real bundling
}

TEST_CASE("bundled search stays deterministic")
{
    for (const auto & c : small_corpus(5, 9100)) {
        auto a = solve_bundled(c);
        auto b = solve_bundled(c);
        REQUIRE(a.first.size() == b.first.size());
        for (std::size_t i = 0; i < a.first.size(); ++i)
            CHECK(a.first[i].values == b.first[i].values);
        CHECK(a.second.nodes == b.second.nodes);
    }
}

TEST_CASE("bundle limit caps the emission")
{
    auto c = inst("var X a b c\nvar Y p q r\n");
    auto [bundles, stats] = solve_bundled(c, {}, 1);
    CHECK(bundles.size() == 1);
}

TEST_CASE("bundling stays exact on ternary constraints")
{
    for (int i = 0; i < 12; ++i) {
        RandomModel model;
        model.seed = 9900 + std::uint64_t(i);
        model.variables = 4;
        model.domain_size = 3;
        model.density = 0.6;
        model.tightness = 0.3 + 0.1 * (i % 3);
        model.arity = 3;
        auto c = generate_instance(model);

        auto [bundles, bstats] = solve_bundled(c);
        auto [plain, pstats] = solve_plain(c);
        auto members = expand(c, bundles);
        set<vector<int>> unique_members(members.begin(), members.end());
        CHECK(unique_members.size() == members.size());
        set<vector<int>> expected;
        for (const auto & s : plain.solutions)
            expected.insert(s.values);
        CHECK(unique_members == expected);
        CHECK(bstats.nodes <= pstats.nodes);
    }
}
