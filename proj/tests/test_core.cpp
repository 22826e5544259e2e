#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cspix/microstructure.hpp>
#include <cspix/oracle.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <set>

using namespace cspix;
using namespace cspix::test;
using std::vector;

namespace
{
    const char * chain_xyz =
        "var X a b\n"
        "var Y p q\n"
        "var Z r s\n"
        "con X Y : allow (a,p) (b,q)\n"
        "con Y Z : allow (p,r) (q,s)\n";
}

TEST_CASE("instance construction validates its input")
{
    CHECK_THROWS_AS(inst("var X\n"), ParseError);  // domains start non-empty
    CHECK_THROWS_AS(inst("var X a b\nvar X c d\n"), ParseError);
    CHECK_THROWS_AS(inst("var X a a\n"), ParseError);
    CHECK_THROWS_AS(inst("var X a\ncon X Y : allow (a,a)\n"), ParseError);
    CHECK_THROWS_AS(inst("var X a\ncon X : allow (a,a)\n"), ParseError);
    CHECK_THROWS_AS(inst("var X a\nvar Y p\ncon X Y : allow (a)\n"), ParseError);
    CHECK_THROWS_AS(inst("var X a\nvar Y p\ncon X Y : allow (a,zz)\n"), ParseError);
}

TEST_CASE("same-scope constraints conjoin into one canonical constraint")
{
    auto c = inst(
        "var X a b\n"
        "var Y p q\n"
        "con X Y : allow (a,p) (a,q) (b,p)\n"
        "con Y X : forbid (q,a)\n");
    REQUIRE(c.constraint_count() == 1);
    auto sols = enumerate_solutions(c).solutions;
    REQUIRE(sols.size() == 2);  // (a,p) and (b,p)
    for (const auto & s : sols)
        CHECK(s.values[var(c, "Y")] == val(c, "Y", "p"));
}

TEST_CASE("is_consistent judges only fully bound constraints")
{
    auto c = inst(chain_xyz);

    CHECK(is_consistent(c, Assignment(3)));
    CHECK(is_consistent(c, asg(c, {{"X", "a"}})));
    CHECK(is_consistent(c, asg(c, {{"X", "a"}, {"Z", "s"}})));  // X-Z unconstrained
    CHECK(! is_consistent(c, asg(c, {{"X", "a"}, {"Y", "q"}})));

    // full assignment violating one allow-list constraint
    CHECK(! is_consistent(c, asg(c, {{"X", "a"}, {"Y", "p"}, {"Z", "s"}})));
    CHECK(is_consistent(c, asg(c, {{"X", "a"}, {"Y", "p"}, {"Z", "r"}})));

    Assignment bad(3);
    bad.values[0] = 7;
    CHECK_THROWS_AS(is_consistent(c, bad), InvalidAssignmentError);
}

TEST_CASE("induced subproblem keeps exactly the contained scopes")
{
    auto c = inst(chain_xyz);

    auto whole = induced_subproblem(c, {0, 1, 2});
    CHECK(whole.structurally_equal(c));

    auto lone = induced_subproblem(c, {var(c, "X")});
    CHECK(lone.variable_count() == 1);
    CHECK(lone.constraint_count() == 0);

    auto ends = induced_subproblem(c, {var(c, "X"), var(c, "Z")});
    CHECK(ends.variable_count() == 2);
    CHECK(ends.constraint_count() == 0);

    CHECK_THROWS_AS(induced_subproblem(c, {0, 9}), InvalidSubsetError);
}

TEST_CASE("induced subproblem solutions contain the projections of full solutions")
{
    for (const auto & c : small_corpus(12, 900)) {
        auto sols = enumerate_solutions(c).solutions;
        vector<int> S;
        for (int v = 0; v < c.variable_count(); v += 2)
            S.push_back(v);
        auto sub = induced_subproblem(c, S);
        std::set<vector<int>> sub_sols;
        for (const auto & s : enumerate_solutions(sub).solutions)
            sub_sols.insert(s.values);
        for (const auto & s : sols) {
            vector<int> proj;
            for (int v : S)
                proj.push_back(s.values[v]);
            CHECK(sub_sols.count(proj));
        }
    }
}

TEST_CASE("apply_assignment pins domains and filters solutions")
{
    auto c = inst(chain_xyz);

    CHECK(apply_assignment(c, Assignment(3)).structurally_equal(c));

    auto full = apply_assignment(c, asg(c, {{"X", "a"}, {"Y", "p"}, {"Z", "r"}}));
    for (int v = 0; v < 3; ++v)
        CHECK(full.domain(v).size() == 1);

    auto one = apply_assignment(c, asg(c, {{"Y", "p"}}));
    CHECK(one.domain(var(c, "Y")) == vector<int>{val(c, "Y", "p")});
    CHECK(one.domain(var(c, "X")).size() == 2);
    CHECK(one.constraint_count() == c.constraint_count());

    CHECK_THROWS_AS(apply_assignment(c, asg(c, {{"X", "a"}, {"Y", "q"}})), InconsistentAssignmentError);
}

TEST_CASE("apply_assignment then enumerate equals filtering full solutions")
{
    for (const auto & c : small_corpus(10, 1100)) {
        auto sols = enumerate_solutions(c).solutions;
        Assignment A(c.variable_count());
        A.values[0] = c.domain(0).front();
        if (! is_consistent(c, A))
            continue;
        auto reduced = enumerate_solutions(apply_assignment(c, A)).solutions;
        vector<Assignment> filtered;
        for (const auto & s : sols)
            if (s.values[0] == A.values[0])
                filtered.push_back(s);
        CHECK(reduced == filtered);
    }
}

TEST_CASE("microstructure edges characterise pairwise consistency")
{
    auto c = inst(chain_xyz);
    auto plain = build_microstructure(c, false);
    auto modified = build_microstructure(c, true);

    for (int v = 0; v < c.variable_count(); ++v)
        for (int w = v + 1; w < c.variable_count(); ++w)
            for (int x : c.domain(v))
                for (int y : c.domain(w)) {
                    Assignment a(c.variable_count());
                    a.values[v] = x;
                    a.values[w] = y;
                    CHECK(plain.adjacent({v, x}, {w, y}) == is_consistent(c, a));
                }

    // modified adds exactly the same-variable pairs
    std::size_t intra = 0;
    for (int v = 0; v < c.variable_count(); ++v) {
        auto d = c.domain(v).size();
        intra += d * (d - 1) / 2;
    }
    CHECK(modified.edge_count() == plain.edge_count() + intra);

    CHECK_THROWS_AS(
        build_microstructure(inst("var X a\nvar Y p\nvar Z r\ncon X Y Z : allow (a,p,r)\n"), false),
        ArityUnsupportedError);
}

TEST_CASE("unconstrained variables give a complete bipartite microstructure")
{
    auto c = inst("var X a b\nvar Y p q\n");
    CHECK(build_microstructure(c, false).edge_count() == 4);
    CHECK(build_microstructure(c, true).edge_count() == 4 + 2);

    auto single = inst("var X a b\nvar Y p q\ncon X Y : allow (a,p)\n");
    CHECK(build_microstructure(single, false).edge_count() == 1);
}
