#ifndef CSPIX_ORACLE_HPP
#define CSPIX_ORACLE_HPP

#include <cspix/csp.hpp>

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace cspix
{
    struct SolutionSet
    {
        std::vector<Assignment> solutions;  // canonical enumeration order
        bool complete = true;

        auto count() const -> std::size_t { return solutions.size(); }
    };

    // exhaustive backtracking in declaration order; a limit makes the result
    // partial (semantic checks refuse partial sets)
    auto enumerate_solutions(const CspInstance & csp, std::optional<std::size_t> limit = std::nullopt) -> SolutionSet;

    auto solvable(const CspInstance & csp) -> bool;

    // Boolean plus the evidence: the violating solution for a failed
    // universal check, the witnessing extension/solution for a successful
    // existential one.
    struct RelationResult
    {
        bool holds;
        std::optional<Assignment> witness;

        explicit operator bool() const { return holds; }
    };

    enum class ConditionalConcept { con_i, con_sub };
    enum class DynamicConcept { fdyn_i, fdyn_sub };

    // All checks are solution-level and take value ids of variable v.
    // check_sub(v, a, b) asks whether a is substitutable for b.
    auto check_fi(const CspInstance & csp, int v, int a, int b) -> RelationResult;
    auto check_sub(const CspInstance & csp, int v, int a, int b) -> RelationResult;
    auto check_pi(const CspInstance & csp, int v, int a, int b, const std::vector<int> & S) -> RelationResult;
    auto check_spr_i(const CspInstance & csp, int v, int a, int b, const std::vector<int> & S) -> RelationResult;
    auto check_ki(const CspInstance & csp, int v, int a, int b, int k) -> RelationResult;
    auto check_conditional(const CspInstance & csp, int v, int a, int b,
        const std::vector<Constraint> & extra, ConditionalConcept kind) -> RelationResult;
    auto check_fdyn(const CspInstance & csp, int v, int a, int b,
        const Assignment & assignments, DynamicConcept kind) -> RelationResult;
    auto check_ctx_dep(const CspInstance & csp, int v, int a, int b) -> RelationResult;

    // literal clique search over the modified microstructure; binary only
    auto check_ctx_dep_clique(const CspInstance & csp, int v, int a, int b) -> RelationResult;

    auto check_tup_sub(const CspInstance & csp, const std::vector<int> & R,
        const Assignment & a_side, const Assignment & b_side) -> RelationResult;

    // every consistent partial assignment leaving v unbound, in canonical
    // order (used by the ∃A forms and the equivalence suites)
    auto consistent_assignment_sets(const CspInstance & csp, int v) -> std::vector<Assignment>;

    // ∃ consistent A (v unbound): the relation holds in the reduced problem
    // and the reduced problem has a solution through the relevant value
    auto exists_nonvacuous_fdyn_i(const CspInstance & csp, int v, int a, int b) -> RelationResult;
    auto exists_nonvacuous_fdyn_sub(const CspInstance & csp, int v, int a, int b) -> RelationResult;

    auto value_in_some_solution(const CspInstance & csp, int v, int val) -> bool;
}

#endif
