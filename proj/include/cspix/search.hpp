#ifndef CSPIX_SEARCH_HPP
#define CSPIX_SEARCH_HPP

#include <cspix/csp.hpp>
#include <cspix/oracle.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace cspix
{
    // A Cartesian-product block of solutions: one value set per variable,
    // every member of the product is a solution.
    struct SolutionBundle
    {
        std::vector<std::vector<int>> values;  // per variable, sorted

        auto covered() const -> std::uint64_t;
    };

    struct SearchStats
    {
        std::uint64_t nodes = 0;
        std::uint64_t checks = 0;
        std::uint64_t bundles = 0;
        std::uint64_t solutions = 0;
    };

    struct SearchOrders
    {
        std::optional<std::vector<int>> variables;              // permutation
        std::optional<std::vector<std::vector<int>>> values;    // per-variable permutations
    };

    // chronological backtracking with forward checking
    auto solve_plain(const CspInstance & csp, const SearchOrders & orders = {},
        std::optional<std::size_t> limit = std::nullopt) -> std::pair<SolutionSet, SearchStats>;

    // branches on blocks of the per-constraint interchangeability partitions
    // (their common refinement at the branching variable); emitted bundles
    // are disjoint and jointly cover the solution set
    auto solve_bundled(const CspInstance & csp, const SearchOrders & orders = {},
        std::optional<std::size_t> limit = std::nullopt) -> std::pair<std::vector<SolutionBundle>, SearchStats>;
}

#endif
