#ifndef CSPIX_MICROSTRUCTURE_HPP
#define CSPIX_MICROSTRUCTURE_HPP

#include <cspix/csp.hpp>

#include <string>
#include <vector>

namespace cspix
{
    // Graph over (variable, value) nodes for binary-normalised instances.
    // An inter-variable edge means the two-value assignment is consistent;
    // the modified form additionally joins every same-variable value pair.
    struct MicroStructure
    {
        struct Node
        {
            int var;
            int value;
            auto operator<=>(const Node &) const = default;
        };

        std::vector<Node> nodes;
        std::vector<std::pair<Node, Node>> edges;  // first < second, sorted
        bool modified = false;

        auto adjacent(const Node & a, const Node & b) const -> bool;
        auto edge_count() const -> std::size_t { return edges.size(); }
    };

    // requires all constraints unary or binary, else ArityUnsupportedError
    auto build_microstructure(const CspInstance & csp, bool modified) -> MicroStructure;

    auto microstructure_dot(const CspInstance & csp, const MicroStructure & graph) -> std::string;
}

#endif
