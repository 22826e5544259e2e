#include <cspix/microstructure.hpp>

#include <algorithm>
#include <sstream>

using std::move;
using std::pair;
using std::string;
using std::vector;

namespace cspix
{
    auto MicroStructure::adjacent(const Node & a, const Node & b) const -> bool
    {
        auto e = a < b ? pair{a, b} : pair{b, a};
        return std::binary_search(edges.begin(), edges.end(), e);
    }

    auto build_microstructure(const CspInstance & csp, bool modified) -> MicroStructure
    {
        if (csp.max_arity() > 2)
            throw ArityUnsupportedError{"microstructure requires a binary-normalised instance"};

        MicroStructure g;
        g.modified = modified;
        for (int v = 0; v < csp.variable_count(); ++v)
            for (int val : csp.domain(v))
                g.nodes.push_back({v, val});

        for (int v = 0; v < csp.variable_count(); ++v) {
            for (int w = v + 1; w < csp.variable_count(); ++w) {
                for (int x : csp.domain(v)) {
                    for (int y : csp.domain(w)) {
                        Assignment asg(csp.variable_count());
                        asg.values[v] = x;
                        asg.values[w] = y;
                        if (is_consistent(csp, asg))
                            g.edges.push_back({{v, x}, {w, y}});
                    }
                }
            }
            if (modified) {
                const auto & dom = csp.domain(v);
                for (std::size_t i = 0; i < dom.size(); ++i)
                    for (std::size_t j = i + 1; j < dom.size(); ++j)
                        g.edges.push_back({{v, dom[i]}, {v, dom[j]}});
            }
        }
        std::sort(g.edges.begin(), g.edges.end());
        return g;
    }

    auto microstructure_dot(const CspInstance & csp, const MicroStructure & graph) -> string
    {
        std::ostringstream out;
        out << "graph microstructure {\n";
        out << "  node [shape=circle];\n";
        auto id = [&](const MicroStructure::Node & n) {
            return "\"" + csp.variable_name(n.var) + ":" + csp.value_name(n.var, n.value) + "\"";
        };
        for (int v = 0; v < csp.variable_count(); ++v) {
            out << "  subgraph cluster_" << v << " {\n";
            out << "    label=\"" << csp.variable_name(v) << "\";\n";
            for (int val : csp.domain(v))
                out << "    " << id({v, val}) << " [label=\"" << csp.value_name(v, val) << "\"];\n";
            out << "  }\n";
        }
        for (const auto & [a, b] : graph.edges)
            out << "  " << id(a) << " -- " << id(b)
                << (a.var == b.var ? " [style=dashed]" : "") << ";\n";
        out << "}\n";
        return out.str();
    }
}
