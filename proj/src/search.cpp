#include <cspix/local.hpp>
#include <cspix/search.hpp>

#include <algorithm>
#include <map>

using std::move;
using std::optional;
using std::pair;
using std::vector;

namespace cspix
{
    auto SolutionBundle::covered() const -> std::uint64_t
    {
        std::uint64_t n = 1;
        for (const auto & vs : values)
            n *= vs.size();
        return n;
    }

    namespace
    {
        auto resolve_orders(const CspInstance & csp, const SearchOrders & orders)
            -> pair<vector<int>, vector<vector<int>>>
        {
            int n = csp.variable_count();
            vector<int> var_order;
            if (orders.variables) {
                var_order = *orders.variables;
                vector<bool> seen(n, false);
                if (int(var_order.size()) != n)
                    throw InvalidOrderingError{"variable order must mention every variable exactly once"};
                for (int v : var_order) {
                    if (v < 0 || v >= n || seen[v])
                        throw InvalidOrderingError{"variable order must mention every variable exactly once"};
                    seen[v] = true;
                }
            }
            else
                for (int v = 0; v < n; ++v)
                    var_order.push_back(v);

            vector<vector<int>> val_order(n);
            for (int v = 0; v < n; ++v)
                val_order[v] = csp.domain(v);
            if (orders.values) {
                if (int(orders.values->size()) != n)
                    throw InvalidOrderingError{"value orders must cover every variable"};
                for (int v = 0; v < n; ++v) {
                    auto given = (*orders.values)[v];
                    if (given.empty())
                        continue;
                    auto sorted = given;
                    std::sort(sorted.begin(), sorted.end());
                    if (sorted != csp.domain(v))
                        throw InvalidOrderingError{"value order for '" + csp.variable_name(v) +
                            "' must permute its domain"};
                    val_order[v] = given;
                }
            }
            return {var_order, val_order};
        }

        // forward-checking engine shared by both searches: "candidates" at
        // the branching variable are single values (plain) or partition
        // blocks (bundled); a block member stands for the whole block since
        // blocks have identical supports within every constraint
        struct Engine
        {
            const CspInstance & csp;
            vector<int> var_order;
            vector<vector<int>> val_order;
            SearchStats stats;

            vector<vector<char>> pruned;  // [var][value id] pruned at some level
            vector<vector<pair<int, int>>> trail;

            explicit Engine(const CspInstance & c, const SearchOrders & orders) :
                csp(c)
            {
                auto [vo, vl] = resolve_orders(c, orders);
                var_order = vo;
                val_order = vl;
                pruned.resize(c.variable_count());
                for (int v = 0; v < c.variable_count(); ++v)
                    pruned[v].assign(c.symbol_count(v), 0);
            }

            auto alive(int var, int val) const -> bool { return ! pruned[var][val]; }

            auto live_values(int var) const -> vector<int>
            {
                vector<int> out;
                for (int val : val_order[var])
                    if (alive(var, val))
                        out.push_back(val);
                return out;
            }

            // prune future domains against the representative of the chosen
            // block; returns false on a wipe-out
            auto forward_check(const vector<int> & assigned_pos, const Assignment & asg, int depth) -> bool
            {
                trail.emplace_back();
                for (int c = 0; c < csp.constraint_count(); ++c) {
                    const auto & con = csp.constraint(c);
                    int unbound = -1;
                    bool relevant = false;
                    for (int w : con.scope) {
                        if (! asg.bound(w)) {
                            if (unbound != -1) {
                                unbound = -2;
                                break;
                            }
                            unbound = w;
                        }
                        else if (assigned_pos[w] == depth)
                            relevant = true;
                    }
                    if (unbound == -2 || ! relevant)
                        continue;
                    if (unbound == -1)
                        continue;  // fully bound constraints were checked on assignment
                    vector<int> tuple(con.scope.size());
                    for (int val : live_values(unbound)) {
                        for (std::size_t i = 0; i < con.scope.size(); ++i)
                            tuple[i] = con.scope[i] == unbound ? val : asg.values[con.scope[i]];
                        ++stats.checks;
                        if (! con.satisfied(tuple)) {
                            pruned[unbound][val] = 1;
                            trail.back().emplace_back(unbound, val);
                        }
                    }
                    if (live_values(unbound).empty())
                        return false;
                }
                return true;
            }

            auto undo() -> void
            {
                for (auto [var, val] : trail.back())
                    pruned[var][val] = 0;
                trail.pop_back();
            }

            auto consistent_with_past(const Assignment & asg, int var, int val) -> bool
            {
                vector<int> tuple;
                for (int c : csp.constraints_on(var)) {
                    const auto & con = csp.constraint(c);
                    bool full = true;
                    tuple.clear();
                    for (int w : con.scope) {
                        int bound = w == var ? val : asg.values[w];
                        if (bound == Assignment::unbound) {
                            full = false;
                            break;
                        }
                        tuple.push_back(bound);
                    }
                    if (full) {
                        ++stats.checks;
                        if (! con.satisfied(tuple))
                            return false;
                    }
                }
                return true;
            }
        };
    }

    auto solve_plain(const CspInstance & csp, const SearchOrders & orders, optional<std::size_t> limit)
        -> pair<SolutionSet, SearchStats>
    {
        Engine eng{csp, orders};
        SolutionSet result;
        int n = csp.variable_count();
        Assignment asg(n);
        vector<int> assigned_pos(n, -1);
        bool aborted = false;

        auto rec = [&](auto && self, int depth) -> void {
            if (aborted)
                return;
            if (depth == n) {
                result.solutions.push_back(asg);
                ++eng.stats.solutions;
                if (limit && result.solutions.size() >= *limit)
                    aborted = true;
                return;
            }
            int var = eng.var_order[depth];
            for (int val : eng.live_values(var)) {
                ++eng.stats.nodes;
                if (! eng.consistent_with_past(asg, var, val))
                    continue;
                asg.values[var] = val;
                assigned_pos[var] = depth;
                if (eng.forward_check(assigned_pos, asg, depth))
                    self(self, depth + 1);
                eng.undo();
                asg.values[var] = Assignment::unbound;
                assigned_pos[var] = -1;
                if (aborted)
                    return;
            }
        };
        rec(rec, 0);
        result.complete = ! aborted;
        std::sort(result.solutions.begin(), result.solutions.end());
        return {result, eng.stats};
    }

    auto solve_bundled(const CspInstance & csp, const SearchOrders & orders, optional<std::size_t> limit)
        -> pair<vector<SolutionBundle>, SearchStats>
    {
        Engine eng{csp, orders};
        int n = csp.variable_count();

        // static per-constraint partitions; block key of a value is its
        // block index across all constraints on the variable
        vector<vector<vector<int>>> block_key(n);
        for (int v = 0; v < n; ++v) {
            block_key[v].assign(csp.symbol_count(v), {});
            for (int c : csp.constraints_on(v)) {
                auto part = nic_classes(csp, v, c);
                for (int val : csp.domain(v))
                    block_key[v][val].push_back(part.block_of(val));
            }
        }

        vector<SolutionBundle> bundles;
        Assignment asg(n);  // representative member per chosen block
        vector<vector<int>> chosen(n);
        vector<int> assigned_pos(n, -1);
        bool aborted = false;

        auto blocks_at = [&](int var) {
            // group the live values by their static block key, preserving
            // value order; the common refinement across the constraints
            vector<vector<int>> out;
            std::map<vector<int>, int> index;
            for (int val : eng.live_values(var)) {
                auto [it, fresh] = index.try_emplace(block_key[var][val], int(out.size()));
                if (fresh)
                    out.push_back({val});
                else
                    out[it->second].push_back(val);
            }
            return out;
        };

        auto rec = [&](auto && self, int depth) -> void {
            if (aborted)
                return;
            if (depth == n) {
                SolutionBundle bundle;
                bundle.values.resize(n);
                for (int v = 0; v < n; ++v)
                    bundle.values[v] = chosen[v];
                eng.stats.solutions += bundle.covered();
                ++eng.stats.bundles;
                bundles.push_back(move(bundle));
                if (limit && bundles.size() >= *limit)
                    aborted = true;
                return;
            }
            int var = eng.var_order[depth];
            for (const auto & block : blocks_at(var)) {
                ++eng.stats.nodes;
                if (! eng.consistent_with_past(asg, var, block.front()))
                    continue;
                asg.values[var] = block.front();
                chosen[var] = block;
                std::sort(chosen[var].begin(), chosen[var].end());
                assigned_pos[var] = depth;
                if (eng.forward_check(assigned_pos, asg, depth))
                    self(self, depth + 1);
                eng.undo();
                asg.values[var] = Assignment::unbound;
                assigned_pos[var] = -1;
                if (aborted)
                    return;
            }
        };
        rec(rec, 0);
        return {bundles, eng.stats};
    }
}
