#include <cspix/microstructure.hpp>
#include <cspix/oracle.hpp>

#include <algorithm>

using std::move;
using std::map;
using std::optional;
using std::set;
using std::vector;

namespace cspix
{
    namespace
    {
        auto require_value(const CspInstance & csp, int v, int val) -> void
        {
            if (v < 0 || v >= csp.variable_count())
                throw InvalidParameterError{"variable index out of range"};
            if (! csp.in_domain(v, val))
                throw InvalidValueError{"value is not in the domain of '" + csp.variable_name(v) + "'"};
        }

        auto require_subset(const CspInstance & csp, int v, const vector<int> & S) -> set<int>
        {
            set<int> s;
            for (int w : S) {
                if (w < 0 || w >= csp.variable_count())
                    throw InvalidSubsetError{"subset references an unknown variable"};
                s.insert(w);
            }
            if (! s.count(v))
                throw InvalidSubsetError{"the subset must contain the checked variable"};
            return s;
        }

        // solutions keyed by everything-but-v, mapped to the v values present
        auto completions(const CspInstance & csp, const vector<Assignment> & sols, int v)
            -> map<vector<int>, set<int>>
        {
            map<vector<int>, set<int>> out;
            vector<int> key;
            for (const auto & s : sols) {
                key.clear();
                for (int w = 0; w < csp.variable_count(); ++w)
                    if (w != v)
                        key.push_back(s.values[w]);
                out[key].insert(s.values[v]);
            }
            return out;
        }

        auto extension_to_solution(const CspInstance & csp, int v, const vector<int> & key, int val) -> Assignment
        {
            Assignment s(csp.variable_count());
            std::size_t i = 0;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (w != v)
                    s.values[w] = key[i++];
            s.values[v] = val;
            return s;
        }

        auto filter_by(const vector<Assignment> & sols, const Assignment & partial) -> vector<Assignment>
        {
            vector<Assignment> out;
            for (const auto & s : sols) {
                bool ok = true;
                for (std::size_t v = 0; v < partial.values.size(); ++v)
                    if (partial.values[v] != Assignment::unbound && partial.values[v] != s.values[v]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    out.push_back(s);
            }
            return out;
        }

        auto fi_over(const CspInstance & csp, const vector<Assignment> & sols, int v, int a, int b) -> RelationResult
        {
            for (const auto & [key, vals] : completions(csp, sols, v)) {
                bool has_a = vals.count(a), has_b = vals.count(b);
                if (has_a != has_b)
                    return {false, extension_to_solution(csp, v, key, has_a ? a : b)};
            }
            return {true, std::nullopt};
        }

        auto sub_over(const CspInstance & csp, const vector<Assignment> & sols, int v, int a, int b) -> RelationResult
        {
            for (const auto & [key, vals] : completions(csp, sols, v))
                if (vals.count(b) && ! vals.count(a))
                    return {false, extension_to_solution(csp, v, key, b)};
            return {true, std::nullopt};
        }
    }

    auto enumerate_solutions(const CspInstance & csp, optional<std::size_t> limit) -> SolutionSet
    {
        SolutionSet result;
        int n = csp.variable_count();

        // constraints become checkable once their last scope variable binds
        vector<vector<int>> ready(n);
        for (int c = 0; c < csp.constraint_count(); ++c)
            ready[csp.constraint(c).scope.back()].push_back(c);

        Assignment asg(n);
        vector<int> tuple;
        bool aborted = false;
        auto rec = [&](auto && self, int depth) -> void {
            if (aborted)
                return;
            if (depth == n) {
                result.solutions.push_back(asg);
                if (limit && result.solutions.size() >= *limit)
                    aborted = true;
                return;
            }
            for (int val : csp.domain(depth)) {
                asg.values[depth] = val;
                bool ok = true;
                for (int c : ready[depth]) {
                    tuple.clear();
                    for (int w : csp.constraint(c).scope)
                        tuple.push_back(asg.values[w]);
                    if (! csp.constraint(c).satisfied(tuple)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    self(self, depth + 1);
                if (aborted)
                    break;
            }
            asg.values[depth] = Assignment::unbound;
        };
        rec(rec, 0);
        result.complete = ! aborted;
        return result;
    }

    auto solvable(const CspInstance & csp) -> bool
    {
        return enumerate_solutions(csp, 1).count() > 0;
    }

    auto value_in_some_solution(const CspInstance & csp, int v, int val) -> bool
    {
        for (const auto & s : enumerate_solutions(csp).solutions)
            if (s.values[v] == val)
                return true;
        return false;
    }

    auto check_fi(const CspInstance & csp, int v, int a, int b) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        return fi_over(csp, enumerate_solutions(csp).solutions, v, a, b);
    }

    auto check_sub(const CspInstance & csp, int v, int a, int b) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        return sub_over(csp, enumerate_solutions(csp).solutions, v, a, b);
    }

    auto check_pi(const CspInstance & csp, int v, int a, int b, const vector<int> & S) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        auto inside = require_subset(csp, v, S);

        // group solutions by their values outside S; within a group the pair
        // must be jointly present or jointly absent
        struct Group
        {
            optional<Assignment> with_a, with_b;
        };
        map<vector<int>, Group> groups;
        for (const auto & s : enumerate_solutions(csp).solutions) {
            vector<int> key;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (! inside.count(w))
                    key.push_back(s.values[w]);
            auto & g = groups[key];
            if (s.values[v] == a && ! g.with_a)
                g.with_a = s;
            if (s.values[v] == b && ! g.with_b)
                g.with_b = s;
        }
        for (const auto & [key, g] : groups) {
            if (g.with_a.has_value() != g.with_b.has_value())
                return {false, g.with_a ? g.with_a : g.with_b};
        }
        return {true, std::nullopt};
    }

    auto check_spr_i(const CspInstance & csp, int v, int a, int b, const vector<int> & S) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        auto inside = require_subset(csp, v, S);

        vector<int> vars(inside.begin(), inside.end());
        auto sub = induced_subproblem(csp, vars);
        int v_sub = sub.variable_index(csp.variable_name(v));
        auto r = check_fi(sub, v_sub, a, b);
        if (r.holds || ! r.witness)
            return r;
        Assignment w(csp.variable_count());
        for (std::size_t i = 0; i < vars.size(); ++i)
            w.values[vars[i]] = r.witness->values[i];
        return {false, w};
    }

    auto check_ki(const CspInstance & csp, int v, int a, int b, int k) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        int n = csp.variable_count();
        if (k < 2 || k > n)
            throw InvalidParameterError{"k must be between 2 and the number of variables"};

        vector<int> others;
        for (int w = 0; w < n; ++w)
            if (w != v)
                others.push_back(w);

        RelationResult result{true, std::nullopt};
        vector<int> chosen;
        auto rec = [&](auto && self, std::size_t start) -> bool {
            if (int(chosen.size()) == k - 1) {
                vector<int> vars = chosen;
                vars.push_back(v);
                std::sort(vars.begin(), vars.end());
                auto r = check_spr_i(csp, v, a, b, vars);
                if (! r.holds) {
                    result = r;
                    return false;
                }
                return true;
            }
            for (std::size_t i = start; i < others.size(); ++i) {
                chosen.push_back(others[i]);
                bool keep = self(self, i + 1);
                chosen.pop_back();
                if (! keep)
                    return false;
            }
            return true;
        };
        rec(rec, 0);
        return result;
    }

    auto check_conditional(const CspInstance & csp, int v, int a, int b,
        const vector<Constraint> & extra, ConditionalConcept kind) -> RelationResult
    {
        auto conditioned = csp.with_extra_constraints(extra);
        switch (kind) {
        case ConditionalConcept::con_i: return check_fi(conditioned, v, a, b);
        case ConditionalConcept::con_sub: return check_sub(conditioned, v, a, b);
        }
        throw InvalidParameterError{"unknown conditional concept"};
    }

    auto check_fdyn(const CspInstance & csp, int v, int a, int b,
        const Assignment & assignments, DynamicConcept kind) -> RelationResult
    {
        if (assignments.bound(v))
            throw InvalidParameterError{"the checked variable must be unassigned in A"};
        auto reduced = apply_assignment(csp, assignments);
        switch (kind) {
        case DynamicConcept::fdyn_i: return check_fi(reduced, v, a, b);
        case DynamicConcept::fdyn_sub: return check_sub(reduced, v, a, b);
        }
        throw InvalidParameterError{"unknown dynamic concept"};
    }

    auto check_ctx_dep(const CspInstance & csp, int v, int a, int b) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        for (const auto & [key, vals] : completions(csp, enumerate_solutions(csp).solutions, v))
            if (vals.count(a) && vals.count(b)) {
                auto w = extension_to_solution(csp, v, key, a);
                w.values[v] = Assignment::unbound;
                return {true, w};
            }
        return {false, std::nullopt};
    }

    auto check_ctx_dep_clique(const CspInstance & csp, int v, int a, int b) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        auto graph = build_microstructure(csp, true);
        using Node = MicroStructure::Node;

        if (a != b && ! graph.adjacent({v, a}, {v, b}))
            return {false, std::nullopt};

        // grow a solution clique containing (v,a) and (v,b): one node per
        // remaining variable, adjacent to everything chosen so far
        vector<Node> chosen{{v, a}};
        if (b != a)
            chosen.push_back({v, b});
        Assignment witness(csp.variable_count());

        auto rec = [&](auto && self, int var) -> bool {
            if (var == csp.variable_count())
                return true;
            if (var == v)
                return self(self, var + 1);
            for (int val : csp.domain(var)) {
                Node cand{var, val};
                bool ok = true;
                for (const auto & n : chosen)
                    if (! graph.adjacent(n, cand)) {
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                chosen.push_back(cand);
                witness.values[var] = val;
                if (self(self, var + 1))
                    return true;
                chosen.pop_back();
                witness.values[var] = Assignment::unbound;
            }
            return false;
        };
        if (rec(rec, 0))
            return {true, witness};
        return {false, std::nullopt};
    }

    auto check_tup_sub(const CspInstance & csp, const vector<int> & R,
        const Assignment & a_side, const Assignment & b_side) -> RelationResult
    {
        set<int> rset(R.begin(), R.end());
        for (int w : R)
            if (w < 0 || w >= csp.variable_count())
                throw InvalidParameterError{"tuple variable out of range"};
        for (int w = 0; w < csp.variable_count(); ++w) {
            bool should = rset.count(w);
            if (a_side.bound(w) != should || b_side.bound(w) != should)
                throw InvalidParameterError{"tuples must bind exactly the given variable set"};
        }

        auto sols = enumerate_solutions(csp).solutions;
        auto project_outside = [&](const Assignment & s) {
            vector<int> key;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (! rset.count(w))
                    key.push_back(s.values[w]);
            return key;
        };

        set<vector<int>> a_projections;
        for (const auto & s : filter_by(sols, a_side))
            a_projections.insert(project_outside(s));
        for (const auto & s : filter_by(sols, b_side))
            if (! a_projections.count(project_outside(s)))
                return {false, s};
        return {true, std::nullopt};
    }

    auto consistent_assignment_sets(const CspInstance & csp, int v) -> vector<Assignment>
    {
        std::size_t bound = 1;
        for (int w = 0; w < csp.variable_count(); ++w)
            if (w != v) {
                bound *= csp.domain(w).size() + 1;
                if (bound > (std::size_t{1} << 20))
                    throw SizeGuardError{"too many assignment sets to enumerate"};
            }

        vector<Assignment> out;
        Assignment asg(csp.variable_count());
        auto rec = [&](auto && self, int var) -> void {
            if (var == csp.variable_count()) {
                if (is_consistent(csp, asg))
                    out.push_back(asg);
                return;
            }
            if (var == v) {
                self(self, var + 1);
                return;
            }
            asg.values[var] = Assignment::unbound;
            self(self, var + 1);
            for (int val : csp.domain(var)) {
                asg.values[var] = val;
                self(self, var + 1);
            }
            asg.values[var] = Assignment::unbound;
        };
        rec(rec, 0);
        return out;
    }

    auto exists_nonvacuous_fdyn_i(const CspInstance & csp, int v, int a, int b) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        auto sols = enumerate_solutions(csp).solutions;
        for (const auto & A : consistent_assignment_sets(csp, v)) {
            auto reduced_sols = filter_by(sols, A);
            bool through = false;
            for (const auto & s : reduced_sols)
                if (s.values[v] == a || s.values[v] == b) {
                    through = true;
                    break;
                }
            if (! through)
                continue;
            if (fi_over(csp, reduced_sols, v, a, b).holds)
                return {true, A};
        }
        return {false, std::nullopt};
    }

    auto exists_nonvacuous_fdyn_sub(const CspInstance & csp, int v, int a, int b) -> RelationResult
    {
        require_value(csp, v, a);
        require_value(csp, v, b);
        auto sols = enumerate_solutions(csp).solutions;
        for (const auto & A : consistent_assignment_sets(csp, v)) {
            auto reduced_sols = filter_by(sols, A);
            bool through_b = false;
            for (const auto & s : reduced_sols)
                if (s.values[v] == b) {
                    through_b = true;
                    break;
                }
            if (! through_b)
                continue;
            if (sub_over(csp, reduced_sols, v, a, b).holds)
                return {true, A};
        }
        return {false, std::nullopt};
    }
}
