#include <cspix/local.hpp>
#include <cspix/oracle.hpp>

#include <algorithm>
#include <set>

using std::move;
using std::map;
using std::optional;
using std::pair;
using std::set;
using std::vector;

namespace cspix
{
    namespace
    {
        auto product_over(const CspInstance & csp, const vector<int> & vars,
            const std::function<void(const vector<int> &)> & fn) -> void
        {
            vector<int> tuple(vars.size());
            auto rec = [&](auto && self, std::size_t pos) -> void {
                if (pos == vars.size()) {
                    fn(tuple);
                    return;
                }
                for (int val : csp.domain(vars[pos])) {
                    tuple[pos] = val;
                    self(self, pos + 1);
                }
            };
            rec(rec, 0);
        }

        auto scope_minus(const Constraint & c, int v) -> vector<int>
        {
            vector<int> others;
            for (int w : c.scope)
                if (w != v)
                    others.push_back(w);
            return others;
        }

        auto merge_at(const Constraint & c, int v, const vector<int> & others_tuple, int x) -> vector<int>
        {
            vector<int> full;
            std::size_t j = 0;
            for (int w : c.scope)
                full.push_back(w == v ? x : others_tuple[j++]);
            return full;
        }

        auto position_of(const Constraint & c, int v) -> int
        {
            for (std::size_t i = 0; i < c.scope.size(); ++i)
                if (c.scope[i] == v)
                    return int(i);
            throw InvalidParameterError{"variable '" + std::to_string(v) + "' is not in the constraint scope"};
        }

        auto check_variable(const CspInstance & csp, int v) -> void
        {
            if (v < 0 || v >= csp.variable_count())
                throw InvalidParameterError{"variable index out of range"};
        }
    }

    auto Partition::block_of(int value) const -> int
    {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (int v : blocks[i])
                if (v == value)
                    return int(i);
        throw InvalidValueError{"value is not covered by the partition"};
    }

    auto Partition::nontrivial() const -> bool
    {
        for (const auto & b : blocks)
            if (b.size() > 1)
                return true;
        return false;
    }

    auto DiscriminationTree::build(const CspInstance & csp, int v, const vector<int> & constraints)
        -> DiscriminationTree
    {
        check_variable(csp, v);
        DiscriminationTree tree;
        tree.variable_ = v;
        tree.nodes_.push_back({});

        for (int x : csp.domain(v)) {
            // evaluate every candidate annotation against x; the positives,
            // sorted canonically, form x's path through the trie
            vector<Annotation> path;
            for (int c : constraints) {
                const auto & con = csp.constraint(c);
                auto others = scope_minus(con, v);
                product_over(csp, others, [&](const vector<int> & t) {
                    ++tree.visits_;
                    if (con.satisfied(merge_at(con, v, t, x)))
                        path.push_back({others, t, c});
                });
            }
            std::sort(path.begin(), path.end());

            int node = 0;
            for (const auto & anno : path) {
                auto [it, fresh] = tree.nodes_[node].children.try_emplace(anno, int(tree.nodes_.size()));
                if (fresh) {
                    Node n;
                    n.label = anno;
                    int id = it->second;
                    tree.nodes_.push_back(move(n));
                    node = id;
                }
                else
                    node = it->second;
            }
            tree.nodes_[node].values.push_back(x);
        }
        return tree;
    }

    auto DiscriminationTree::partition() const -> Partition
    {
        Partition p;
        p.variable = variable_;
        for (const auto & n : nodes_)
            if (! n.values.empty())
                p.blocks.push_back(n.values);
        std::sort(p.blocks.begin(), p.blocks.end());
        return p;
    }

    auto supports_wrt(const CspInstance & csp, int c, int v, int x) -> vector<vector<int>>
    {
        const auto & con = csp.constraint(c);
        auto others = scope_minus(con, v);
        vector<vector<int>> out;
        product_over(csp, others, [&](const vector<int> & t) {
            if (con.satisfied(merge_at(con, v, t, x)))
                out.push_back(t);
        });
        return out;
    }

    auto ni_tree(const CspInstance & csp, int v) -> DiscriminationTree
    {
        check_variable(csp, v);
        return DiscriminationTree::build(csp, v, csp.constraints_on(v));
    }

    auto ni_classes(const CspInstance & csp, int v) -> Partition
    {
        return ni_tree(csp, v).partition();
    }

    namespace
    {
        // A unary constraint on v sits inside every boundary yet must accept
        // both exchanged values no matter which other variables change, so
        // it always counts as crossing; without this the boundary forms
        // overreach on unary-bearing instances.
        auto crossing_constraints_on(const CspInstance & csp, int v, const set<int> & S) -> vector<int>
        {
            vector<int> out;
            for (int c : csp.constraints_on(v)) {
                const auto & con = csp.constraint(c);
                if (con.arity() == 1) {
                    out.push_back(c);
                    continue;
                }
                for (int w : con.scope)
                    if (! S.count(w)) {
                        out.push_back(c);
                        break;
                    }
            }
            return out;
        }

        auto boundary_set(const CspInstance & csp, int v, const vector<int> & S) -> set<int>
        {
            set<int> inside;
            for (int w : S) {
                if (w < 0 || w >= csp.variable_count())
                    throw InvalidSubsetError{"boundary references an unknown variable"};
                inside.insert(w);
            }
            if (! inside.count(v))
                throw InvalidSubsetError{"the boundary must contain the variable"};
            return inside;
        }
    }

    auto npi_tree(const CspInstance & csp, int v, const vector<int> & S) -> DiscriminationTree
    {
        auto inside = boundary_set(csp, v, S);
        return DiscriminationTree::build(csp, v, crossing_constraints_on(csp, v, inside));
    }

    auto npi_classes(const CspInstance & csp, int v, const vector<int> & S) -> Partition
    {
        return npi_tree(csp, v, S).partition();
    }

    auto nic_classes(const CspInstance & csp, int v, int c) -> Partition
    {
        check_variable(csp, v);
        if (c < 0 || c >= csp.constraint_count())
            throw InvalidParameterError{"constraint index out of range"};
        position_of(csp.constraint(c), v);
        return DiscriminationTree::build(csp, v, {c}).partition();
    }

    namespace
    {
        auto containment_pairs(const CspInstance & csp, int v, const vector<int> & constraints)
            -> vector<pair<int, int>>
        {
            map<int, vector<vector<vector<int>>>> supp;
            for (int x : csp.domain(v)) {
                auto & per = supp[x];
                for (int c : constraints)
                    per.push_back(supports_wrt(csp, c, v, x));
            }
            vector<pair<int, int>> out;
            for (int a : csp.domain(v))
                for (int b : csp.domain(v)) {
                    bool contained = true;
                    for (std::size_t i = 0; i < constraints.size() && contained; ++i)
                        contained = std::includes(supp[a][i].begin(), supp[a][i].end(),
                            supp[b][i].begin(), supp[b][i].end());
                    if (contained)
                        out.emplace_back(a, b);
                }
            return out;
        }
    }

    auto nsubc_pairs(const CspInstance & csp, int v, int c) -> vector<pair<int, int>>
    {
        check_variable(csp, v);
        if (c < 0 || c >= csp.constraint_count())
            throw InvalidParameterError{"constraint index out of range"};
        position_of(csp.constraint(c), v);
        return containment_pairs(csp, v, {c});
    }

    auto nsub_pairs(const CspInstance & csp, int v) -> vector<pair<int, int>>
    {
        check_variable(csp, v);
        return containment_pairs(csp, v, csp.constraints_on(v));
    }

    auto gnsub_pairs(const CspInstance & csp, int v, GnsubMode mode) -> vector<pair<int, int>>
    {
        check_variable(csp, v);
        vector<pair<int, int>> out;
        if (mode == GnsubMode::per_constraint) {
            for (int a : csp.domain(v))
                for (int b : csp.domain(v)) {
                    bool shared = true;
                    for (int c : csp.constraints_on(v)) {
                        auto sa = supports_wrt(csp, c, v, a);
                        auto sb = supports_wrt(csp, c, v, b);
                        vector<vector<int>> inter;
                        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(inter));
                        if (inter.empty()) {
                            shared = false;
                            break;
                        }
                    }
                    if (shared)
                        out.emplace_back(a, b);
                }
            return out;
        }

        // per-variable reading: one pairwise-consistent neighbour value in
        // common for each neighbouring variable
        for (int a : csp.domain(v))
            for (int b : csp.domain(v)) {
                bool shared = true;
                for (int w : csp.neighbours(v)) {
                    bool found = false;
                    for (int j : csp.domain(w)) {
                        Assignment asg_a(csp.variable_count()), asg_b(csp.variable_count());
                        asg_a.values[v] = a;
                        asg_a.values[w] = j;
                        asg_b.values[v] = b;
                        asg_b.values[w] = j;
                        if (is_consistent(csp, asg_a) && is_consistent(csp, asg_b)) {
                            found = true;
                            break;
                        }
                    }
                    if (! found) {
                        shared = false;
                        break;
                    }
                }
                if (shared)
                    out.emplace_back(a, b);
            }
        return out;
    }

    namespace
    {
        auto successors_boundary(const CspInstance & csp, int v, const vector<int> & ordering) -> vector<int>
        {
            if (int(ordering.size()) != csp.variable_count())
                throw InvalidOrderingError{"ordering must mention every variable exactly once"};
            vector<bool> seen(csp.variable_count(), false);
            for (int w : ordering) {
                if (w < 0 || w >= csp.variable_count() || seen[w])
                    throw InvalidOrderingError{"ordering must mention every variable exactly once"};
                seen[w] = true;
            }
            vector<int> S{v};
            bool after = false;
            for (int w : ordering) {
                if (w == v) {
                    after = true;
                    continue;
                }
                if (after)
                    S.push_back(w);
            }
            std::sort(S.begin(), S.end());
            return S;
        }
    }

    // directional forms are the boundary forms with S = {v} + successors:
    // the preceding supports are exactly the crossing supports
    auto diri_classes(const CspInstance & csp, int v, const vector<int> & ordering) -> Partition
    {
        check_variable(csp, v);
        return npi_classes(csp, v, successors_boundary(csp, v, ordering));
    }

    auto dirsub_pairs(const CspInstance & csp, int v, const vector<int> & ordering) -> vector<pair<int, int>>
    {
        check_variable(csp, v);
        auto S = successors_boundary(csp, v, ordering);
        set<int> inside(S.begin(), S.end());
        return containment_pairs(csp, v, crossing_constraints_on(csp, v, inside));
    }

    // --- NS-Closure ----------------------------------------------------------

    namespace
    {
        struct ClosureState
        {
            const CspInstance & original;
            vector<vector<int>> domains;           // current domains
            vector<vector<bool>> alive;            // var -> symbol id -> alive
            vector<vector<Annotation>> candidates; // per variable, canonical order
            std::uint64_t probes = 0;

            explicit ClosureState(const CspInstance & csp) :
                original(csp)
            {
                for (int v = 0; v < csp.variable_count(); ++v) {
                    domains.push_back(csp.domain(v));
                    vector<bool> a(csp.symbol_count(v), false);
                    for (int val : csp.domain(v))
                        a[val] = true;
                    alive.push_back(move(a));

                    vector<Annotation> cands;
                    for (int c : csp.constraints_on(v)) {
                        const auto & con = csp.constraint(c);
                        auto others = scope_minus(con, v);
                        vector<int> tuple(others.size());
                        auto rec = [&](auto && self, std::size_t pos) -> void {
                            if (pos == others.size()) {
                                cands.push_back({others, tuple, c});
                                return;
                            }
                            for (int val : csp.domain(others[pos])) {
                                tuple[pos] = val;
                                self(self, pos + 1);
                            }
                        };
                        rec(rec, 0);
                    }
                    std::sort(cands.begin(), cands.end());
                    candidates.push_back(move(cands));
                }
            }

            auto live(const Annotation & anno) const -> bool
            {
                for (std::size_t i = 0; i < anno.other_vars.size(); ++i)
                    if (! alive[anno.other_vars[i]][anno.tuple[i]])
                        return false;
                return true;
            }

            auto is_splitter(int v, const Annotation & anno, int a, int b) -> bool
            {
                ++probes;
                const auto & con = original.constraint(anno.constraint);
                return con.satisfied(merge_at(con, v, anno.tuple, a)) &&
                    ! con.satisfied(merge_at(con, v, anno.tuple, b));
            }
        };
    }

    auto find_splitter(const CspInstance & csp, int v, int a, int b) -> optional<Annotation>
    {
        check_variable(csp, v);
        for (int c : csp.constraints_on(v)) {
            const auto & con = csp.constraint(c);
            auto others = scope_minus(con, v);
            optional<Annotation> found;
            product_over(csp, others, [&](const vector<int> & t) {
                if (found)
                    return;
                if (con.satisfied(merge_at(con, v, t, a)) && ! con.satisfied(merge_at(con, v, t, b)))
                    found = Annotation{others, t, c};
            });
            if (found)
                return found;
        }
        return std::nullopt;
    }

    auto ns_closure(const CspInstance & csp) -> NsClosureResult
    {
        ClosureState state{csp};
        int n = csp.variable_count();

        struct PairState
        {
            std::size_t ptr = 0;
            optional<Annotation> splitter;
        };
        vector<map<pair<int, int>, PairState>> pairs(n);
        set<std::tuple<int, int, int>> worklist;
        for (int v = 0; v < n; ++v)
            for (int a : csp.domain(v))
                for (int b : csp.domain(v))
                    if (a != b) {
                        pairs[v][{a, b}] = {};
                        worklist.insert({v, a, b});
                    }

        vector<Removal> log;

        auto scan_free = [&](int v, int a, int b) -> bool {
            // direct scan: does (a,b) have a live splitter at all?
            for (const auto & anno : state.candidates[v])
                if (state.live(anno) && state.is_splitter(v, anno, a, b))
                    return false;
            return true;
        };

        auto remove_value = [&](int v, int victim, int kept, bool tie) {
            state.alive[v][victim] = false;
            auto & dom = state.domains[v];
            dom.erase(std::remove(dom.begin(), dom.end(), victim), dom.end());
            log.push_back({v, victim, kept, tie});

            // drop dead pairs, requeue pairs whose stored splitter died
            for (int w = 0; w < n; ++w) {
                for (auto it = pairs[w].begin(); it != pairs[w].end();) {
                    auto [x, y] = it->first;
                    if (w == v && (x == victim || y == victim)) {
                        worklist.erase({w, x, y});
                        it = pairs[w].erase(it);
                        continue;
                    }
                    if (it->second.splitter && ! state.live(*it->second.splitter)) {
                        it->second.splitter = std::nullopt;
                        worklist.insert({w, x, y});
                    }
                    ++it;
                }
            }
        };

        while (! worklist.empty()) {
            auto [v, a, b] = *worklist.begin();
            worklist.erase(worklist.begin());
            auto it = pairs[v].find({a, b});
            if (it == pairs[v].end())
                continue;
            auto & ps = it->second;
            if (ps.splitter && state.live(*ps.splitter))
                continue;

            const auto & cands = state.candidates[v];
            while (ps.ptr < cands.size()) {
                const auto & anno = cands[ps.ptr];
                // dead or non-splitter candidates never recover; move on
                if (state.live(anno) && state.is_splitter(v, anno, a, b)) {
                    ps.splitter = anno;
                    break;
                }
                ++ps.ptr;
            }
            if (ps.splitter)
                continue;

            // no splitter: the supports of a are contained in those of b
            bool tie = scan_free(v, b, a);
            int victim = tie ? std::max(a, b) : a;
            int kept = victim == a ? b : a;
            remove_value(v, victim, kept, tie);
        }

        NsClosureResult result{make_reduced(csp, state.domains), {}, move(log), state.probes};
        result.table.splitters.resize(n);
        for (int v = 0; v < n; ++v)
            for (const auto & [key, ps] : pairs[v])
                if (ps.splitter)
                    result.table.splitters[v].emplace(key, *ps.splitter);
        return result;
    }

    // --- tuple-level detectors -------------------------------------------------

    namespace
    {
        // per crossing constraint: projections onto scope minus S of live
        // satisfied tuples agreeing with t on scope-within-S
        auto crossing_key(const CspInstance & csp, const set<int> & S,
            const vector<int> & crossing, const map<int, int> & binding)
            -> vector<vector<vector<int>>>
        {
            vector<vector<vector<int>>> key;
            for (int c : crossing) {
                const auto & con = csp.constraint(c);
                vector<int> inside_pos, outside_pos;
                for (std::size_t i = 0; i < con.scope.size(); ++i)
                    (S.count(con.scope[i]) ? inside_pos : outside_pos).push_back(int(i));

                vector<vector<int>> projections;
                vector<int> full(con.scope.size());
                auto rec = [&](auto && self, std::size_t pos) -> void {
                    if (pos == con.scope.size()) {
                        if (! con.satisfied(full))
                            return;
                        vector<int> proj;
                        for (int i : outside_pos)
                            proj.push_back(full[i]);
                        projections.push_back(move(proj));
                        return;
                    }
                    int var = con.scope[pos];
                    if (S.count(var)) {
                        full[pos] = binding.at(var);
                        self(self, pos + 1);
                    }
                    else
                        for (int val : csp.domain(var)) {
                            full[pos] = val;
                            self(self, pos + 1);
                        }
                };
                rec(rec, 0);
                std::sort(projections.begin(), projections.end());
                projections.erase(std::unique(projections.begin(), projections.end()), projections.end());
                key.push_back(move(projections));
            }
            return key;
        }

        auto crossing_of_set(const CspInstance & csp, const set<int> & S) -> vector<int>
        {
            vector<int> out;
            for (int c = 0; c < csp.constraint_count(); ++c) {
                bool touches = false, leaves = false;
                for (int w : csp.constraint(c).scope)
                    (S.count(w) ? touches : leaves) = true;
                if (touches && leaves)
                    out.push_back(c);
            }
            return out;
        }

        auto consistent_tuples_over(const CspInstance & csp, const vector<int> & vars, int v, int x)
            -> vector<Assignment>
        {
            vector<Assignment> out;
            Assignment asg(csp.variable_count());
            asg.values[v] = x;
            auto rec = [&](auto && self, std::size_t pos) -> void {
                if (pos == vars.size()) {
                    if (is_consistent(csp, asg))
                        out.push_back(asg);
                    return;
                }
                if (vars[pos] == v) {
                    self(self, pos + 1);
                    return;
                }
                for (int val : csp.domain(vars[pos])) {
                    asg.values[vars[pos]] = val;
                    self(self, pos + 1);
                }
                asg.values[vars[pos]] = Assignment::unbound;
            };
            rec(rec, 0);
            return out;
        }
    }

    auto nti_check(const CspInstance & csp, int v, int a, int b, const vector<int> & S)
        -> optional<vector<pair<Assignment, Assignment>>>
    {
        auto inside = boundary_set(csp, v, S);
        vector<int> vars(inside.begin(), inside.end());
        auto crossing = crossing_of_set(csp, inside);

        auto tuples_a = consistent_tuples_over(csp, vars, v, a);
        auto tuples_b = consistent_tuples_over(csp, vars, v, b);
        if (tuples_a.empty() || tuples_b.empty())
            return std::nullopt;

        auto key_of = [&](const Assignment & t) {
            map<int, int> binding;
            for (int w : vars)
                binding[w] = t.values[w];
            return crossing_key(csp, inside, crossing, binding);
        };

        map<vector<vector<vector<int>>>, vector<const Assignment *>> by_key_a, by_key_b;
        for (const auto & t : tuples_a)
            by_key_a[key_of(t)].push_back(&t);
        for (const auto & t : tuples_b)
            by_key_b[key_of(t)].push_back(&t);

        vector<pair<Assignment, Assignment>> mates;
        for (const auto & [key, ts] : by_key_a) {
            auto other = by_key_b.find(key);
            if (other == by_key_b.end())
                return std::nullopt;
            for (const auto * t : ts)
                mates.emplace_back(*t, *other->second.front());
        }
        for (const auto & [key, ts] : by_key_b)
            if (! by_key_a.count(key))
                return std::nullopt;
        return mates;
    }

    auto nti_pairs(const CspInstance & csp, int v, int s_max, bool exact) -> vector<NtiEntry>
    {
        check_variable(csp, v);
        vector<int> pool = exact ? [&] {
            vector<int> all;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (w != v)
                    all.push_back(w);
            return all;
        }()
                                 : csp.neighbours(v);
        int cap = exact ? int(pool.size()) : std::min<int>(s_max, int(pool.size()));

        // candidate boundaries in size-then-canonical order, S proper
        vector<vector<int>> boundaries;
        for (int size = 0; size <= cap; ++size) {
            vector<int> chosen;
            auto rec = [&](auto && self, std::size_t start) -> void {
                if (int(chosen.size()) == size) {
                    vector<int> S{v};
                    for (int w : chosen)
                        S.push_back(w);
                    std::sort(S.begin(), S.end());
                    if (int(S.size()) < csp.variable_count())
                        boundaries.push_back(move(S));
                    return;
                }
                for (std::size_t i = start; i < pool.size(); ++i) {
                    chosen.push_back(pool[i]);
                    self(self, i + 1);
                    chosen.pop_back();
                }
            };
            rec(rec, 0);
        }

        vector<NtiEntry> out;
        const auto & dom = csp.domain(v);
        for (std::size_t i = 0; i < dom.size(); ++i)
            for (std::size_t j = i + 1; j < dom.size(); ++j)
                for (const auto & S : boundaries) {
                    auto mates = nti_check(csp, v, dom[i], dom[j], S);
                    if (mates) {
                        out.push_back({dom[i], dom[j], S, move(*mates)});
                        break;
                    }
                }
        return out;
    }

    auto forw_ni(const CspInstance & csp, const vector<int> & U,
        const Assignment & u, const Assignment & u2) -> ForwNiResult
    {
        set<int> inside;
        for (int w : U) {
            if (w < 0 || w >= csp.variable_count())
                throw InvalidParameterError{"variable index out of range"};
            inside.insert(w);
        }
        for (int w = 0; w < csp.variable_count(); ++w) {
            bool should = inside.count(w);
            if (u.bound(w) != should || u2.bound(w) != should)
                throw InvalidParameterError{"assignments must bind exactly the given variable set"};
        }

        map<int, int> bind_u, bind_u2;
        for (int w : inside) {
            bind_u[w] = u.values[w];
            bind_u2[w] = u2.values[w];
        }
        auto crossing = crossing_of_set(csp, inside);
        for (std::size_t i = 0; i < crossing.size(); ++i) {
            auto k1 = crossing_key(csp, inside, {crossing[i]}, bind_u);
            auto k2 = crossing_key(csp, inside, {crossing[i]}, bind_u2);
            if (k1 != k2)
                return {false, crossing[i]};
        }
        return {true};
    }

    auto dyn_ni(const CspInstance & csp, int v, int a, int b, const Assignment & assignments) -> bool
    {
        if (assignments.bound(v))
            throw InvalidParameterError{"the checked variable must be unassigned in A"};
        auto reduced = apply_assignment(csp, assignments);
        return ni_classes(reduced, v).same_block(a, b);
    }

    auto con_local(const CspInstance & csp, int v, int a, int b,
        const vector<Constraint> & extra, ConLocalConcept kind) -> bool
    {
        auto conditioned = csp.with_extra_constraints(extra);
        switch (kind) {
        case ConLocalConcept::con_ni: return ni_classes(conditioned, v).same_block(a, b);
        case ConLocalConcept::con_nsub: {
            auto ps = nsub_pairs(conditioned, v);
            return std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end();
        }
        }
        throw InvalidParameterError{"unknown local conditional concept"};
    }

    auto conni_construction(const CspInstance & csp, int v, int a, int b)
        -> optional<vector<Constraint>>
    {
        check_variable(csp, v);
        if (csp.constraints_on(v).empty())
            return vector<Constraint>{};

        bool any_shared = false;
        vector<Constraint> extras;
        for (int c : csp.constraints_on(v)) {
            const auto & con = csp.constraint(c);
            auto sa = supports_wrt(csp, c, v, a);
            auto sb = supports_wrt(csp, c, v, b);
            vector<vector<int>> shared;
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));
            if (! shared.empty())
                any_shared = true;

            // keep only the shared supports, for every value of v
            Constraint extra;
            extra.scope = con.scope;
            extra.polarity = Polarity::allow;
            for (const auto & t : shared)
                for (int x : csp.domain(v))
                    extra.tuples.push_back(merge_at(con, v, t, x));
            std::sort(extra.tuples.begin(), extra.tuples.end());
            extras.push_back(move(extra));
        }
        if (! any_shared)
            return std::nullopt;
        return extras;
    }
}
