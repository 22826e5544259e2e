#include <cspix/csp.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using std::move;
using std::pair;
using std::string;
using std::vector;

namespace cspix
{
    namespace
    {
        auto tuple_product(const vector<vector<int>> & domains,
            const std::function<void(const vector<int> &)> & fn) -> void
        {
            vector<int> tuple(domains.size());
            auto rec = [&](auto && self, std::size_t pos) -> void {
                if (pos == domains.size()) {
                    fn(tuple);
                    return;
                }
                for (int v : domains[pos]) {
                    tuple[pos] = v;
                    self(self, pos + 1);
                }
            };
            rec(rec, 0);
        }
    }

    auto Constraint::lists(const vector<int> & tuple) const -> bool
    {
        return std::binary_search(tuples.begin(), tuples.end(), tuple);
    }

    auto Constraint::satisfied(const vector<int> & tuple) const -> bool
    {
        return polarity == Polarity::allow ? lists(tuple) : ! lists(tuple);
    }

    auto Assignment::bound_count() const -> int
    {
        int n = 0;
        for (int v : values)
            if (v != unbound)
                ++n;
        return n;
    }

    auto Assignment::full() const -> bool
    {
        return bound_count() == int(values.size());
    }

    CspInstance::CspInstance(const vector<VariableSpec> & vars, const vector<ConstraintSpec> & cons)
    {
        std::map<string, int> seen;
        for (const auto & v : vars) {
            if (seen.count(v.name))
                throw InvalidInstanceError{"duplicate variable '" + v.name + "'"};
            if (v.values.empty())
                throw InvalidInstanceError{"variable '" + v.name + "' has an empty domain"};
            std::set<string> vals;
            for (const auto & s : v.values)
                if (! vals.insert(s).second)
                    throw InvalidInstanceError{"variable '" + v.name + "' repeats value '" + s + "'"};
            seen.emplace(v.name, int(var_names_.size()));
            var_names_.push_back(v.name);
            value_names_.push_back(v.values);
            vector<int> dom(v.values.size());
            for (std::size_t i = 0; i < dom.size(); ++i)
                dom[i] = int(i);
            domains_.push_back(move(dom));
        }

        vector<Constraint> raw;
        for (const auto & c : cons)
            raw.push_back(constraint_from_names(*this, c));
        conjoin_and_canonicalise(move(raw));
        rebuild_indexes();
    }

    auto CspInstance::variable_index(const string & name) const -> int
    {
        for (std::size_t i = 0; i < var_names_.size(); ++i)
            if (var_names_[i] == name)
                return int(i);
        throw InvalidParameterError{"unknown variable '" + name + "'"};
    }

    auto CspInstance::value_index(int var, const string & name) const -> int
    {
        const auto & tab = value_names_.at(var);
        for (std::size_t i = 0; i < tab.size(); ++i)
            if (tab[i] == name)
                return int(i);
        throw InvalidValueError{"variable '" + var_names_.at(var) + "' has no value '" + name + "'"};
    }

    auto CspInstance::in_domain(int v, int val) const -> bool
    {
        const auto & d = domains_.at(v);
        return std::binary_search(d.begin(), d.end(), val);
    }

    auto CspInstance::max_domain_size() const -> int
    {
        int m = 0;
        for (const auto & d : domains_)
            m = std::max(m, int(d.size()));
        return m;
    }

    auto CspInstance::max_arity() const -> int
    {
        int m = 0;
        for (const auto & c : constraints_)
            m = std::max(m, c.arity());
        return m;
    }

    auto CspInstance::without_value(int v, int val) const -> CspInstance
    {
        auto doms = domains_;
        auto & d = doms.at(v);
        d.erase(std::remove(d.begin(), d.end(), val), d.end());
        return make_reduced(*this, move(doms));
    }

    auto CspInstance::with_extra_constraints(const vector<Constraint> & extra) const -> CspInstance
    {
        CspInstance result = *this;
        auto cons = constraints_;
        for (const auto & c : extra)
            cons.push_back(c);
        result.conjoin_and_canonicalise(move(cons));
        result.rebuild_indexes();
        return result;
    }

    auto CspInstance::rebuild_indexes() -> void
    {
        constraints_on_.assign(var_names_.size(), {});
        neighbours_.assign(var_names_.size(), {});
        vector<std::set<int>> nb(var_names_.size());
        for (std::size_t c = 0; c < constraints_.size(); ++c)
            for (int v : constraints_[c].scope) {
                constraints_on_[v].push_back(int(c));
                for (int w : constraints_[c].scope)
                    if (w != v)
                        nb[v].insert(w);
            }
        for (std::size_t v = 0; v < nb.size(); ++v)
            neighbours_[v].assign(nb[v].begin(), nb[v].end());
    }

    auto CspInstance::conjoin_and_canonicalise(vector<Constraint> raw) -> void
    {
        // validate, sort scopes and tuples
        for (auto & c : raw) {
            if (c.scope.empty())
                throw InvalidConstraintError{"constraint with empty scope"};
            std::set<int> scope_set(c.scope.begin(), c.scope.end());
            if (scope_set.size() != c.scope.size())
                throw InvalidConstraintError{"constraint scope repeats a variable"};
            for (int v : c.scope)
                if (v < 0 || v >= int(var_names_.size()))
                    throw InvalidConstraintError{"constraint scope references an unknown variable"};

            vector<int> order(c.scope.size());
            for (std::size_t i = 0; i < order.size(); ++i)
                order[i] = int(i);
            std::sort(order.begin(), order.end(), [&](int x, int y) { return c.scope[x] < c.scope[y]; });

            vector<int> sorted_scope;
            for (int i : order)
                sorted_scope.push_back(c.scope[i]);
            vector<vector<int>> sorted_tuples;
            for (const auto & t : c.tuples) {
                if (t.size() != c.scope.size())
                    throw InvalidConstraintError{"tuple arity does not match constraint scope"};
                vector<int> st;
                for (std::size_t i = 0; i < order.size(); ++i) {
                    int var = sorted_scope[i], val = t[order[i]];
                    if (val < 0 || val >= int(value_names_.at(var).size()))
                        throw InvalidConstraintError{"tuple value out of domain for variable '" + var_names_.at(var) + "'"};
                    st.push_back(val);
                }
                sorted_tuples.push_back(move(st));
            }
            std::sort(sorted_tuples.begin(), sorted_tuples.end());
            sorted_tuples.erase(std::unique(sorted_tuples.begin(), sorted_tuples.end()), sorted_tuples.end());
            c.scope = move(sorted_scope);
            c.tuples = move(sorted_tuples);
        }

        // conjoin constraints sharing a scope; the merged constraint takes the
        // position of the first occurrence
        vector<Constraint> merged;
        std::map<vector<int>, vector<int>> by_scope;  // scope -> positions in raw
        vector<vector<int>> scope_order;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            auto [it, fresh] = by_scope.try_emplace(raw[i].scope);
            if (fresh)
                scope_order.push_back(raw[i].scope);
            it->second.push_back(int(i));
        }

        for (const auto & scope : scope_order) {
            const auto & members = by_scope.at(scope);
            if (members.size() == 1) {
                merged.push_back(raw[members[0]]);
                continue;
            }
            // intersection of satisfied sets over the scope's domain product,
            // re-expressed as an allow list
            Constraint c;
            c.scope = scope;
            c.polarity = Polarity::allow;
            vector<vector<int>> doms;
            for (int v : scope)
                doms.push_back(domains_.at(v));
            tuple_product(doms, [&](const vector<int> & t) {
                for (int m : members)
                    if (! raw[m].satisfied(t))
                        return;
                c.tuples.push_back(t);
            });
            merged.push_back(move(c));
        }
        constraints_ = move(merged);
    }

    auto CspInstance::structurally_equal(const CspInstance & other) const -> bool
    {
        if (var_names_ != other.var_names_)
            return false;
        for (int v = 0; v < variable_count(); ++v) {
            vector<string> mine, theirs;
            for (int val : domains_[v])
                mine.push_back(value_names_[v][val]);
            for (int val : other.domains_[v])
                theirs.push_back(other.value_names_[v][val]);
            if (mine != theirs)
                return false;
        }
        if (constraints_.size() != other.constraints_.size())
            return false;
        // compare satisfied sets over the (name-mapped) current domains
        for (std::size_t c = 0; c < constraints_.size(); ++c) {
            const auto & a = constraints_[c];
            const auto & b = other.constraints_[c];
            vector<string> sa, sb;
            for (int v : a.scope)
                sa.push_back(var_names_[v]);
            for (int v : b.scope)
                sb.push_back(other.var_names_[v]);
            if (sa != sb)
                return false;
            vector<vector<int>> doms_a, doms_b;
            for (int v : a.scope)
                doms_a.push_back(domains_[v]);
            bool equal = true;
            vector<int> tb(b.scope.size());
            tuple_product(doms_a, [&](const vector<int> & t) {
                if (! equal)
                    return;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    const string & name = value_names_[a.scope[i]][t[i]];
                    tb[i] = other.value_index(b.scope[i], name);
                }
                if (a.satisfied(t) != b.satisfied(tb))
                    equal = false;
            });
            if (! equal)
                return false;
        }
        return true;
    }

    auto validate_assignment(const CspInstance & csp, const Assignment & asg) -> void
    {
        if (int(asg.values.size()) != csp.variable_count())
            throw InvalidAssignmentError{"assignment is not indexed like the instance"};
        for (int v = 0; v < csp.variable_count(); ++v) {
            int val = asg.values[v];
            if (val == Assignment::unbound)
                continue;
            if (val < 0 || val >= csp.symbol_count(v) || ! csp.in_domain(v, val))
                throw InvalidAssignmentError{"value out of domain for variable '" + csp.variable_name(v) + "'"};
        }
    }

    auto is_consistent(const CspInstance & csp, const Assignment & asg) -> bool
    {
        validate_assignment(csp, asg);
        vector<int> tuple;
        for (const auto & c : csp.constraints()) {
            bool full = true;
            tuple.clear();
            for (int v : c.scope) {
                if (! asg.bound(v)) {
                    full = false;
                    break;
                }
                tuple.push_back(asg.values[v]);
            }
            if (full && ! c.satisfied(tuple))
                return false;
        }
        return true;
    }

    auto induced_subproblem(const CspInstance & csp, const vector<int> & vars) -> CspInstance
    {
        std::set<int> chosen;
        for (int v : vars) {
            if (v < 0 || v >= csp.variable_count())
                throw InvalidSubsetError{"variable index out of range"};
            chosen.insert(v);
        }

        CspInstance result;
        vector<int> remap(csp.variable_count(), -1);
        for (int v = 0; v < csp.variable_count(); ++v)
            if (chosen.count(v)) {
                remap[v] = int(result.var_names_.size());
                result.var_names_.push_back(csp.var_names_[v]);
                result.value_names_.push_back(csp.value_names_[v]);
                result.domains_.push_back(csp.domains_[v]);
            }
        for (const auto & c : csp.constraints()) {
            bool inside = true;
            for (int v : c.scope)
                if (! chosen.count(v)) {
                    inside = false;
                    break;
                }
            if (! inside)
                continue;
            Constraint nc = c;
            for (auto & v : nc.scope)
                v = remap[v];
            result.constraints_.push_back(move(nc));
        }
        result.rebuild_indexes();
        return result;
    }

    auto apply_assignment(const CspInstance & csp, const Assignment & asg) -> CspInstance
    {
        if (! is_consistent(csp, asg))
            throw InconsistentAssignmentError{"assignment is not consistent"};
        vector<vector<int>> new_domains;
        for (int v = 0; v < csp.variable_count(); ++v) {
            if (asg.bound(v))
                new_domains.push_back({asg.values[v]});
            else
                new_domains.push_back(csp.domain(v));
        }
        return make_reduced(csp, move(new_domains));
    }

    auto make_reduced(const CspInstance & base, vector<vector<int>> domains) -> CspInstance
    {
        CspInstance result = base;
        result.domains_ = move(domains);
        return result;
    }

    auto assignment_from_names(const CspInstance & csp,
        const vector<pair<string, string>> & bindings) -> Assignment
    {
        Assignment asg(csp.variable_count());
        for (const auto & [var, val] : bindings) {
            int v = csp.variable_index(var);
            if (asg.bound(v))
                throw InvalidAssignmentError{"variable '" + var + "' bound twice"};
            asg.values[v] = csp.value_index(v, val);
        }
        return asg;
    }

    auto format_assignment(const CspInstance & csp, const Assignment & asg) -> string
    {
        std::ostringstream out;
        bool first = true;
        for (int v = 0; v < csp.variable_count(); ++v) {
            if (! asg.bound(v))
                continue;
            if (! first)
                out << " ";
            first = false;
            out << csp.variable_name(v) << "=" << csp.value_name(v, asg.values[v]);
        }
        if (first)
            out << "(empty)";
        return out.str();
    }

    auto constraint_from_names(const CspInstance & csp, const CspInstance::ConstraintSpec & spec) -> Constraint
    {
        Constraint c;
        for (const auto & name : spec.scope)
            c.scope.push_back(csp.variable_index(name));
        for (const auto & t : spec.tuples) {
            if (t.size() != spec.scope.size())
                throw InvalidConstraintError{"tuple arity does not match constraint scope"};
            vector<int> vals;
            for (std::size_t i = 0; i < t.size(); ++i)
                vals.push_back(csp.value_index(c.scope[i], t[i]));
            c.tuples.push_back(move(vals));
        }
        c.polarity = spec.polarity;
        return c;
    }
}
