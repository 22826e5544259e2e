#include <cspix/analyze.hpp>
#include <cspix/io.hpp>
#include <cspix/local.hpp>
#include <cspix/oracle.hpp>
#include <cspix/taxonomy.hpp>

#include <algorithm>
#include <sstream>

using std::move;
using std::optional;
using std::pair;
using std::string;
using std::vector;

namespace cspix
{
    namespace
    {
        auto fmt_values(const CspInstance & csp, int v, int a, int b) -> string
        {
            return csp.variable_name(v) + " " + csp.value_name(v, a) + " " + csp.value_name(v, b);
        }

        auto fmt_partition(const CspInstance & csp, const Partition & p, bool machine) -> string
        {
            std::ostringstream out;
            if (machine)
                out << "partition\t" << csp.variable_name(p.variable);
            else
                out << csp.variable_name(p.variable) << ": ";
            bool first_block = true;
            for (const auto & block : p.blocks) {
                out << (machine ? "\t{" : (first_block ? "{" : " {"));
                first_block = false;
                for (std::size_t i = 0; i < block.size(); ++i)
                    out << (i ? "," : "") << csp.value_name(p.variable, block[i]);
                out << "}";
            }
            return out.str();
        }

        auto fmt_bool_line(const CspInstance & csp, const string & cname, int v, int a, int b,
            bool holds, const optional<Assignment> & witness, bool machine) -> string
        {
            std::ostringstream out;
            if (machine) {
                out << "relation\t" << cname << "\t" << csp.variable_name(v) << "\t"
                    << csp.value_name(v, a) << "\t" << csp.value_name(v, b) << "\t"
                    << (holds ? "true" : "false");
                if (witness)
                    out << "\t" << format_assignment(csp, *witness);
            }
            else {
                out << cname << "(" << fmt_values(csp, v, a, b) << ") = " << (holds ? "true" : "false");
                if (witness)
                    out << (holds ? "  [witness: " : "  [violated by: ") << format_assignment(csp, *witness) << "]";
            }
            return out.str();
        }

        struct Resolved
        {
            vector<int> variables;
            optional<pair<string, string>> value_pair;
        };

        auto resolve(const CspInstance & csp, const Query & q) -> Resolved
        {
            Resolved r;
            if (q.variable.empty())
                for (int v = 0; v < csp.variable_count(); ++v)
                    r.variables.push_back(v);
            else
                r.variables.push_back(csp.variable_index(q.variable));
            r.value_pair = q.value_pair;
            return r;
        }

        auto pairs_for(const CspInstance & csp, int v, const optional<pair<string, string>> & given,
            bool ordered) -> vector<pair<int, int>>
        {
            vector<pair<int, int>> out;
            if (given) {
                out.emplace_back(csp.value_index(v, given->first), csp.value_index(v, given->second));
                return out;
            }
            const auto & dom = csp.domain(v);
            for (std::size_t i = 0; i < dom.size(); ++i)
                for (std::size_t j = 0; j < dom.size(); ++j) {
                    if (i == j)
                        continue;
                    if (! ordered && j < i)
                        continue;
                    out.emplace_back(dom[i], dom[j]);
                }
            return out;
        }

        auto subset_of(const CspInstance & csp, const vector<string> & names) -> vector<int>
        {
            vector<int> out;
            for (const auto & n : names)
                out.push_back(csp.variable_index(n));
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }

        auto ordering_of(const CspInstance & csp, const vector<string> & names) -> vector<int>
        {
            vector<int> out;
            for (const auto & n : names)
                out.push_back(csp.variable_index(n));
            return out;
        }
    }

    auto run_query(const CspInstance & csp, const Query & q, bool machine) -> vector<string>
    {
        auto id = concept_from_name(q.concept_name);
        auto cname = concept_name(id);
        auto r = resolve(csp, q);
        vector<string> lines;

        auto extra = q.extra_text.empty() ? vector<Constraint>{} : parse_constraints(csp, q.extra_text);
        auto assignments_of = [&] { return assignment_from_names(csp, q.assignments); };

        auto bool_result = [&](int v, int a, int b, const RelationResult & res) {
            lines.push_back(fmt_bool_line(csp, cname, v, a, b, res.holds, res.witness, machine));
        };
        auto bool_plain = [&](int v, int a, int b, bool holds) {
            lines.push_back(fmt_bool_line(csp, cname, v, a, b, holds, std::nullopt, machine));
        };

        // tuple-level concepts ignore the per-variable loop
        if (id == ConceptId::tup_sub || id == ConceptId::forw_ni) {
            if (q.tuple_vars.empty())
                throw InvalidParameterError{"tuple concepts need --vars with --left and --right"};
            auto U = subset_of(csp, q.tuple_vars);
            if (q.left_values.size() != q.tuple_vars.size() || q.right_values.size() != q.tuple_vars.size())
                throw InvalidParameterError{"--left/--right must assign every tuple variable"};
            Assignment left(csp.variable_count()), right(csp.variable_count());
            for (std::size_t i = 0; i < q.tuple_vars.size(); ++i) {
                int w = csp.variable_index(q.tuple_vars[i]);
                left.values[w] = csp.value_index(w, q.left_values[i]);
                right.values[w] = csp.value_index(w, q.right_values[i]);
            }
            bool holds = id == ConceptId::tup_sub
                ? check_tup_sub(csp, U, left, right).holds
                : forw_ni(csp, U, left, right).holds;
            lines.push_back((machine ? "relation\t" + cname + "\t" : cname + " ") +
                format_assignment(csp, left) + (machine ? "\t" : " / ") +
                format_assignment(csp, right) + (machine ? string{"\t"} : string{" = "}) +
                (holds ? "true" : "false"));
            return lines;
        }

        for (int v : r.variables) {
            switch (id) {
            case ConceptId::ni:
                lines.push_back(fmt_partition(csp, ni_classes(csp, v), machine));
                break;
            case ConceptId::npi:
                lines.push_back(fmt_partition(csp, npi_classes(csp, v, subset_of(csp, q.subset)), machine));
                break;
            case ConceptId::dir_i:
                lines.push_back(fmt_partition(csp, diri_classes(csp, v, ordering_of(csp, q.ordering)), machine));
                break;
            case ConceptId::ni_c:
                lines.push_back(fmt_partition(csp, nic_classes(csp, v, q.constraint_index), machine));
                break;
            case ConceptId::nsub:
            case ConceptId::nsub_c:
            case ConceptId::dir_sub:
            case ConceptId::gnsub: {
                auto ps = id == ConceptId::nsub ? nsub_pairs(csp, v)
                    : id == ConceptId::nsub_c   ? nsubc_pairs(csp, v, q.constraint_index)
                    : id == ConceptId::dir_sub  ? dirsub_pairs(csp, v, ordering_of(csp, q.ordering))
                                                : gnsub_pairs(csp, v,
                                                      q.per_variable_supports ? GnsubMode::per_variable
                                                                              : GnsubMode::per_constraint);
                if (r.value_pair) {
                    int a = csp.value_index(v, r.value_pair->first);
                    int b = csp.value_index(v, r.value_pair->second);
                    bool_plain(v, a, b, std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end());
                }
                else {
                    std::ostringstream out;
                    if (machine)
                        out << "pairs\t" << cname << "\t" << csp.variable_name(v);
                    else
                        out << cname << " pairs at " << csp.variable_name(v) << ":";
                    for (const auto & [a, b] : ps)
                        if (a != b)
                            out << (machine ? "\t" : " ") << "(" << csp.value_name(v, a) << ","
                                << csp.value_name(v, b) << ")";
                    lines.push_back(out.str());
                }
                break;
            }
            case ConceptId::nti: {
                auto entries = nti_pairs(csp, v, q.s_max, q.exact);
                if (r.value_pair) {
                    int a = csp.value_index(v, r.value_pair->first);
                    int b = csp.value_index(v, r.value_pair->second);
                    std::erase_if(entries, [&](const NtiEntry & e) {
                        return ! ((e.a == a && e.b == b) || (e.a == b && e.b == a));
                    });
                }
                for (const auto & e : entries) {
                    std::ostringstream out;
                    if (machine)
                        out << "nti\t" << csp.variable_name(v) << "\t" << csp.value_name(v, e.a)
                            << "\t" << csp.value_name(v, e.b) << "\t";
                    else
                        out << "NTI(" << fmt_values(csp, v, e.a, e.b) << ") with S={";
                    for (std::size_t i = 0; i < e.S.size(); ++i)
                        out << (i ? "," : "") << csp.variable_name(e.S[i]);
                    if (! machine)
                        out << "}";
                    lines.push_back(out.str());
                }
                if (entries.empty())
                    lines.push_back(machine ? "nti\t" + csp.variable_name(v) + "\tnone"
                                            : "no NTI pairs at " + csp.variable_name(v));
                break;
            }
            default:
                for (auto [a, b] : pairs_for(csp, v, r.value_pair, true)) {
                    switch (id) {
                    case ConceptId::fi: bool_result(v, a, b, check_fi(csp, v, a, b)); break;
                    case ConceptId::sub: bool_result(v, a, b, check_sub(csp, v, a, b)); break;
                    case ConceptId::ki: bool_result(v, a, b, check_ki(csp, v, a, b, q.k)); break;
                    case ConceptId::pi:
                        bool_result(v, a, b, check_pi(csp, v, a, b, subset_of(csp, q.subset)));
                        break;
                    case ConceptId::spr_i:
                        bool_result(v, a, b, check_spr_i(csp, v, a, b, subset_of(csp, q.subset)));
                        break;
                    case ConceptId::con_i:
                        bool_result(v, a, b, check_conditional(csp, v, a, b, extra, ConditionalConcept::con_i));
                        break;
                    case ConceptId::con_sub:
                        bool_result(v, a, b, check_conditional(csp, v, a, b, extra, ConditionalConcept::con_sub));
                        break;
                    case ConceptId::fdyn_i:
                        if (q.assignments.empty() && q.exact)
                            bool_result(v, a, b, exists_nonvacuous_fdyn_i(csp, v, a, b));
                        else
                            bool_result(v, a, b, check_fdyn(csp, v, a, b, assignments_of(), DynamicConcept::fdyn_i));
                        break;
                    case ConceptId::fdyn_sub:
                        if (q.assignments.empty() && q.exact)
                            bool_result(v, a, b, exists_nonvacuous_fdyn_sub(csp, v, a, b));
                        else
                            bool_result(v, a, b, check_fdyn(csp, v, a, b, assignments_of(), DynamicConcept::fdyn_sub));
                        break;
                    case ConceptId::ctx_dep_i: bool_result(v, a, b, check_ctx_dep(csp, v, a, b)); break;
                    case ConceptId::dyn_ni:
                        bool_plain(v, a, b, dyn_ni(csp, v, a, b, assignments_of()));
                        break;
                    case ConceptId::con_ni:
                        bool_plain(v, a, b, con_local(csp, v, a, b, extra, ConLocalConcept::con_ni));
                        break;
                    case ConceptId::con_nsub:
                        bool_plain(v, a, b, con_local(csp, v, a, b, extra, ConLocalConcept::con_nsub));
                        break;
                    default:
                        throw InvalidParameterError{"concept '" + cname + "' is not pair-queryable"};
                    }
                }
            }
        }
        return lines;
    }
}
