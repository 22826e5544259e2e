#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cspix/analyze.hpp>
#include <cspix/io.hpp>
#include <cspix/local.hpp>
#include <cspix/microstructure.hpp>
#include <cspix/oracle.hpp>
#include <cspix/search.hpp>
#include <cspix/taxonomy.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace cspix;
using std::map;
using std::move;
using std::optional;
using std::string;
using std::vector;

namespace
{
    auto pair_of(const CspInstance & c, const string & var, const string & a, const string & b)
    {
        int v = c.variable_index(var);
        return std::tuple{v, c.value_index(v, a), c.value_index(v, b)};
    }

    auto subset_of(const CspInstance & c, const vector<string> & names) -> vector<int>
    {
        vector<int> out;
        for (const auto & n : names)
            out.push_back(c.variable_index(n));
        std::sort(out.begin(), out.end());
        return out;
    }

    auto assignment_of(const CspInstance & c, const map<string, string> & bindings) -> Assignment
    {
        vector<std::pair<string, string>> pairs(bindings.begin(), bindings.end());
        return assignment_from_names(c, pairs);
    }

    auto partition_names(const CspInstance & c, const Partition & p) -> vector<vector<string>>
    {
        vector<vector<string>> out;
        for (const auto & block : p.blocks) {
            vector<string> names;
            for (int val : block)
                names.push_back(c.value_name(p.variable, val));
            out.push_back(move(names));
        }
        return out;
    }

    auto pair_names(const CspInstance & c, int v, const vector<std::pair<int, int>> & ps)
        -> vector<std::pair<string, string>>
    {
        vector<std::pair<string, string>> out;
        for (auto [a, b] : ps)
            out.emplace_back(c.value_name(v, a), c.value_name(v, b));
        return out;
    }

    auto result_dict(const CspInstance & c, const RelationResult & r) -> py::dict
    {
        py::dict d;
        d["holds"] = r.holds;
        d["witness"] = r.witness ? py::object(py::str(format_assignment(c, *r.witness))) : py::none();
        return d;
    }

    auto extras_of(const CspInstance & c, const string & text) -> vector<Constraint>
    {
        return text.empty() ? vector<Constraint>{} : parse_constraints(c, text);
    }
}

PYBIND11_MODULE(_cspix, m)
{
    m.doc() = "value interchangeability and substitutability analysis for extensional CSPs";

    py::register_exception<Error>(m, "CspError");

    py::class_<CspInstance>(m, "Instance")
        .def_static("parse", &parse_instance, py::arg("text"))
        .def("emit", &emit_instance)
        .def("variables", [](const CspInstance & c) {
            vector<string> out;
            for (int v = 0; v < c.variable_count(); ++v)
                out.push_back(c.variable_name(v));
            return out;
        })
        .def("domain", [](const CspInstance & c, const string & var) {
            int v = c.variable_index(var);
            vector<string> out;
            for (int val : c.domain(v))
                out.push_back(c.value_name(v, val));
            return out;
        })
        .def("solvable", &solvable)
        .def("__repr__", [](const CspInstance & c) {
            return "<cspix.Instance with " + std::to_string(c.variable_count()) + " variables, " +
                std::to_string(c.constraint_count()) + " constraints>";
        });

    m.def("generate", [](std::uint64_t seed, int variables, int domain, double density,
                          double tightness, int arity) {
        RandomModel model{seed, variables, domain, density, tightness, arity};
        return generate_instance(model);
    },
        py::arg("seed"), py::arg("variables"), py::arg("domain"), py::arg("density"),
        py::arg("tightness"), py::arg("arity") = 2);

    m.def("solutions", [](const CspInstance & c, optional<std::size_t> limit) {
        vector<string> out;
        for (const auto & s : enumerate_solutions(c, limit).solutions)
            out.push_back(format_assignment(c, s));
        return out;
    },
        py::arg("instance"), py::arg("limit") = py::none());

    m.def("fi", [](const CspInstance & c, const string & var, const string & a, const string & b) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_fi(c, v, ia, ib));
    });
    m.def("sub", [](const CspInstance & c, const string & var, const string & a, const string & b) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_sub(c, v, ia, ib));
    });
    m.def("ki", [](const CspInstance & c, const string & var, const string & a, const string & b, int k) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_ki(c, v, ia, ib, k));
    });
    m.def("pi", [](const CspInstance & c, const string & var, const string & a, const string & b,
                    const vector<string> & S) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_pi(c, v, ia, ib, subset_of(c, S)));
    });
    m.def("spri", [](const CspInstance & c, const string & var, const string & a, const string & b,
                      const vector<string> & S) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_spr_i(c, v, ia, ib, subset_of(c, S)));
    });
    m.def("ctxdepi", [](const CspInstance & c, const string & var, const string & a, const string & b) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_ctx_dep(c, v, ia, ib));
    });
    m.def("coni", [](const CspInstance & c, const string & var, const string & a, const string & b,
                      const string & extra) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_conditional(c, v, ia, ib, extras_of(c, extra), ConditionalConcept::con_i));
    });
    m.def("consub", [](const CspInstance & c, const string & var, const string & a, const string & b,
                        const string & extra) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_conditional(c, v, ia, ib, extras_of(c, extra), ConditionalConcept::con_sub));
    });
    m.def("fdyni", [](const CspInstance & c, const string & var, const string & a, const string & b,
                       const map<string, string> & A) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_fdyn(c, v, ia, ib, assignment_of(c, A), DynamicConcept::fdyn_i));
    });
    m.def("fdynsub", [](const CspInstance & c, const string & var, const string & a, const string & b,
                         const map<string, string> & A) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return result_dict(c, check_fdyn(c, v, ia, ib, assignment_of(c, A), DynamicConcept::fdyn_sub));
    });

    m.def("ni_classes", [](const CspInstance & c, const string & var) {
        return partition_names(c, ni_classes(c, c.variable_index(var)));
    });
    m.def("npi_classes", [](const CspInstance & c, const string & var, const vector<string> & S) {
        return partition_names(c, npi_classes(c, c.variable_index(var), subset_of(c, S)));
    });
    m.def("nic_classes", [](const CspInstance & c, const string & var, int constraint) {
        return partition_names(c, nic_classes(c, c.variable_index(var), constraint));
    });
    m.def("nsub_pairs", [](const CspInstance & c, const string & var) {
        int v = c.variable_index(var);
        return pair_names(c, v, nsub_pairs(c, v));
    });
    m.def("gnsub_pairs", [](const CspInstance & c, const string & var) {
        int v = c.variable_index(var);
        return pair_names(c, v, gnsub_pairs(c, v));
    });
    m.def("dyn_ni", [](const CspInstance & c, const string & var, const string & a, const string & b,
                        const map<string, string> & A) {
        auto [v, ia, ib] = pair_of(c, var, a, b);
        return dyn_ni(c, v, ia, ib, assignment_of(c, A));
    });
    m.def("nti_pairs", [](const CspInstance & c, const string & var, int s_max, bool exact) {
        int v = c.variable_index(var);
        vector<py::dict> out;
        for (const auto & e : nti_pairs(c, v, s_max, exact)) {
            py::dict d;
            d["a"] = c.value_name(v, e.a);
            d["b"] = c.value_name(v, e.b);
            vector<string> names;
            for (int w : e.S)
                names.push_back(c.variable_name(w));
            d["S"] = names;
            out.push_back(move(d));
        }
        return out;
    },
        py::arg("instance"), py::arg("variable"), py::arg("s_max") = 2, py::arg("exact") = false);

    m.def("ns_closure", [](const CspInstance & c) {
        auto result = ns_closure(c);
        py::dict d;
        d["reduced"] = result.reduced;
        vector<py::dict> log;
        for (const auto & r : result.log) {
            py::dict entry;
            entry["variable"] = c.variable_name(r.variable);
            entry["removed"] = c.value_name(r.variable, r.removed);
            entry["kept"] = c.value_name(r.variable, r.kept);
            entry["tie"] = r.tie;
            log.push_back(move(entry));
        }
        d["log"] = log;
        d["probes"] = result.probes;
        return d;
    });

    m.def("solve", [](const CspInstance & c, bool bundle, optional<std::size_t> limit) {
        py::dict d;
        if (bundle) {
            auto [bundles, stats] = solve_bundled(c, {}, limit);
            vector<map<string, vector<string>>> out;
            for (const auto & b : bundles) {
                map<string, vector<string>> m2;
                for (int v = 0; v < c.variable_count(); ++v) {
                    vector<string> vals;
                    for (int val : b.values[v])
                        vals.push_back(c.value_name(v, val));
                    m2[c.variable_name(v)] = vals;
                }
                out.push_back(move(m2));
            }
            d["bundles"] = out;
            d["nodes"] = stats.nodes;
            d["solutions"] = stats.solutions;
        }
        else {
            auto [set, stats] = solve_plain(c, {}, limit);
            vector<string> out;
            for (const auto & s : set.solutions)
                out.push_back(format_assignment(c, s));
            d["solutions"] = out;
            d["nodes"] = stats.nodes;
        }
        return d;
    },
        py::arg("instance"), py::arg("bundle") = false, py::arg("limit") = py::none());

    m.def("lattice_text", [] { return lattice().to_text(); });
    m.def("lattice_dot", [] { return lattice().to_dot(); });
    m.def("microstructure_dot", [](const CspInstance & c, bool modified) {
        return microstructure_dot(c, build_microstructure(c, modified));
    },
        py::arg("instance"), py::arg("modified") = false);

    m.def("verify_gallery", [] {
        vector<std::pair<string, string>> out;
        for (const auto & f : verify_gallery())
            out.emplace_back(f.id, f.claim);
        return out;
    });
    m.def("gallery_ids", [] {
        vector<string> out;
        for (const auto & e : gallery())
            out.push_back(e.id);
        return out;
    });
    m.def("gallery_instance", [](const string & id) {
        for (const auto & e : gallery())
            if (e.id == id)
                return e.instance();
        throw InvalidParameterError{"no gallery entry '" + id + "'"};
    });

    m.def("verify_random", [](int count, std::uint64_t seed, int n, int d, double density,
                               const vector<double> & tightnesses) {
        vector<CspInstance> corpus;
        for (int i = 0; i < count; ++i) {
            RandomModel model;
            model.seed = seed + std::uint64_t(i);
            model.variables = n;
            model.domain_size = d;
            model.density = density;
            model.tightness = tightnesses.empty() ? 0.4 : tightnesses[i % tightnesses.size()];
            corpus.push_back(generate_instance(model));
        }
        auto cfg = guard_from_env(VerifyConfig{});
        cfg.seed = seed;
        vector<string> out;
        for (const auto & v : verify_edges(corpus, cfg))
            out.push_back(v.edge + " at " + v.variable + " (" + v.values + ") " + v.params);
        for (const auto & v : verify_equivalences(corpus, cfg))
            out.push_back(v.edge + " at " + v.variable + " (" + v.values + ") " + v.params);
        return out;
    },
        py::arg("count"), py::arg("seed") = 1, py::arg("n") = 5, py::arg("d") = 3,
        py::arg("density") = 0.5, py::arg("tightnesses") = vector<double>{0.2, 0.4, 0.6});
}
