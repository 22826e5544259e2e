#include <cspix/analyze.hpp>
#include <cspix/io.hpp>
#include <cspix/local.hpp>
#include <cspix/microstructure.hpp>
#include <cspix/oracle.hpp>
#include <cspix/search.hpp>
#include <cspix/taxonomy.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cspix;
using std::cout;
using std::string;
using std::vector;

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_violation = 1;
    constexpr int exit_usage = 2;
    constexpr int exit_internal = 3;

    auto split_commas(const string & s) -> vector<string>
    {
        vector<string> out;
        std::istringstream in{s};
        string tok;
        while (std::getline(in, tok, ','))
            if (! tok.empty())
                out.push_back(tok);
        return out;
    }

    auto parse_bindings(const vector<string> & specs) -> vector<std::pair<string, string>>
    {
        vector<std::pair<string, string>> out;
        for (const auto & s : specs) {
            auto eq = s.find('=');
            if (eq == string::npos)
                throw InvalidParameterError{"assignments look like VAR=value"};
            out.emplace_back(s.substr(0, eq), s.substr(eq + 1));
        }
        return out;
    }

    auto emit_output(const string & path, const string & text) -> void
    {
        if (path.empty())
            cout << text;
        else
            write_file(path, text);
    }

    auto print_solution(const CspInstance & csp, const Assignment & s, bool machine) -> void
    {
        cout << (machine ? "solution\t" : "") << format_assignment(csp, s) << "\n";
    }

    auto print_bundle(const CspInstance & csp, const SolutionBundle & bundle, bool machine) -> void
    {
        std::ostringstream out;
        if (machine)
            out << "bundle";
        for (int v = 0; v < csp.variable_count(); ++v) {
            out << (machine ? "\t" : (v ? " " : "")) << csp.variable_name(v) << "={";
            for (std::size_t i = 0; i < bundle.values[v].size(); ++i)
                out << (i ? "," : "") << csp.value_name(v, bundle.values[v][i]);
            out << "}";
        }
        cout << out.str() << "\n";
    }

    auto corpus_from_options(int count, std::uint64_t seed, int n, int d, double density,
        const vector<double> & tightnesses) -> vector<CspInstance>
    {
        vector<CspInstance> out;
        for (int i = 0; i < count; ++i) {
            RandomModel model;
            model.seed = seed + std::uint64_t(i);
            model.variables = n;
            model.domain_size = d;
            model.density = density;
            model.tightness = tightnesses[i % tightnesses.size()];
            out.push_back(generate_instance(model));
        }
        return out;
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"value interchangeability and substitutability analysis for extensional CSPs"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--porcelain", machine, "stable machine-readable output");

    // ---- analyze ----
    auto * analyze = app.add_subcommand("analyze", "run a relation or detector over an instance");
    string an_file, an_concept, an_extra_file, an_subset, an_ordering, an_vars, an_left, an_right;
    vector<string> an_pair, an_assign;
    int an_k = 3, an_constraint = 0, an_smax = 2;
    bool an_exact = false, an_per_variable = false;
    analyze->add_option("file", an_file, "instance file")->required();
    analyze->add_option("--concept", an_concept, "relation name (fi, ni, nsub, npi, ...)")->required();
    analyze->add_option("--pair", an_pair, "VAR VALUE VALUE")->expected(3);
    analyze->add_option("--subset", an_subset, "boundary S, comma separated");
    analyze->add_option("--ordering", an_ordering, "variable ordering, comma separated");
    analyze->add_option("--assign", an_assign, "assignment VAR=value (repeatable)");
    analyze->add_option("--k", an_k, "k for k-interchangeability");
    analyze->add_option("--constraint", an_constraint, "constraint index for the per-constraint forms");
    analyze->add_option("--smax", an_smax, "neighbourhood cap for the tuple detector");
    analyze->add_flag("--exact", an_exact, "exhaustive subset search / assignment-set search");
    analyze->add_flag("--per-variable", an_per_variable, "per-variable shared-support reading");
    analyze->add_option("--extra", an_extra_file, "file of condition constraints (con lines)");
    analyze->add_option("--vars", an_vars, "tuple variables, comma separated");
    analyze->add_option("--left", an_left, "left tuple values, comma separated");
    analyze->add_option("--right", an_right, "right tuple values, comma separated");

    // ---- verify ----
    auto * verify = app.add_subcommand("verify", "check the implication map, gallery, or a lattice file");
    bool v_gallery = false, v_audit = false;
    int v_random = 0, v_n = 5, v_d = 3;
    double v_density = 0.5;
    string v_tightness = "0.2,0.4,0.6", v_lattice;
    std::uint64_t v_seed = 1;
    verify->add_flag("--gallery", v_gallery, "verify every gallery claim");
    verify->add_option("--random", v_random, "verify implication edges over N seeded instances");
    verify->add_option("--seed", v_seed, "corpus seed");
    verify->add_option("-n", v_n, "variables per random instance");
    verify->add_option("-d", v_d, "domain size per random instance");
    verify->add_option("--density", v_density, "constraint density");
    verify->add_option("--tightness", v_tightness, "tightness cycle, comma separated");
    verify->add_option("--lattice", v_lattice, "validate a serialized lattice file");
    verify->add_flag("--audit", v_audit, "audit satisfiability preservation over the random corpus");

    // ---- solve ----
    auto * solve = app.add_subcommand("solve", "backtracking search, plain or bundled");
    string s_file, s_var_order;
    vector<string> s_val_orders;
    bool s_bundle = false;
    std::size_t s_limit = 0;
    solve->add_option("file", s_file, "instance file")->required();
    solve->add_flag("--bundle", s_bundle, "emit solution bundles instead of single solutions");
    solve->add_option("--limit", s_limit, "stop after this many solutions (or bundles)");
    solve->add_option("--var-order", s_var_order, "variable order, comma separated");
    solve->add_option("--val-order", s_val_orders, "value order VAR=v1,v2,... (repeatable)");

    // ---- gen ----
    auto * gen = app.add_subcommand("gen", "generate a seeded random instance");
    RandomModel g_model;
    string g_out;
    gen->add_option("-n", g_model.variables, "variables");
    gen->add_option("-d", g_model.domain_size, "domain size");
    gen->add_option("--density", g_model.density, "fraction of scopes constrained");
    gen->add_option("--tightness", g_model.tightness, "fraction of tuples forbidden");
    gen->add_option("--seed", g_model.seed, "seed");
    gen->add_option("--arity", g_model.arity, "constraint arity");
    gen->add_option("-o", g_out, "output file (default stdout)");

    // ---- dot ----
    auto * dot = app.add_subcommand("dot", "emit DOT graphs");
    bool d_hasse = false, d_modified = false;
    string d_micro, d_out;
    dot->add_flag("--hasse", d_hasse, "the implication diagram");
    dot->add_option("--micro", d_micro, "microstructure of a binary instance file");
    dot->add_flag("--modified", d_modified, "add same-variable edges");
    dot->add_option("-o", d_out, "output file (default stdout)");

    // ---- gallery ----
    auto * gal = app.add_subcommand("gallery", "list or export the separating-instance gallery");
    bool l_list = false;
    string l_export;
    gal->add_flag("--list", l_list, "list entries");
    gal->add_option("--export", l_export, "write each entry to DIR/<id>.csp");

    // ---- lattice ----
    auto * lat = app.add_subcommand("lattice", "print the serialized implication map");
    string lat_out;
    lat->add_option("-o", lat_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*analyze) {
            auto csp = read_instance_file(an_file);
            Query q;
            q.concept_name = an_concept;
            if (! an_pair.empty()) {
                q.variable = an_pair[0];
                q.value_pair = {an_pair[1], an_pair[2]};
            }
            q.subset = split_commas(an_subset);
            q.ordering = split_commas(an_ordering);
            q.assignments = parse_bindings(an_assign);
            q.k = an_k;
            q.constraint_index = an_constraint;
            q.s_max = an_smax;
            q.exact = an_exact;
            q.per_variable_supports = an_per_variable;
            if (! an_extra_file.empty()) {
                std::ifstream in{an_extra_file};
                if (! in)
                    throw Error{"cannot open '" + an_extra_file + "'"};
                std::ostringstream buf;
                buf << in.rdbuf();
                q.extra_text = buf.str();
            }
            q.tuple_vars = split_commas(an_vars);
            q.left_values = split_commas(an_left);
            q.right_values = split_commas(an_right);
            for (const auto & line : run_query(csp, q, machine))
                cout << line << "\n";
            return exit_ok;
        }

        if (*verify) {
            bool any_requested = v_gallery || v_random > 0 || ! v_lattice.empty() || v_audit;
            if (! any_requested)
                v_gallery = true;
            bool failed = false;

            if (! v_lattice.empty()) {
                std::ifstream in{v_lattice};
                if (! in)
                    throw Error{"cannot open '" + v_lattice + "'"};
                std::ostringstream buf;
                buf << in.rdbuf();
                try {
                    auto candidate = lattice_from_text(buf.str());
                    validate_against_builtin(candidate);
                    candidate.validate();
                    cout << "lattice file matches the built-in implication map\n";
                }
                catch (const Error & e) {
                    cout << "lattice: " << e.what() << "\n";
                    failed = true;
                }
            }

            if (v_gallery) {
                auto failures = verify_gallery();
                int claims = 0;
                for (const auto & e : gallery())
                    claims += int(e.claims.size());
                if (failures.empty())
                    cout << "gallery: " << gallery().size() << " instances, " << claims
                         << " claims, all verified\n";
                for (const auto & f : failures) {
                    cout << "gallery FAIL " << f.id << ": " << f.claim << "\n";
                    failed = true;
                }
            }

            if (v_random > 0) {
                vector<double> ts;
                for (const auto & t : split_commas(v_tightness))
                    ts.push_back(std::stod(t));
                if (ts.empty())
                    ts.push_back(0.4);
                auto cfg = guard_from_env(VerifyConfig{});
                cfg.seed = v_seed;
                auto corpus = corpus_from_options(v_random, v_seed, v_n, v_d, v_density, ts);

                auto start = std::chrono::steady_clock::now();
                auto violations = verify_edges(corpus, cfg);
                auto eq_violations = verify_equivalences(corpus, cfg);
                auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
                for (const auto & v : violations)
                    eq_violations.push_back(v);
                for (const auto & viol : eq_violations) {
                    cout << "violation " << viol.edge << " at " << viol.variable << " (" << viol.values
                         << ") " << viol.params << "\n"
                         << viol.instance_text;
                    failed = true;
                }
                if (violations.empty())
                    cout << "edges: no violation over " << v_random << " instances\n";
                cout << "runtime: " << elapsed.count() << "s\n";

                if (v_audit) {
                    for (auto concept_id : auditable_concepts()) {
                        int positive = 0, bad = 0;
                        for (const auto & csp : corpus) {
                            auto report = audit_sat_preservation(concept_id, csp, cfg);
                            positive += int(report.records.size());
                            bad += report.violations();
                        }
                        bool flagged = lattice().node(concept_id).preserving;
                        cout << "audit " << concept_name(concept_id) << ": " << positive
                             << " pairs, " << bad << " violations"
                             << (flagged && bad > 0 ? "  [flagged preserving: MISMATCH]" : "") << "\n";
                        if (flagged && bad > 0)
                            failed = true;
                    }
                }
            }

            return failed ? exit_violation : exit_ok;
        }

        if (*solve) {
            auto csp = read_instance_file(s_file);
            SearchOrders orders;
            if (! s_var_order.empty()) {
                vector<int> vo;
                for (const auto & name : split_commas(s_var_order))
                    vo.push_back(csp.variable_index(name));
                orders.variables = vo;
            }
            if (! s_val_orders.empty()) {
                vector<vector<int>> vals(csp.variable_count());
                for (const auto & spec : s_val_orders) {
                    auto eq = spec.find('=');
                    if (eq == string::npos)
                        throw InvalidParameterError{"value orders look like VAR=v1,v2,..."};
                    int v = csp.variable_index(spec.substr(0, eq));
                    for (const auto & val : split_commas(spec.substr(eq + 1)))
                        vals[v].push_back(csp.value_index(v, val));
                }
                orders.values = vals;
            }
            std::optional<std::size_t> limit;
            if (s_limit > 0)
                limit = s_limit;

            if (s_bundle) {
                auto [bundles, stats] = solve_bundled(csp, orders, limit);
                for (const auto & b : bundles)
                    print_bundle(csp, b, machine);
                cout << (machine ? "stats\t" : "") << stats.bundles << " bundles covering "
                     << stats.solutions << " solutions, " << stats.nodes << " nodes, "
                     << stats.checks << " checks\n";
            }
            else {
                auto [set, stats] = solve_plain(csp, orders, limit);
                for (const auto & s : set.solutions)
                    print_solution(csp, s, machine);
                cout << (machine ? "stats\t" : "") << set.solutions.size() << " solutions, "
                     << stats.nodes << " nodes, " << stats.checks << " checks\n";
            }
            return exit_ok;
        }

        if (*gen) {
            auto csp = generate_instance(g_model);
            emit_output(g_out, emit_instance(csp));
            return exit_ok;
        }

        if (*dot) {
            if (d_hasse == ! d_micro.empty())
                throw InvalidParameterError{"pick exactly one of --hasse or --micro FILE"};
            if (d_hasse)
                emit_output(d_out, lattice().to_dot());
            else {
                auto csp = read_instance_file(d_micro);
                auto graph = build_microstructure(csp, d_modified);
                emit_output(d_out, microstructure_dot(csp, graph));
            }
            return exit_ok;
        }

        if (*lat) {
            emit_output(lat_out, lattice().to_text());
            return exit_ok;
        }

        if (*gal) {
            if (! l_export.empty())
                for (const auto & e : gallery())
                    write_file(l_export + "/" + e.id + ".csp", e.text);
            if (l_list || l_export.empty())
                for (const auto & e : gallery())
                    cout << e.id << "  (" << e.variable << ": " << e.value_a << "," << e.value_b
                         << ")  " << e.title << "\n";
            return exit_ok;
        }
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}
