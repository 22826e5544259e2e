#include <cspix/local.hpp>
#include <cspix/oracle.hpp>
#include <cspix/taxonomy.hpp>

#include <algorithm>

using std::move;
using std::string;
using std::vector;

namespace cspix
{
    namespace
    {
        // Conventions for unqualified negative claims ("not R wrt any
        // subset"): boundaries range over proper subsets containing the
        // variable; for SPrI additionally S != {v} (S = {v} is trivially
        // true, S = V degenerates PI to co-occurrence and NPI/NTI to
        // vacuity).
        auto proper_subsets_with(const CspInstance & csp, int v) -> vector<vector<int>>
        {
            vector<int> others;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (w != v)
                    others.push_back(w);
            vector<vector<int>> out;
            for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
                vector<int> S{v};
                for (std::size_t i = 0; i < others.size(); ++i)
                    if (mask & (std::size_t{1} << i))
                        S.push_back(others[i]);
                std::sort(S.begin(), S.end());
                if (int(S.size()) < csp.variable_count())
                    out.push_back(move(S));
            }
            return out;
        }

        auto all_subsets_with(const CspInstance & csp, int v) -> vector<vector<int>>
        {
            auto out = proper_subsets_with(csp, v);
            vector<int> everything;
            for (int w = 0; w < csp.variable_count(); ++w)
                everything.push_back(w);
            out.push_back(move(everything));
            return out;
        }

        struct Ctx
        {
            const CspInstance & csp;
            int v, a, b;

            Ctx(const CspInstance & c, const string & var, const string & va, const string & vb) :
                csp(c),
                v(c.variable_index(var)),
                a(c.value_index(v, va)),
                b(c.value_index(v, vb))
            {
            }

            auto S(const vector<string> & names) const -> vector<int>
            {
                vector<int> out;
                for (const auto & n : names)
                    out.push_back(csp.variable_index(n));
                std::sort(out.begin(), out.end());
                return out;
            }
        };

        auto has_pair(const vector<std::pair<int, int>> & ps, int a, int b) -> bool
        {
            return std::find(ps.begin(), ps.end(), std::pair{a, b}) != ps.end();
        }

        auto nti_somewhere(const CspInstance & csp, int v, int a, int b) -> bool
        {
            for (const auto & S : proper_subsets_with(csp, v))
                if (nti_check(csp, v, a, b, S))
                    return true;
            return false;
        }

        auto removal_flips_solvability(const CspInstance & csp, int v, int removed) -> bool
        {
            return solvable(csp) && ! solvable(csp.without_value(v, removed));
        }

        using Claims = vector<GalleryClaim>;

        struct Pair
        {
            string var, a, b;
        };

        auto entry(string id, string title, string text, Pair p, Claims claims) -> GalleryEntry
        {
            return {move(id), move(title), move(text), move(p.var), move(p.a), move(p.b), move(claims)};
        }

        auto build_gallery() -> vector<GalleryEntry>
        {
            vector<GalleryEntry> g;

            // -------------------------------------------------------------- G-FIG1
            g.push_back(entry("G-FIG1",
                "fully interchangeable, yet neither 3-interchangeable nor neighbourhood-substitutable",
                "var X a b\n"
                "var Y p q t\n"
                "var Z r\n"
                "var W w\n"
                "con X Y : allow (a,p) (a,q) (b,p) (b,t)\n"
                "con X Z : allow (a,r) (b,r)\n"
                "con Y Z : allow (p,r)\n",
                {"X", "a", "b"},
                {
                    {"FI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_fi(c, x.v, x.a, x.b).holds;
                     }},
                    {"not 3-interchangeable", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_ki(c, x.v, x.a, x.b, 3).holds;
                     }},
                    {"not NSub(a,b) and not NSub(b,a)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         auto ps = nsub_pairs(c, x.v);
                         return ! has_pair(ps, x.a, x.b) && ! has_pair(ps, x.b, x.a);
                     }},
                    {"ConI under the empty condition, not ConNSub under it", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_conditional(c, x.v, x.a, x.b, {}, ConditionalConcept::con_i).holds &&
                             ! con_local(c, x.v, x.a, x.b, {}, ConLocalConcept::con_nsub) &&
                             ! con_local(c, x.v, x.b, x.a, {}, ConLocalConcept::con_nsub);
                     }},
                }));

            // -------------------------------------------------------------- G-FIG2
            g.push_back(entry("G-FIG2",
                "neighbourhood interchangeable pair",
                "var X a b\n"
                "var Y p q\n"
                "var Z r s\n"
                "con X Y : allow (a,p) (b,p)\n"
                "con X Z : allow (a,r) (b,r)\n",
                {"X", "a", "b"},
                {
                    {"NI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ni_classes(c, x.v).same_block(x.a, x.b);
                     }},
                    {"3-interchangeable", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_ki(c, x.v, x.a, x.b, 3).holds;
                     }},
                    {"FI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_fi(c, x.v, x.a, x.b).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG3
            g.push_back(entry("G-FIG3",
                "3-interchangeable but not neighbourhood interchangeable",
                "var X a b\n"
                "var Y p q\n"
                "var Z r\n"
                "con X Y : allow (a,p) (a,q) (b,p)\n"
                "con X Z : allow (a,r) (b,r)\n"
                "con Y Z : allow (p,r)\n",
                {"X", "a", "b"},
                {
                    {"3-interchangeable", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_ki(c, x.v, x.a, x.b, 3).holds;
                     }},
                    {"not NI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! ni_classes(c, x.v).same_block(x.a, x.b);
                     }},
                }));

            // -------------------------------------------------------------- G-FIG4
            const string fig4_text =
                "var X a b\n"
                "var Y p q\n"
                "var Z r s t\n"
                "con X Y : allow (a,p) (b,q)\n"
                "con X Z : allow (a,r) (a,s) (b,r) (b,t)\n"
                "con Y Z : allow (p,r) (q,r)\n";
            g.push_back(entry("G-FIG4",
                "partially interchangeable wrt {X,Y}; no substitution, no context clique, no local form",
                fig4_text,
                {"X", "a", "b"},
                {
                    {"PI wrt {X,Y}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_pi(c, x.v, x.a, x.b, x.S({"X", "Y"})).holds;
                     }},
                    {"not Sub either way, not FI", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_sub(c, x.v, x.a, x.b).holds && ! check_sub(c, x.v, x.b, x.a).holds &&
                             ! check_fi(c, x.v, x.a, x.b).holds;
                     }},
                    {"not CtxDepI", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_ctx_dep(c, x.v, x.a, x.b).holds;
                     }},
                    {"not NTI wrt any proper subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! nti_somewhere(c, x.v, x.a, x.b);
                     }},
                    {"not NPI wrt any proper subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & S : proper_subsets_with(c, x.v))
                             if (npi_classes(c, x.v, S).same_block(x.a, x.b))
                                 return false;
                         return true;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG4b
            g.push_back(entry("G-FIG4b",
                "the same instance: partially interchangeable but subproblem-interchangeable nowhere",
                fig4_text,
                {"X", "a", "b"},
                {
                    {"PI wrt {X,Y}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_pi(c, x.v, x.a, x.b, x.S({"X", "Y"})).holds;
                     }},
                    {"not SPrI wrt any subset beyond {X}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & S : all_subsets_with(c, x.v))
                             if (S.size() >= 2 && check_spr_i(c, x.v, x.a, x.b, S).holds)
                                 return false;
                         return true;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG5
            g.push_back(entry("G-FIG5",
                "subproblem interchangeable wrt {X,Y} but partially interchangeable nowhere",
                "var X a b\n"
                "var Y p\n"
                "var Z r s\n"
                "con X Y : allow (a,p) (b,p)\n"
                "con X Z : allow (a,r) (b,s)\n"
                "con Y Z : allow (p,r)\n",
                {"X", "a", "b"},
                {
                    {"SPrI wrt {X,Y}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_spr_i(c, x.v, x.a, x.b, x.S({"X", "Y"})).holds;
                     }},
                    {"not PI wrt any subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & S : all_subsets_with(c, x.v))
                             if (check_pi(c, x.v, x.a, x.b, S).holds)
                                 return false;
                         return true;
                     }},
                    {"removing a under the symmetric SPrI claim breaks satisfiability", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_spr_i(c, x.v, x.b, x.a, x.S({"X", "Y"})).holds &&
                             removal_flips_solvability(c, x.v, x.a);
                     }},
                }));

            // -------------------------------------------------------------- G-FIG6
            g.push_back(entry("G-FIG6",
                "substitutable but not neighbourhood-substitutable, and not interchangeable",
                "var X a b\n"
                "var Y p q t\n"
                "var Z r\n"
                "con X Y : allow (a,p) (a,q) (b,p) (b,t)\n"
                "con X Z : allow (a,r) (b,r)\n"
                "con Y Z : allow (p,r) (q,r)\n",
                {"X", "a", "b"},
                {
                    {"Sub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_sub(c, x.v, x.a, x.b).holds;
                     }},
                    {"not NSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! has_pair(nsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"not FI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_fi(c, x.v, x.a, x.b).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG7
            g.push_back(entry("G-FIG7",
                "neighbourhood-substitutable but neither NI nor FI",
                "var X a b\n"
                "var Y p q\n"
                "con X Y : allow (a,p) (a,q) (b,p)\n",
                {"X", "a", "b"},
                {
                    {"NSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return has_pair(nsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"not NI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! ni_classes(c, x.v).same_block(x.a, x.b);
                     }},
                    {"not FI(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_fi(c, x.v, x.a, x.b).holds;
                     }},
                    {"ConNSub under the empty condition, not ConI under it", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return con_local(c, x.v, x.a, x.b, {}, ConLocalConcept::con_nsub) &&
                             ! check_conditional(c, x.v, x.a, x.b, {}, ConditionalConcept::con_i).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG8
            g.push_back(entry("G-FIG8",
                "neighbourhood partially interchangeable wrt {X,Y} but partially interchangeable nowhere",
                "var X a b\n"
                "var Y p q\n"
                "var W u w\n"
                "con X Y : allow (a,p) (b,q)\n"
                "con X W : allow (a,u) (a,w) (b,u) (b,w)\n"
                "con Y W : allow (p,u) (q,w)\n",
                {"X", "a", "b"},
                {
                    {"NPI wrt {X,Y}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return npi_classes(c, x.v, x.S({"X", "Y"})).same_block(x.a, x.b);
                     }},
                    {"not PI wrt any proper subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & S : proper_subsets_with(c, x.v))
                             if (check_pi(c, x.v, x.a, x.b, S).holds)
                                 return false;
                         return true;
                     }},
                    {"not Sub either way, not FI", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_sub(c, x.v, x.a, x.b).holds && ! check_sub(c, x.v, x.b, x.a).holds &&
                             ! check_fi(c, x.v, x.a, x.b).holds;
                     }},
                    {"not NTI wrt any proper subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! nti_somewhere(c, x.v, x.a, x.b);
                     }},
                }));

            // -------------------------------------------------------------- G-FIG8b
            g.push_back(entry("G-FIG8b",
                "subproblem interchangeable wrt {X,Y,Z}, neighbourhood-partially interchangeable nowhere",
                "var X a b\n"
                "var Y p q u\n"
                "var Z r s\n"
                "var W w1 w2\n"
                "con X Y : allow (a,p) (a,q) (b,p) (b,u)\n"
                "con X Z : allow (a,r) (a,s) (b,r)\n"
                "con X W : allow (a,w1) (b,w2)\n"
                "con Y Z : allow (p,r)\n",
                {"X", "a", "b"},
                {
                    {"SPrI wrt {X,Y,Z}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_spr_i(c, x.v, x.a, x.b, x.S({"X", "Y", "Z"})).holds;
                     }},
                    {"not NPI wrt any proper subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & S : proper_subsets_with(c, x.v))
                             if (npi_classes(c, x.v, S).same_block(x.a, x.b))
                                 return false;
                         return true;
                     }},
                    {"not Sub either way", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_sub(c, x.v, x.a, x.b).holds && ! check_sub(c, x.v, x.b, x.a).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG9
            g.push_back(entry("G-FIG9",
                "tuple-interchangeable through the neighbourhood, never dynamically substitutable",
                "var X a b\n"
                "var Y p q\n"
                "var Z r s\n"
                "con X Y : allow (a,p) (b,q)\n"
                "con X Z : allow (a,r) (a,s) (b,r) (b,s)\n"
                "con Y Z : allow (p,r) (p,s) (q,r) (q,s)\n",
                {"X", "a", "b"},
                {
                    {"NTI with smallest S = {X,Y}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & e : nti_pairs(c, x.v, 2))
                             if (e.a == std::min(x.a, x.b) && e.b == std::max(x.a, x.b))
                                 return e.S == x.S({"X", "Y"});
                         return false;
                     }},
                    {"no assignment set gives a non-vacuous FDynSub either way", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! exists_nonvacuous_fdyn_sub(c, x.v, x.a, x.b).holds &&
                             ! exists_nonvacuous_fdyn_sub(c, x.v, x.b, x.a).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG9b
            g.push_back(entry("G-FIG9b",
                "context-dependent interchangeable through clique {a,b,d,e}; not Sub, FI or PI",
                "var X a b\n"
                "var Y d d2 d3\n"
                "var Z e e2 e3\n"
                "con X Y : allow (a,d) (a,d3) (b,d) (b,d2)\n"
                "con X Z : allow (a,e) (a,e3) (b,e) (b,e2)\n"
                "con Y Z : allow (d,e) (d2,e2) (d3,e3)\n",
                {"X", "a", "b"},
                {
                    {"CtxDepI(a,b) with witness extension {Y=d, Z=e}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         auto r = check_ctx_dep(c, x.v, x.a, x.b);
                         if (! r.holds || ! r.witness)
                             return false;
                         return r.witness->values[c.variable_index("Y")] == c.value_index(c.variable_index("Y"), "d") &&
                             r.witness->values[c.variable_index("Z")] == c.value_index(c.variable_index("Z"), "e");
                     }},
                    {"the clique search agrees", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return check_ctx_dep_clique(c, x.v, x.a, x.b).holds;
                     }},
                    {"not Sub either way, not FI", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_sub(c, x.v, x.a, x.b).holds && ! check_sub(c, x.v, x.b, x.a).holds &&
                             ! check_fi(c, x.v, x.a, x.b).holds;
                     }},
                    {"not PI wrt any proper subset", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         for (const auto & S : proper_subsets_with(c, x.v))
                             if (check_pi(c, x.v, x.a, x.b, S).holds)
                                 return false;
                         return true;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG10
            g.push_back(entry("G-FIG10",
                "shared supports everywhere, substitutable in neither direction",
                "var X a b\n"
                "var Y p q r\n"
                "con X Y : allow (a,p) (a,q) (b,p) (b,r)\n",
                {"X", "a", "b"},
                {
                    {"GNSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return has_pair(gnsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"not Sub either way", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_sub(c, x.v, x.a, x.b).holds && ! check_sub(c, x.v, x.b, x.a).holds;
                     }},
                    {"not NSub either way", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         auto ps = nsub_pairs(c, x.v);
                         return ! has_pair(ps, x.a, x.b) && ! has_pair(ps, x.b, x.a);
                     }},
                }));

            // -------------------------------------------------------------- G-FIG10b
            g.push_back(entry("G-FIG10b",
                "neighbourhood-substitutable without shared supports: no condition can interchange them",
                "var X a b\n"
                "var Y p q\n"
                "con X Y : allow (a,p) (a,q)\n",
                {"X", "a", "b"},
                {
                    {"NSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return has_pair(nsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"not GNSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! has_pair(gnsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"not ConNI: the shared-support construction yields nothing", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! conni_construction(c, x.v, x.a, x.b).has_value();
                     }},
                }));

            // -------------------------------------------------------------- G-FIG10c
            g.push_back(entry("G-FIG10c",
                "shared supports but no common solution context",
                "var X a b\n"
                "var Y p q s\n"
                "var Z r t\n"
                "con X Y : allow (a,p) (a,q) (b,q) (b,s)\n"
                "con Y Z : allow (p,r) (s,t)\n",
                {"X", "a", "b"},
                {
                    {"GNSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return has_pair(gnsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"not CtxDepI", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! check_ctx_dep(c, x.v, x.a, x.b).holds;
                     }},
                    {"no assignment set gives a non-vacuous FDynI", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! exists_nonvacuous_fdyn_i(c, x.v, x.a, x.b).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-FIG11
            g.push_back(entry("G-FIG11",
                "a condition set interchanges the pair although one constraint shares no support",
                "var X a b\n"
                "var Y p q\n"
                "var Z r s\n"
                "con X Y : allow (a,p) (b,q)\n"
                "con X Z : allow (a,r) (a,s) (b,r)\n",
                {"X", "a", "b"},
                {
                    {"ConNI under the constructed condition set", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         auto extras = conni_construction(c, x.v, x.a, x.b);
                         return extras && con_local(c, x.v, x.a, x.b, *extras, ConLocalConcept::con_ni);
                     }},
                    {"not GNSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! has_pair(gnsub_pairs(c, x.v), x.a, x.b);
                     }},
                }));

            // -------------------------------------------------------------- G-T18a
            g.push_back(entry("G-T18a",
                "tuple-substitutable (vacuously: b reaches no solution) yet never dynamically substitutable",
                "var X a b\n"
                "var Y p q\n"
                "var Z r\n"
                "con X Y : allow (a,p) (b,q)\n"
                "con X Z : allow (a,r) (b,r)\n"
                "con Y Z : allow (p,r)\n",
                {"X", "a", "b"},
                {
                    {"TupSub({X=a},{X=b})", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         Assignment left(c.variable_count()), right(c.variable_count());
                         left.values[x.v] = x.a;
                         right.values[x.v] = x.b;
                         return check_tup_sub(c, {x.v}, left, right).holds;
                     }},
                    {"b participates in no solution", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! value_in_some_solution(c, x.v, x.b);
                     }},
                    {"no assignment set gives a non-vacuous FDynSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return ! exists_nonvacuous_fdyn_sub(c, x.v, x.a, x.b).holds;
                     }},
                }));

            // -------------------------------------------------------------- G-T18b
            g.push_back(entry("G-T18b",
                "dynamically substitutable under {Z=r}, but not tuple-substitutable globally",
                "var X a b\n"
                "var Y p q\n"
                "var Z r s\n"
                "con X Y : allow (a,p) (b,p) (b,q)\n"
                "con X Z : allow (a,r) (b,r) (b,s)\n"
                "con Y Z : allow (p,r) (q,s)\n",
                {"X", "a", "b"},
                {
                    {"some assignment set gives a non-vacuous FDynSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return exists_nonvacuous_fdyn_sub(c, x.v, x.a, x.b).holds;
                     }},
                    {"FDynSub(a,b) holds under {Z=r} in particular", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         auto A = assignment_from_names(c, {{"Z", "r"}});
                         return check_fdyn(c, x.v, x.a, x.b, A, DynamicConcept::fdyn_sub).holds;
                     }},
                    {"not TupSub({X=a},{X=b})", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         Assignment left(c.variable_count()), right(c.variable_count());
                         left.values[x.v] = x.a;
                         right.values[x.v] = x.b;
                         return ! check_tup_sub(c, {x.v}, left, right).holds;
                     }},
                }));

            // ------------------------------------------------- audit witnesses
            g.push_back(entry("G-SATV-NPI",
                "an NPI pair whose removal destroys satisfiability",
                "var X a b\n"
                "var Y p q\n"
                "var Z r\n"
                "con X Y : allow (a,p) (b,q)\n"
                "con X Z : allow (a,r) (b,r)\n"
                "con Y Z : allow (q,r)\n",
                {"X", "a", "b"},
                {
                    {"NPI wrt {X,Y}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return npi_classes(c, x.v, x.S({"X", "Y"})).same_block(x.a, x.b);
                     }},
                    {"removing b flips satisfiability", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return removal_flips_solvability(c, x.v, x.b);
                     }},
                }));

            g.push_back(entry("G-SATV-NIC",
                "per-constraint interchangeability licenses no removal",
                "var X a b\n"
                "var Y p\n"
                "var Z r\n"
                "con X Y : allow (a,p) (b,p)\n"
                "con X Z : allow (b,r)\n",
                {"X", "a", "b"},
                {
                    {"NIc and NSubc relative to the X,Y constraint", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return nic_classes(c, x.v, 0).same_block(x.a, x.b) &&
                             has_pair(nsubc_pairs(c, x.v, 0), x.a, x.b);
                     }},
                    {"removing b flips satisfiability", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return removal_flips_solvability(c, x.v, x.b);
                     }},
                }));

            g.push_back(entry("G-SATV-DIR",
                "directional interchangeability licenses no removal",
                "var X a b\n"
                "var Y p\n"
                "con X Y : allow (b,p)\n",
                {"X", "a", "b"},
                {
                    {"DirI and DirSub under the ordering X,Y", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         vector<int> ordering{c.variable_index("X"), c.variable_index("Y")};
                         return diri_classes(c, x.v, ordering).same_block(x.a, x.b) &&
                             has_pair(dirsub_pairs(c, x.v, ordering), x.a, x.b);
                     }},
                    {"removing b flips satisfiability", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return removal_flips_solvability(c, x.v, x.b);
                     }},
                }));

            g.push_back(entry("G-SATV-GNSUB",
                "a GNSub pair whose removal destroys satisfiability",
                "var X a b\n"
                "var Y p q\n"
                "var Z r s\n"
                "con X Y : allow (a,p) (b,p) (b,q)\n"
                "con X Z : allow (a,s) (b,r) (b,s)\n"
                "con Y Z : allow (p,r) (q,s)\n",
                {"X", "a", "b"},
                {
                    {"GNSub(a,b)", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return has_pair(gnsub_pairs(c, x.v), x.a, x.b);
                     }},
                    {"removing b flips satisfiability", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return removal_flips_solvability(c, x.v, x.b);
                     }},
                }));

            g.push_back(entry("G-SATV-DYN",
                "dynamic and conditional forms license no removal in the original problem",
                "var X a b\n"
                "var Y p q\n"
                "var Z r\n"
                "con X Y : allow (a,q) (b,p) (b,q)\n"
                "con X Z : allow (a,r) (b,r)\n"
                "con Y Z : allow (p,r)\n",
                {"X", "a", "b"},
                {
                    {"DynNI wrt {Y=q}", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return dyn_ni(c, x.v, x.a, x.b, assignment_from_names(c, {{"Y", "q"}}));
                     }},
                    {"ConNI, ConNSub, ConI and ConSub under the q-only condition", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         auto extra = constraint_from_names(c,
                             {{"X", "Y"}, {{"a", "q"}, {"b", "q"}}, Polarity::allow});
                         vector<Constraint> E{extra};
                         return con_local(c, x.v, x.a, x.b, E, ConLocalConcept::con_ni) &&
                             con_local(c, x.v, x.a, x.b, E, ConLocalConcept::con_nsub) &&
                             check_conditional(c, x.v, x.a, x.b, E, ConditionalConcept::con_i).holds &&
                             check_conditional(c, x.v, x.a, x.b, E, ConditionalConcept::con_sub).holds;
                     }},
                    {"removing b flips satisfiability", [](const CspInstance & c) {
                         Ctx x{c, "X", "a", "b"};
                         return removal_flips_solvability(c, x.v, x.b);
                     }},
                }));

            return g;
        }
    }

    auto GalleryEntry::instance() const -> CspInstance
    {
        return parse_instance(text);
    }

    auto gallery() -> const vector<GalleryEntry> &
    {
        static const vector<GalleryEntry> g = build_gallery();
        return g;
    }

    auto verify_gallery() -> vector<GalleryFailure>
    {
        vector<GalleryFailure> failures;
        for (const auto & e : gallery()) {
            CspInstance csp = [&] {
                try {
                    return e.instance();
                }
                catch (const Error & err) {
                    failures.push_back({e.id, string{"instance does not parse: "} + err.what()});
                    return CspInstance{};
                }
            }();
            if (csp.variable_count() == 0)
                continue;
            if (emit_instance(csp) != e.text)
                failures.push_back({e.id, "instance text is not canonical"});
            for (const auto & claim : e.claims) {
                bool ok = false;
                try {
                    ok = claim.holds(csp);
                }
                catch (const Error & err) {
                    failures.push_back({e.id, claim.description + " (error: " + err.what() + ")"});
                    continue;
                }
                if (! ok)
                    failures.push_back({e.id, claim.description});
            }
        }
        return failures;
    }
}
