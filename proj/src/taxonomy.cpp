#include <cspix/local.hpp>
#include <cspix/oracle.hpp>
#include <cspix/taxonomy.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

using std::move;
using std::map;
using std::optional;
using std::pair;
using std::set;
using std::string;
using std::vector;

namespace cspix
{
    namespace
    {
        const vector<pair<ConceptId, string>> concept_names = {
            {ConceptId::fi, "FI"}, {ConceptId::ki, "KI"}, {ConceptId::pi, "PI"},
            {ConceptId::spr_i, "SPrI"}, {ConceptId::sub, "Sub"}, {ConceptId::con_i, "ConI"},
            {ConceptId::con_sub, "ConSub"}, {ConceptId::fdyn_i, "FDynI"}, {ConceptId::fdyn_sub, "FDynSub"},
            {ConceptId::ctx_dep_i, "CtxDepI"}, {ConceptId::tup_sub, "TupSub"}, {ConceptId::ni, "NI"},
            {ConceptId::nsub, "NSub"}, {ConceptId::npi, "NPI"}, {ConceptId::dir_i, "DirI"},
            {ConceptId::dir_sub, "DirSub"}, {ConceptId::ni_c, "NIc"}, {ConceptId::nsub_c, "NSubc"},
            {ConceptId::dyn_ni, "DynNI"}, {ConceptId::con_ni, "ConNI"}, {ConceptId::con_nsub, "ConNSub"},
            {ConceptId::nti, "NTI"}, {ConceptId::forw_ni, "ForwNI"}, {ConceptId::gnsub, "GNSub"}};
    }

    auto concept_name(ConceptId c) -> string
    {
        for (const auto & [id, name] : concept_names)
            if (id == c)
                return name;
        throw InvalidParameterError{"unknown concept"};
    }

    auto concept_from_name(const string & name) -> ConceptId
    {
        string lower;
        for (char ch : name)
            lower += char(std::tolower(static_cast<unsigned char>(ch)));
        for (const auto & [id, cname] : concept_names) {
            string c;
            for (char ch : cname)
                c += char(std::tolower(static_cast<unsigned char>(ch)));
            if (c == lower)
                return id;
        }
        throw InvalidParameterError{"unknown concept '" + name + "'"};
    }

    auto all_concepts() -> const vector<ConceptId> &
    {
        static const vector<ConceptId> all = [] {
            vector<ConceptId> v;
            for (const auto & [id, name] : concept_names)
                v.push_back(id);
            return v;
        }();
        return all;
    }

    auto TaxonomyLattice::node(ConceptId id) const -> const LatticeNode &
    {
        for (const auto & n : nodes)
            if (n.id == id)
                return n;
        throw InvalidParameterError{"concept missing from lattice"};
    }

    auto TaxonomyLattice::reachable(ConceptId from, ConceptId to) const -> bool
    {
        set<ConceptId> seen{from};
        vector<ConceptId> frontier{from};
        while (! frontier.empty()) {
            auto c = frontier.back();
            frontier.pop_back();
            if (c == to)
                return true;
            for (const auto & e : edges)
                if (e.from == c && ! seen.count(e.to)) {
                    seen.insert(e.to);
                    frontier.push_back(e.to);
                }
            for (const auto & q : equivalences) {
                if (q.a == c && ! seen.count(q.b)) {
                    seen.insert(q.b);
                    frontier.push_back(q.b);
                }
                if (q.b == c && ! seen.count(q.a)) {
                    seen.insert(q.a);
                    frontier.push_back(q.a);
                }
            }
        }
        return false;
    }

    auto TaxonomyLattice::validate() const -> void
    {
        for (const auto & n : nodes)
            if (n.citation.empty())
                throw Error{"node " + concept_name(n.id) + " lacks a citation"};
        set<pair<ConceptId, ConceptId>> edge_set;
        for (const auto & e : edges) {
            node(e.from);
            node(e.to);
            if (e.citation.empty())
                throw Error{"edge " + concept_name(e.from) + " -> " + concept_name(e.to) + " lacks a citation"};
            if (! edge_set.insert({e.from, e.to}).second)
                throw Error{"duplicate edge " + concept_name(e.from) + " -> " + concept_name(e.to)};
        }

        // acyclic apart from the declared equivalences
        for (const auto & n : nodes)
            for (const auto & e : edges)
                if (e.from == n.id) {
                    // DFS over plain edges only
                    set<ConceptId> seen;
                    vector<ConceptId> frontier{e.to};
                    while (! frontier.empty()) {
                        auto c = frontier.back();
                        frontier.pop_back();
                        if (c == n.id)
                            throw Error{"cycle through " + concept_name(n.id)};
                        if (! seen.insert(c).second)
                            continue;
                        for (const auto & e2 : edges)
                            if (e2.from == c)
                                frontier.push_back(e2.to);
                    }
                }

        for (const auto & i : incomparabilities) {
            if (reachable(i.a, i.b) || reachable(i.b, i.a))
                throw Error{"declared incomparability " + concept_name(i.a) + " / " + concept_name(i.b) +
                    " has a directed path"};
        }
    }

    namespace
    {
        auto builtin_lattice() -> TaxonomyLattice
        {
            using C = ConceptId;
            TaxonomyLattice l;

            auto node = [&](C id, Plane plane, bool preserving, string cite, string note = "") {
                l.nodes.push_back({id, plane, preserving, move(cite), move(note)});
            };

            node(C::fi, Plane::semantic, true, "Freuder (1991)");
            node(C::ki, Plane::semantic, true, "Freuder (1991)");
            node(C::pi, Plane::semantic, true, "Freuder (1991)");
            node(C::spr_i, Plane::semantic, false, "Freuder (1991)");
            node(C::sub, Plane::semantic, true, "Freuder (1991)");
            node(C::con_i, Plane::semantic, false, "Zhang & Freuder (2004)");
            node(C::con_sub, Plane::semantic, false, "Zhang & Freuder (2004)");
            node(C::fdyn_i, Plane::semantic, true, "Prestwich (2004)");
            node(C::fdyn_sub, Plane::semantic, true, "Prestwich (2004)");
            node(C::ctx_dep_i, Plane::semantic, true, "Weigel & Faltings (1996)");
            node(C::tup_sub, Plane::semantic, true, "Jeavons, Cohen & Gyssens (1994)",
                "audited at single-variable tuples, where it coincides with Sub");
            node(C::ni, Plane::syntactic, true, "Freuder (1991)");
            node(C::nsub, Plane::syntactic, true, "Freuder (1991); Bellicha et al. (1994)");
            node(C::npi, Plane::syntactic, false, "Choueiry & Noubir (1998)");
            node(C::dir_i, Plane::syntactic, false, "Naanaa (2007)");
            node(C::dir_sub, Plane::syntactic, false, "Naanaa (2007, 2009)");
            node(C::ni_c, Plane::syntactic, false, "Haselboeck (1993)");
            node(C::nsub_c, Plane::syntactic, false, "Boussemart, Hemery & Lecoutre (2004)");
            node(C::dyn_ni, Plane::syntactic, false, "Beckwith, Choueiry & Zou (2001)",
                "occasionally mislabelled DNPI in the later literature");
            node(C::con_ni, Plane::syntactic, false, "Zhang & Freuder (2004)");
            node(C::con_nsub, Plane::syntactic, false, "Zhang & Freuder (2004)");
            node(C::nti, Plane::syntactic, true, "Neagu & Faltings (1999, 2005)");
            node(C::forw_ni, Plane::syntactic, true, "Wilson (2005)",
                "audited at single-variable tuples, where it coincides with NI");
            node(C::gnsub, Plane::syntactic, false, "Chmeiss & Sais (2003)");

            auto edge = [&](C from, C to, string cite, string transfer) {
                l.edges.push_back({from, to, move(cite), move(transfer)});
            };

            edge(C::ni, C::ki, "Freuder (1991)", "every k from 2 to |V|");
            edge(C::ki, C::fi, "Freuder (1991)", "any witnessing k");
            edge(C::fi, C::pi, "Freuder (1991)", "every boundary S containing the variable");
            edge(C::fi, C::sub, "Freuder (1991)", "both directions");
            edge(C::ni, C::nsub, "Freuder (1991); Bellicha et al. (1994)", "both directions");
            edge(C::nsub, C::sub, "Bellicha et al. (1994)", "same direction");
            edge(C::npi, C::spr_i, "Choueiry & Noubir (1998)", "boundary S maps to (V minus S) plus the variable");
            edge(C::npi, C::ni_c, "Haselboeck (1993); Choueiry & Noubir (1998)",
                "every constraint crossing the boundary");
            edge(C::ni_c, C::nsub_c, "Boussemart, Hemery & Lecoutre (2004)", "same constraint, both directions");
            edge(C::dir_i, C::dir_sub, "Naanaa (2007, 2009)", "same ordering, both directions");
            edge(C::ni, C::nti, "Neagu & Faltings (2005)", "S = {v}");
            edge(C::nti, C::pi, "Neagu & Faltings (2005)", "the witnessing S");
            edge(C::nti, C::npi, "Neagu & Faltings (2005)", "the witnessing S");
            edge(C::nti, C::forw_ni, "Neagu & Faltings (2005); Wilson (2005)",
                "the witnessing tuple mates over S");
            edge(C::forw_ni, C::tup_sub, "Jeavons, Cohen & Gyssens (1994); Wilson (2005)",
                "within-U consistent assignment pairs, both directions");
            edge(C::ni, C::dyn_ni, "Beckwith, Choueiry & Zou (2001)", "every consistent assignment set");
            edge(C::dyn_ni, C::fdyn_i, "Prestwich (2004)", "same assignment set");
            edge(C::dyn_ni, C::forw_ni, "Wilson (2005); Beckwith, Choueiry & Zou (2001)",
                "U = assigned variables plus v, for consistent extensions");
            edge(C::fdyn_i, C::fdyn_sub, "Prestwich (2004)", "same assignment set, both directions");
            edge(C::sub, C::fdyn_sub, "Prestwich (2004)", "every consistent assignment set");
            edge(C::fdyn_sub, C::con_nsub, "Zhang & Freuder (2004); Prestwich (2004)",
                "condition pins every other variable to a witnessing extension");
            edge(C::fi, C::ctx_dep_i, "Weigel & Faltings (1996)",
                "requires the pair to occur in some solution");
            edge(C::fi, C::fdyn_i, "Prestwich (2004)", "every consistent assignment set");
            edge(C::ctx_dep_i, C::gnsub, "Chmeiss & Sais (2003); Weigel & Faltings (1996)", "direct");
            edge(C::gnsub, C::con_ni, "Zhang & Freuder (2004); Chmeiss & Sais (2003)",
                "condition keeps only the shared supports");
            edge(C::con_ni, C::con_i, "Zhang & Freuder (2004)", "same condition set");
            edge(C::con_ni, C::con_nsub, "Zhang & Freuder (2004)", "same condition set, both directions");
            edge(C::con_nsub, C::con_sub, "Zhang & Freuder (2004)", "same condition set, same direction");
            edge(C::con_i, C::con_sub, "Zhang & Freuder (2004)", "same condition set, both directions");

            l.equivalences.push_back({C::npi, C::dir_i, "Naanaa (2007); Choueiry & Noubir (1998)",
                "boundary S corresponds to orderings placing exactly V minus S before the variable"});
            l.equivalences.push_back({C::ctx_dep_i, C::fdyn_i, "Weigel & Faltings (1996); Prestwich (2004)",
                "solution clique corresponds to a non-vacuous assignment set"});

            l.incomparabilities.push_back({C::spr_i, C::pi, "Neagu et al. (2005)",
                "corrects Theorem 5 of Freuder (1991)"});
            l.incomparabilities.push_back({C::npi, C::pi, "Neagu et al. (2005)",
                "corrects Choueiry & Noubir (1998), which claimed NPI implies PI"});
            l.incomparabilities.push_back({C::fi, C::nsub, "Freuder (1991); Bellicha et al. (1994)", ""});
            l.incomparabilities.push_back({C::con_i, C::con_nsub, "Zhang & Freuder (2004)", ""});
            l.incomparabilities.push_back({C::tup_sub, C::fdyn_sub,
                "Jeavons, Cohen & Gyssens (1994); Prestwich (2004)",
                "compared at single-variable tuples against the non-vacuous assignment-set form"});
            l.incomparabilities.push_back({C::nsub, C::gnsub, "Chmeiss & Sais (2003)", ""});

            l.validate();
            return l;
        }
    }

    auto lattice() -> const TaxonomyLattice &
    {
        static const TaxonomyLattice l = builtin_lattice();
        return l;
    }

    auto TaxonomyLattice::to_text() const -> string
    {
        std::ostringstream out;
        for (const auto & n : nodes) {
            out << "concept " << concept_name(n.id) << " "
                << (n.plane == Plane::semantic ? "semantic" : "syntactic") << " "
                << (n.preserving ? "preserving" : "nonpreserving")
                << " : " << n.citation;
            if (! n.note.empty())
                out << " : " << n.note;
            out << "\n";
        }
        for (const auto & e : edges)
            out << "edge " << concept_name(e.from) << " " << concept_name(e.to)
                << " : " << e.transfer << " : " << e.citation << "\n";
        for (const auto & q : equivalences)
            out << "equiv " << concept_name(q.a) << " " << concept_name(q.b)
                << " : " << q.transfer << " : " << q.citation << "\n";
        for (const auto & i : incomparabilities) {
            out << "incomp " << concept_name(i.a) << " " << concept_name(i.b)
                << " : " << i.citation;
            if (! i.note.empty())
                out << " : " << i.note;
            out << "\n";
        }
        return out.str();
    }

    auto lattice_from_text(const string & text) -> TaxonomyLattice
    {
        TaxonomyLattice l;
        std::istringstream in{text};
        string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == '#')
                continue;
            std::istringstream ls{line};
            string kind;
            ls >> kind;

            vector<string> fields;
            {
                auto rest = line.substr(line.find(kind) + kind.size());
                string acc;
                std::size_t pos = 0;
                while (true) {
                    auto sep = rest.find(" : ", pos);
                    if (sep == string::npos) {
                        fields.push_back(rest.substr(pos));
                        break;
                    }
                    fields.push_back(rest.substr(pos, sep - pos));
                    pos = sep + 3;
                }
            }
            auto head = [&](int i) {
                std::istringstream hs{fields.at(0)};
                string tok;
                for (int k = 0; k <= i; ++k)
                    if (! (hs >> tok))
                        throw ParseError{line_no, "missing field"};
                return tok;
            };
            auto field = [&](std::size_t i) -> string {
                if (i >= fields.size())
                    return "";
                auto f = fields[i];
                while (! f.empty() && f.front() == ' ')
                    f.erase(f.begin());
                while (! f.empty() && f.back() == ' ')
                    f.pop_back();
                return f;
            };

            try {
                if (kind == "concept") {
                    LatticeNode n;
                    n.id = concept_from_name(head(0));
                    auto plane = head(1);
                    if (plane != "semantic" && plane != "syntactic")
                        throw ParseError{line_no, "plane must be semantic or syntactic"};
                    n.plane = plane == "semantic" ? Plane::semantic : Plane::syntactic;
                    auto pres = head(2);
                    if (pres != "preserving" && pres != "nonpreserving")
                        throw ParseError{line_no, "expected preserving or nonpreserving"};
                    n.preserving = pres == "preserving";
                    n.citation = field(1);
                    n.note = field(2);
                    l.nodes.push_back(move(n));
                }
                else if (kind == "edge")
                    l.edges.push_back({concept_from_name(head(0)), concept_from_name(head(1)), field(2), field(1)});
                else if (kind == "equiv")
                    l.equivalences.push_back({concept_from_name(head(0)), concept_from_name(head(1)), field(2), field(1)});
                else if (kind == "incomp")
                    l.incomparabilities.push_back({concept_from_name(head(0)), concept_from_name(head(1)), field(1), field(2)});
                else
                    throw ParseError{line_no, "unknown directive '" + kind + "'"};
            }
            catch (const ParseError &) {
                throw;
            }
            catch (const Error & e) {
                throw ParseError{line_no, e.what()};
            }
        }
        return l;
    }

    auto validate_against_builtin(const TaxonomyLattice & candidate) -> void
    {
        const auto & ref = lattice();
        auto name_pair = [](ConceptId a, ConceptId b) {
            return concept_name(a) + " -> " + concept_name(b);
        };

        set<ConceptId> ref_nodes, cand_nodes;
        for (const auto & n : ref.nodes)
            ref_nodes.insert(n.id);
        for (const auto & n : candidate.nodes) {
            if (! ref_nodes.count(n.id))
                throw Error{"bogus concept " + concept_name(n.id)};
            cand_nodes.insert(n.id);
        }
        for (auto id : ref_nodes)
            if (! cand_nodes.count(id))
                throw Error{"missing concept " + concept_name(id)};

        set<pair<ConceptId, ConceptId>> ref_edges, cand_edges;
        for (const auto & e : ref.edges)
            ref_edges.insert({e.from, e.to});
        for (const auto & e : candidate.edges) {
            if (! ref_edges.count({e.from, e.to}))
                throw Error{"bogus edge " + name_pair(e.from, e.to)};
            cand_edges.insert({e.from, e.to});
        }
        for (const auto & e : ref_edges)
            if (! cand_edges.count(e))
                throw Error{"missing edge " + name_pair(e.first, e.second)};

        auto unordered = [](ConceptId a, ConceptId b) {
            return a < b ? pair{a, b} : pair{b, a};
        };
        set<pair<ConceptId, ConceptId>> ref_eq, cand_eq, ref_inc, cand_inc;
        for (const auto & q : ref.equivalences)
            ref_eq.insert(unordered(q.a, q.b));
        for (const auto & q : candidate.equivalences) {
            if (! ref_eq.count(unordered(q.a, q.b)))
                throw Error{"bogus equivalence " + concept_name(q.a) + " / " + concept_name(q.b)};
            cand_eq.insert(unordered(q.a, q.b));
        }
        if (cand_eq != ref_eq)
            throw Error{"missing equivalence"};
        for (const auto & i : ref.incomparabilities)
            ref_inc.insert(unordered(i.a, i.b));
        for (const auto & i : candidate.incomparabilities) {
            if (! ref_inc.count(unordered(i.a, i.b)))
                throw Error{"bogus incomparability " + concept_name(i.a) + " / " + concept_name(i.b)};
            cand_inc.insert(unordered(i.a, i.b));
        }
        if (cand_inc != ref_inc)
            throw Error{"missing incomparability"};
    }

    auto TaxonomyLattice::to_dot() const -> string
    {
        std::ostringstream out;
        out << "digraph interchangeability {\n";
        out << "  rankdir=BT;\n";
        out << "  node [shape=box, style=filled];\n";
        for (const auto & n : nodes) {
            out << "  " << concept_name(n.id)
                << " [fillcolor=" << (n.plane == Plane::semantic ? "lightyellow" : "lightblue")
                << (n.preserving ? ", penwidth=2" : "")
                << ", tooltip=\"" << n.citation << "\"];\n";
        }
        for (const auto & e : edges)
            out << "  " << concept_name(e.from) << " -> " << concept_name(e.to)
                << " [tooltip=\"" << e.citation << "\"];\n";
        for (const auto & q : equivalences)
            out << "  " << concept_name(q.a) << " -> " << concept_name(q.b)
                << " [dir=both, color=darkgreen, tooltip=\"" << q.citation << "\"];\n";
        for (const auto & i : incomparabilities)
            out << "  " << concept_name(i.a) << " -> " << concept_name(i.b)
                << " [dir=none, style=dotted, constraint=false, label=\"||\", tooltip=\""
                << i.citation << "\"];\n";
        out << "  { rank=same;";
        for (const auto & n : nodes)
            if (n.plane == Plane::semantic)
                out << " " << concept_name(n.id) << ";";
        out << " }\n";
        out << "  { rank=same;";
        for (const auto & n : nodes)
            if (n.plane == Plane::syntactic)
                out << " " << concept_name(n.id) << ";";
        out << " }\n";
        out << "}\n";
        return out.str();
    }

    // --- edge verification -----------------------------------------------------

    namespace
    {
        auto proper_boundaries(const CspInstance & csp, int v, int cap) -> vector<vector<int>>
        {
            vector<int> others;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (w != v)
                    others.push_back(w);
            vector<vector<int>> out;
            int max_extra = cap < 0 ? int(others.size()) : std::min<int>(cap - 1, int(others.size()));
            for (int size = 0; size <= max_extra; ++size) {
                vector<int> chosen;
                auto rec = [&](auto && self, std::size_t start) -> void {
                    if (int(chosen.size()) == size) {
                        vector<int> S{v};
                        for (int w : chosen)
                            S.push_back(w);
                        std::sort(S.begin(), S.end());
                        if (int(S.size()) < csp.variable_count())
                            out.push_back(move(S));
                        return;
                    }
                    for (std::size_t i = start; i < others.size(); ++i) {
                        chosen.push_back(others[i]);
                        self(self, i + 1);
                        chosen.pop_back();
                    }
                };
                rec(rec, 0);
            }
            return out;
        }

        auto predecessor_subsets(const CspInstance & csp, int v) -> vector<vector<int>>
        {
            vector<int> others;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (w != v)
                    others.push_back(w);
            vector<vector<int>> out;
            for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
                vector<int> P;
                for (std::size_t i = 0; i < others.size(); ++i)
                    if (mask & (std::size_t{1} << i))
                        P.push_back(others[i]);
                out.push_back(move(P));
            }
            return out;
        }

        auto ordering_with_predecessors(const CspInstance & csp, int v, const vector<int> & P) -> vector<int>
        {
            set<int> pred(P.begin(), P.end());
            vector<int> order;
            for (int w : P)
                order.push_back(w);
            order.push_back(v);
            for (int w = 0; w < csp.variable_count(); ++w)
                if (w != v && ! pred.count(w))
                    order.push_back(w);
            return order;
        }

        auto boundary_of_ordering(int v, const vector<int> & ordering) -> vector<int>
        {
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

        auto complement_plus(const CspInstance & csp, const vector<int> & S, int v) -> vector<int>
        {
            set<int> inside(S.begin(), S.end());
            vector<int> out;
            for (int w = 0; w < csp.variable_count(); ++w)
                if (! inside.count(w) || w == v)
                    out.push_back(w);
            return out;
        }

        auto consistent_tuples(const CspInstance & csp, const vector<int> & U) -> vector<Assignment>
        {
            vector<Assignment> out;
            Assignment asg(csp.variable_count());
            auto rec = [&](auto && self, std::size_t pos) -> void {
                if (pos == U.size()) {
                    if (is_consistent(csp, asg))
                        out.push_back(asg);
                    return;
                }
                for (int val : csp.domain(U[pos])) {
                    asg.values[U[pos]] = val;
                    self(self, pos + 1);
                }
                asg.values[U[pos]] = Assignment::unbound;
            };
            rec(rec, 0);
            return out;
        }

        auto subsets_up_to(int n, int cap) -> vector<vector<int>>
        {
            vector<vector<int>> out;
            for (int size = 1; size <= std::min(cap, n); ++size) {
                vector<int> chosen;
                auto rec = [&](auto && self, int start) -> void {
                    if (int(chosen.size()) == size) {
                        out.push_back(chosen);
                        return;
                    }
                    for (int i = start; i < n; ++i) {
                        chosen.push_back(i);
                        self(self, i + 1);
                        chosen.pop_back();
                    }
                };
                rec(rec, 0);
            }
            return out;
        }

        // condition set pinning every other variable to the extension t, via
        // same-scope restrictions on the constraints of v
        auto restrict_to_extension(const CspInstance & csp, int v, const Assignment & t) -> vector<Constraint>
        {
            vector<Constraint> extras;
            for (int c : csp.constraints_on(v)) {
                const auto & con = csp.constraint(c);
                Constraint extra;
                extra.scope = con.scope;
                extra.polarity = Polarity::allow;
                vector<int> tuple(con.scope.size());
                for (int x : csp.domain(v)) {
                    for (std::size_t i = 0; i < con.scope.size(); ++i)
                        tuple[i] = con.scope[i] == v ? x : t.values[con.scope[i]];
                    extra.tuples.push_back(tuple);
                }
                std::sort(extra.tuples.begin(), extra.tuples.end());
                extras.push_back(move(extra));
            }
            return extras;
        }

        auto sampled_conditions(const CspInstance & csp, Rng & rng, int how_many) -> vector<vector<Constraint>>
        {
            vector<vector<Constraint>> out;
            out.push_back({});  // the empty condition reduces to the plain forms
            for (int s = 1; s < how_many; ++s) {
                vector<Constraint> extras;
                for (const auto & con : csp.constraints()) {
                    if (rng.below(2) == 0)
                        continue;
                    Constraint extra;
                    extra.scope = con.scope;
                    extra.polarity = Polarity::forbid;
                    vector<vector<int>> doms;
                    for (int w : con.scope)
                        doms.push_back(csp.domain(w));
                    vector<int> tuple(con.scope.size());
                    auto rec = [&](auto && self, std::size_t pos) -> void {
                        if (pos == doms.size()) {
                            if (rng.below(4) == 0)
                                extra.tuples.push_back(tuple);
                            return;
                        }
                        for (int val : doms[pos]) {
                            tuple[pos] = val;
                            self(self, pos + 1);
                        }
                    };
                    rec(rec, 0);
                    if (! extra.tuples.empty())
                        extras.push_back(move(extra));
                }
                out.push_back(move(extras));
            }
            return out;
        }

        struct Reporter
        {
            map<string, EdgeViolation> first_per_edge;
            const CspInstance * csp = nullptr;
            string instance_text;

            auto operator()(const string & edge, int v, int a, int b, const string & params) -> void
            {
                if (first_per_edge.count(edge))
                    return;
                first_per_edge.emplace(edge, EdgeViolation{edge,
                    csp->variable_name(v),
                    csp->value_name(v, a) + "," + csp->value_name(v, b),
                    params, instance_text});
            }
        };

        auto guard_instance(const CspInstance & csp, const VerifyConfig & cfg) -> void
        {
            if (csp.variable_count() > cfg.guard_n || csp.max_domain_size() > cfg.guard_d)
                throw SizeGuardError{"instance exceeds the oracle size guard (n <= " +
                    std::to_string(cfg.guard_n) + ", d <= " + std::to_string(cfg.guard_d) +
                    "); set CSPIX_ORACLE_GUARD to raise it"};
        }

        auto subset_names(const CspInstance & csp, const vector<int> & S) -> string
        {
            string out = "{";
            for (std::size_t i = 0; i < S.size(); ++i)
                out += (i ? "," : "") + csp.variable_name(S[i]);
            return out + "}";
        }
    }

    auto guard_from_env(VerifyConfig cfg) -> VerifyConfig
    {
        if (const char * env = std::getenv("CSPIX_ORACLE_GUARD")) {
            string s{env};
            auto comma = s.find(',');
            try {
                if (comma == string::npos)
                    cfg.guard_n = cfg.guard_d = std::stoi(s);
                else {
                    cfg.guard_n = std::stoi(s.substr(0, comma));
                    cfg.guard_d = std::stoi(s.substr(comma + 1));
                }
            }
            catch (const std::exception &) {
                throw InvalidParameterError{"CSPIX_ORACLE_GUARD must be 'n,d'"};
            }
        }
        return cfg;
    }

    auto verify_edges(const vector<CspInstance> & instances, const VerifyConfig & cfg)
        -> vector<EdgeViolation>
    {
        Reporter report;
        Rng rng{cfg.seed};

        for (const auto & csp : instances) {
            guard_instance(csp, cfg);
            auto text = emit_instance(csp);
            report.csp = &csp;
            report.instance_text = text;

            int n = csp.variable_count();
            auto conditions = sampled_conditions(csp, rng, cfg.extra_sets);

            for (int v = 0; v < n; ++v) {
                auto ni_part = ni_classes(csp, v);
                auto nsubp = nsub_pairs(csp, v);
                auto gnsubp = gnsub_pairs(csp, v);
                auto ntis = nti_pairs(csp, v, cfg.s_max);
                auto boundaries = proper_boundaries(csp, v, cfg.max_boundary);
                auto assignment_sets = consistent_assignment_sets(csp, v);
                auto preds = predecessor_subsets(csp, v);

                auto has_pair = [](const vector<pair<int, int>> & ps, int a, int b) {
                    return std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end();
                };

                const auto & dom = csp.domain(v);
                for (int a : dom)
                    for (int b : dom) {
                        if (a == b)
                            continue;

                        bool ni_same = ni_part.same_block(a, b);
                        bool fi = check_fi(csp, v, a, b).holds;
                        bool sub_ab = check_sub(csp, v, a, b).holds;

                        if (a < b) {
                            // NI -> KI -> FI, with the k-chain monotone.
                            // Below the maximum arity a subproblem cannot
                            // contain every constraint on the variable, so
                            // k-interchangeability only climbs the chain
                            // from max(2, arity) upward.
                            int base = std::max(2, csp.max_arity());
                            vector<bool> ki_holds(n + 1, false);
                            for (int k = 2; k <= n; ++k)
                                ki_holds[k] = check_ki(csp, v, a, b, k).holds;
                            for (int k = 2; k <= n; ++k) {
                                if (ni_same && ! ki_holds[k])
                                    report("NI -> KI", v, a, b, "k=" + std::to_string(k));
                                if (k >= base && ki_holds[k] && ! fi)
                                    report("KI -> FI", v, a, b, "k=" + std::to_string(k));
                                if (k >= base && k < n && ki_holds[k] && ! ki_holds[k + 1])
                                    report("KI -> KI+1", v, a, b, "k=" + std::to_string(k));
                            }

                            if (fi) {
                                for (const auto & S : boundaries)
                                    if (! check_pi(csp, v, a, b, S).holds)
                                        report("FI -> PI", v, a, b, "S=" + subset_names(csp, S));
                                if (value_in_some_solution(csp, v, a) && ! check_ctx_dep(csp, v, a, b).holds)
                                    report("FI -> CtxDepI", v, a, b, "");
                                for (const auto & A : assignment_sets)
                                    if (! check_fdyn(csp, v, a, b, A, DynamicConcept::fdyn_i).holds) {
                                        report("FI -> FDynI", v, a, b, "A=" + format_assignment(csp, A));
                                        break;
                                    }
                            }

                            if (ni_same) {
                                if (! has_pair(nsubp, a, b) || ! has_pair(nsubp, b, a))
                                    report("NI -> NSub", v, a, b, "");
                                if (! nti_check(csp, v, a, b, {v}))
                                    report("NI -> NTI", v, a, b, "S={v}");
                                for (const auto & A : assignment_sets)
                                    if (! dyn_ni(csp, v, a, b, A)) {
                                        report("NI -> DynNI", v, a, b, "A=" + format_assignment(csp, A));
                                        break;
                                    }
                            }

                            // boundary-parameterised chain
                            for (const auto & S : boundaries) {
                                if (! npi_classes(csp, v, S).same_block(a, b))
                                    continue;
                                if (! check_spr_i(csp, v, a, b, complement_plus(csp, S, v)).holds)
                                    report("NPI -> SPrI", v, a, b, "S=" + subset_names(csp, S));
                                set<int> inside(S.begin(), S.end());
                                for (int c : csp.constraints_on(v)) {
                                    bool crossing = false;
                                    for (int w : csp.constraint(c).scope)
                                        if (! inside.count(w))
                                            crossing = true;
                                    if (crossing && ! nic_classes(csp, v, c).same_block(a, b))
                                        report("NPI -> NIc", v, a, b,
                                            "S=" + subset_names(csp, S) + " c=" + std::to_string(c));
                                }
                            }

                            for (int c : csp.constraints_on(v)) {
                                if (! nic_classes(csp, v, c).same_block(a, b))
                                    continue;
                                auto ps = nsubc_pairs(csp, v, c);
                                if (! has_pair(ps, a, b) || ! has_pair(ps, b, a))
                                    report("NIc -> NSubc", v, a, b, "c=" + std::to_string(c));
                            }

                            for (const auto & P : preds) {
                                auto ordering = ordering_with_predecessors(csp, v, P);
                                if (! diri_classes(csp, v, ordering).same_block(a, b))
                                    continue;
                                auto ps = dirsub_pairs(csp, v, ordering);
                                if (! has_pair(ps, a, b) || ! has_pair(ps, b, a))
                                    report("DirI -> DirSub", v, a, b, "pred=" + subset_names(csp, P));
                            }

                            // dynamic chain
                            for (const auto & A : assignment_sets) {
                                if (! dyn_ni(csp, v, a, b, A))
                                    continue;
                                if (! check_fdyn(csp, v, a, b, A, DynamicConcept::fdyn_i).holds)
                                    report("DynNI -> FDynI", v, a, b, "A=" + format_assignment(csp, A));
                                auto u = A, u2 = A;
                                u.values[v] = a;
                                u2.values[v] = b;
                                if (is_consistent(csp, u) && is_consistent(csp, u2)) {
                                    vector<int> U;
                                    for (int w = 0; w < n; ++w)
                                        if (u.bound(w))
                                            U.push_back(w);
                                    if (! forw_ni(csp, U, u, u2).holds)
                                        report("DynNI -> ForwNI", v, a, b, "A=" + format_assignment(csp, A));
                                }
                            }

                            for (const auto & A : assignment_sets) {
                                if (! check_fdyn(csp, v, a, b, A, DynamicConcept::fdyn_i).holds)
                                    continue;
                                if (! check_fdyn(csp, v, a, b, A, DynamicConcept::fdyn_sub).holds ||
                                    ! check_fdyn(csp, v, b, a, A, DynamicConcept::fdyn_sub).holds)
                                    report("FDynI -> FDynSub", v, a, b, "A=" + format_assignment(csp, A));
                            }

                            if (check_ctx_dep(csp, v, a, b).holds && ! has_pair(gnsubp, a, b))
                                report("CtxDepI -> GNSub", v, a, b, "");

                            if (has_pair(gnsubp, a, b)) {
                                auto extras = conni_construction(csp, v, a, b);
                                if (! extras || ! con_local(csp, v, a, b, *extras, ConLocalConcept::con_ni))
                                    report("GNSub -> ConNI", v, a, b, "constructed condition");
                            }

                            // conditional chain under sampled condition sets
                            for (std::size_t e = 0; e < conditions.size(); ++e) {
                                const auto & E = conditions[e];
                                auto tag = "E#" + std::to_string(e);
                                if (con_local(csp, v, a, b, E, ConLocalConcept::con_ni)) {
                                    if (! check_conditional(csp, v, a, b, E, ConditionalConcept::con_i).holds)
                                        report("ConNI -> ConI", v, a, b, tag);
                                    if (! con_local(csp, v, a, b, E, ConLocalConcept::con_nsub) ||
                                        ! con_local(csp, v, b, a, E, ConLocalConcept::con_nsub))
                                        report("ConNI -> ConNSub", v, a, b, tag);
                                }
                                if (con_local(csp, v, a, b, E, ConLocalConcept::con_nsub) &&
                                    ! check_conditional(csp, v, a, b, E, ConditionalConcept::con_sub).holds)
                                    report("ConNSub -> ConSub", v, a, b, tag);
                                if (check_conditional(csp, v, a, b, E, ConditionalConcept::con_i).holds) {
                                    if (! check_conditional(csp, v, a, b, E, ConditionalConcept::con_sub).holds ||
                                        ! check_conditional(csp, v, b, a, E, ConditionalConcept::con_sub).holds)
                                        report("ConI -> ConSub", v, a, b, tag);
                                }
                            }
                        }

                        // ordered-pair edges
                        if (fi && (! sub_ab || ! check_sub(csp, v, b, a).holds))
                            report("FI -> Sub", v, a, b, "");
                        if (has_pair(nsubp, a, b) && ! sub_ab)
                            report("NSub -> Sub", v, a, b, "");
                        if (sub_ab)
                            for (const auto & A : assignment_sets)
                                if (! check_fdyn(csp, v, a, b, A, DynamicConcept::fdyn_sub).holds) {
                                    report("Sub -> FDynSub", v, a, b, "A=" + format_assignment(csp, A));
                                    break;
                                }

                        // FDynSub -> ConNSub through a witnessing extension
                        for (const auto & A : assignment_sets) {
                            if (! check_fdyn(csp, v, a, b, A, DynamicConcept::fdyn_sub).holds)
                                continue;
                            auto reduced = apply_assignment(csp, A);
                            auto sols = enumerate_solutions(reduced).solutions;
                            optional<Assignment> through_b;
                            for (const auto & s : sols)
                                if (s.values[v] == b) {
                                    through_b = s;
                                    break;
                                }
                            if (! through_b)
                                continue;
                            auto t = *through_b;
                            t.values[v] = Assignment::unbound;
                            auto extras = restrict_to_extension(csp, v, t);
                            if (! con_local(csp, v, a, b, extras, ConLocalConcept::con_nsub))
                                report("FDynSub -> ConNSub", v, a, b, "A=" + format_assignment(csp, A));
                        }
                    }

                // NTI entries (unordered, with their witnessing S). The NPI
                // side compares full scope-minus-v projections, which a
                // constraint straddling the boundary (scope partly inside S,
                // partly outside) makes strictly stronger than the tuple
                // matching; the edge is stated for binary constraints, so
                // straddling boundaries are skipped.
                for (const auto & entry : ntis) {
                    auto tag = "S=" + subset_names(csp, entry.S);
                    if (! check_pi(csp, v, entry.a, entry.b, entry.S).holds)
                        report("NTI -> PI", v, entry.a, entry.b, tag);
                    set<int> inside(entry.S.begin(), entry.S.end());
                    bool straddles = false;
                    for (const auto & con : csp.constraints()) {
                        bool in_s_other = false, out = false;
                        for (int w : con.scope) {
                            if (! inside.count(w))
                                out = true;
                            else if (w != v)
                                in_s_other = true;
                        }
                        if (in_s_other && out)
                            straddles = true;
                    }
                    if (! straddles && ! npi_classes(csp, v, entry.S).same_block(entry.a, entry.b))
                        report("NTI -> NPI", v, entry.a, entry.b, tag);
                    for (const auto & [t, t2] : entry.mates)
                        if (! forw_ni(csp, entry.S, t, t2).holds)
                            report("NTI -> ForwNI", v, entry.a, entry.b, tag);
                }
            }

            // ForwNI -> TupSub over small tuple scopes
            for (const auto & U : subsets_up_to(n, cfg.max_tuple_vars)) {
                auto tuples = consistent_tuples(csp, U);
                for (std::size_t i = 0; i < tuples.size(); ++i)
                    for (std::size_t j = 0; j < tuples.size(); ++j) {
                        if (i == j)
                            continue;
                        if (! forw_ni(csp, U, tuples[i], tuples[j]).holds)
                            continue;
                        if (! check_tup_sub(csp, U, tuples[i], tuples[j]).holds ||
                            ! check_tup_sub(csp, U, tuples[j], tuples[i]).holds) {
                            Reporter & r = report;
                            if (! r.first_per_edge.count("ForwNI -> TupSub"))
                                r.first_per_edge.emplace("ForwNI -> TupSub",
                                    EdgeViolation{"ForwNI -> TupSub", subset_names(csp, U),
                                        format_assignment(csp, tuples[i]) + " / " + format_assignment(csp, tuples[j]),
                                        "", text});
                        }
                    }
            }
        }

        vector<EdgeViolation> out;
        for (auto & [edge, violation] : report.first_per_edge)
            out.push_back(move(violation));
        return out;
    }

    auto verify_equivalences(const vector<CspInstance> & instances, const VerifyConfig & cfg)
        -> vector<EdgeViolation>
    {
        Reporter report;
        for (const auto & csp : instances) {
            guard_instance(csp, cfg);
            report.csp = &csp;
            report.instance_text = emit_instance(csp);
            int n = csp.variable_count();

            for (int v = 0; v < n; ++v) {
                const auto & dom = csp.domain(v);
                auto boundaries = proper_boundaries(csp, v, cfg.max_boundary);
                // the full boundary corresponds to orderings placing v first
                vector<int> everything;
                for (int w = 0; w < n; ++w)
                    everything.push_back(w);
                boundaries.push_back(everything);

                for (std::size_t i = 0; i < dom.size(); ++i)
                    for (std::size_t j = i + 1; j < dom.size(); ++j) {
                        int a = dom[i], b = dom[j];

                        for (const auto & S : boundaries) {
                            bool npi = npi_classes(csp, v, S).same_block(a, b);
                            set<int> inside(S.begin(), S.end());
                            vector<int> P;
                            for (int w = 0; w < n; ++w)
                                if (! inside.count(w))
                                    P.push_back(w);
                            bool diri = diri_classes(csp, v, ordering_with_predecessors(csp, v, P)).same_block(a, b);
                            if (npi != diri)
                                report("NPI == DirI", v, a, b, "S=" + subset_names(csp, S));
                        }

                        if (n <= 5) {
                            vector<int> perm;
                            for (int w = 0; w < n; ++w)
                                perm.push_back(w);
                            do {
                                bool diri = diri_classes(csp, v, perm).same_block(a, b);
                                bool npi = npi_classes(csp, v, boundary_of_ordering(v, perm)).same_block(a, b);
                                if (diri != npi)
                                    report("DirI == NPI", v, a, b, "ordering");
                            } while (std::next_permutation(perm.begin(), perm.end()));
                        }

                        bool ctx = check_ctx_dep(csp, v, a, b).holds;
                        bool fdyn = exists_nonvacuous_fdyn_i(csp, v, a, b).holds;
                        if (ctx != fdyn)
                            report("CtxDepI == FDynI", v, a, b, "");
                        if (csp.max_arity() <= 2 && check_ctx_dep_clique(csp, v, a, b).holds != ctx)
                            report("CtxDepI == clique", v, a, b, "");
                    }
            }
        }

        vector<EdgeViolation> out;
        for (auto & [edge, violation] : report.first_per_edge)
            out.push_back(move(violation));
        return out;
    }

    // --- satisfiability-preservation audit --------------------------------------

    auto AuditReport::violations() const -> int
    {
        int n = 0;
        for (const auto & r : records)
            if (! r.preserved)
                ++n;
        return n;
    }

    auto auditable_concepts() -> const vector<ConceptId> &
    {
        static const vector<ConceptId> cs = {
            ConceptId::fi, ConceptId::ki, ConceptId::pi, ConceptId::spr_i, ConceptId::sub,
            ConceptId::fdyn_i, ConceptId::fdyn_sub, ConceptId::ctx_dep_i, ConceptId::tup_sub,
            ConceptId::ni, ConceptId::nsub, ConceptId::npi, ConceptId::dir_i, ConceptId::dir_sub,
            ConceptId::ni_c, ConceptId::nsub_c, ConceptId::dyn_ni, ConceptId::nti,
            ConceptId::forw_ni, ConceptId::gnsub, ConceptId::con_ni, ConceptId::con_nsub,
            ConceptId::con_i, ConceptId::con_sub};
        return cs;
    }

    auto audit_sat_preservation(ConceptId concept_id, const CspInstance & csp, const VerifyConfig & cfg)
        -> AuditReport
    {
        guard_instance(csp, cfg);
        AuditReport report{concept_id, {}};
        bool before = solvable(csp);

        auto record = [&](int v, int a, int b, const string & params) {
            bool after = solvable(csp.without_value(v, b));
            report.records.push_back({v, a, b, params, before == after});
        };

        Rng rng{cfg.seed};
        auto conditions = sampled_conditions(csp, rng, cfg.extra_sets);

        for (int v = 0; v < csp.variable_count(); ++v) {
            const auto & dom = csp.domain(v);
            if (dom.size() < 2)
                continue;
            auto boundaries = proper_boundaries(csp, v, cfg.max_boundary);
            for (int a : dom)
                for (int b : dom) {
                    if (a == b)
                        continue;
                    switch (concept_id) {
                    case ConceptId::fi:
                        if (check_fi(csp, v, a, b).holds)
                            record(v, a, b, "");
                        break;
                    case ConceptId::ki:
                        for (int k = 2; k <= csp.variable_count(); ++k)
                            if (check_ki(csp, v, a, b, k).holds) {
                                record(v, a, b, "k=" + std::to_string(k));
                                break;
                            }
                        break;
                    case ConceptId::pi:
                        for (const auto & S : boundaries)
                            if (check_pi(csp, v, a, b, S).holds) {
                                record(v, a, b, "S=" + subset_names(csp, S));
                                break;
                            }
                        break;
                    case ConceptId::spr_i:
                        for (const auto & S : boundaries)
                            if (S.size() >= 2 && check_spr_i(csp, v, a, b, S).holds) {
                                record(v, a, b, "S=" + subset_names(csp, S));
                                break;
                            }
                        break;
                    case ConceptId::sub:
                        if (check_sub(csp, v, a, b).holds)
                            record(v, a, b, "");
                        break;
                    case ConceptId::fdyn_i:
                        if (exists_nonvacuous_fdyn_i(csp, v, a, b).holds)
                            record(v, a, b, "");
                        break;
                    case ConceptId::fdyn_sub:
                        if (exists_nonvacuous_fdyn_sub(csp, v, a, b).holds)
                            record(v, a, b, "");
                        break;
                    case ConceptId::ctx_dep_i:
                        if (check_ctx_dep(csp, v, a, b).holds)
                            record(v, a, b, "");
                        break;
                    case ConceptId::tup_sub: {
                        Assignment left(csp.variable_count()), right(csp.variable_count());
                        left.values[v] = a;
                        right.values[v] = b;
                        if (check_tup_sub(csp, {v}, left, right).holds)
                            record(v, a, b, "single-variable tuples");
                        break;
                    }
                    case ConceptId::forw_ni: {
                        Assignment left(csp.variable_count()), right(csp.variable_count());
                        left.values[v] = a;
                        right.values[v] = b;
                        if (forw_ni(csp, {v}, left, right).holds)
                            record(v, a, b, "single-variable tuples");
                        break;
                    }
                    case ConceptId::ni:
                        if (ni_classes(csp, v).same_block(a, b))
                            record(v, a, b, "");
                        break;
                    case ConceptId::nsub: {
                        auto ps = nsub_pairs(csp, v);
                        if (std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end())
                            record(v, a, b, "");
                        break;
                    }
                    case ConceptId::npi:
                        for (const auto & S : boundaries)
                            if (npi_classes(csp, v, S).same_block(a, b)) {
                                record(v, a, b, "S=" + subset_names(csp, S));
                                break;
                            }
                        break;
                    case ConceptId::dir_i:
                    case ConceptId::dir_sub:
                        for (const auto & P : predecessor_subsets(csp, v)) {
                            auto ordering = ordering_with_predecessors(csp, v, P);
                            bool hit = concept_id == ConceptId::dir_i
                                ? diri_classes(csp, v, ordering).same_block(a, b)
                                : [&] {
                                      auto ps = dirsub_pairs(csp, v, ordering);
                                      return std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end();
                                  }();
                            if (hit) {
                                record(v, a, b, "pred=" + subset_names(csp, P));
                                break;
                            }
                        }
                        break;
                    case ConceptId::ni_c:
                    case ConceptId::nsub_c:
                        for (int c : csp.constraints_on(v)) {
                            bool hit = concept_id == ConceptId::ni_c
                                ? nic_classes(csp, v, c).same_block(a, b)
                                : [&] {
                                      auto ps = nsubc_pairs(csp, v, c);
                                      return std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end();
                                  }();
                            if (hit) {
                                record(v, a, b, "c=" + std::to_string(c));
                                break;
                            }
                        }
                        break;
                    case ConceptId::dyn_ni:
                        for (const auto & A : consistent_assignment_sets(csp, v))
                            if (dyn_ni(csp, v, a, b, A)) {
                                record(v, a, b, "A=" + format_assignment(csp, A));
                                break;
                            }
                        break;
                    case ConceptId::nti: {
                        auto S_all = proper_boundaries(csp, v, -1);
                        for (const auto & S : S_all)
                            if (nti_check(csp, v, a, b, S)) {
                                record(v, a, b, "S=" + subset_names(csp, S));
                                break;
                            }
                        break;
                    }
                    case ConceptId::gnsub: {
                        auto ps = gnsub_pairs(csp, v);
                        if (std::find(ps.begin(), ps.end(), pair{a, b}) != ps.end())
                            record(v, a, b, "");
                        break;
                    }
                    case ConceptId::con_ni:
                    case ConceptId::con_nsub:
                    case ConceptId::con_i:
                    case ConceptId::con_sub: {
                        auto eval = [&](const vector<Constraint> & E) {
                            switch (concept_id) {
                            case ConceptId::con_ni: return con_local(csp, v, a, b, E, ConLocalConcept::con_ni);
                            case ConceptId::con_nsub: return con_local(csp, v, a, b, E, ConLocalConcept::con_nsub);
                            case ConceptId::con_i: return check_conditional(csp, v, a, b, E, ConditionalConcept::con_i).holds;
                            default: return check_conditional(csp, v, a, b, E, ConditionalConcept::con_sub).holds;
                            }
                        };
                        bool done = false;
                        for (std::size_t e = 0; e < conditions.size() && ! done; ++e)
                            if (eval(conditions[e])) {
                                record(v, a, b, "E#" + std::to_string(e));
                                done = true;
                            }
                        if (! done) {
                            auto extras = conni_construction(csp, v, a, b);
                            if (extras && eval(*extras))
                                record(v, a, b, "constructed condition");
                        }
                        break;
                    }
                    default:
                        throw InvalidParameterError{"concept not supported by the audit"};
                    }
                }
        }
        return report;
    }
}
