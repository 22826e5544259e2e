#include <cspix/io.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

using std::move;
using std::string;
using std::uint64_t;
using std::vector;

namespace cspix
{
    namespace
    {
        auto split_ws(const string & line) -> vector<string>
        {
            vector<string> out;
            std::istringstream in{line};
            string tok;
            while (in >> tok)
                out.push_back(tok);
            return out;
        }

        // tuples look like (a,p) with optional spaces around values
        auto parse_tuples(const string & text, int line_no) -> vector<vector<string>>
        {
            vector<vector<string>> tuples;
            std::size_t pos = 0;
            auto skip_ws = [&] {
                while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                    ++pos;
            };
            skip_ws();
            while (pos < text.size()) {
                if (text[pos] != '(')
                    throw ParseError{line_no, "expected '(' in tuple list"};
                ++pos;
                vector<string> tuple;
                string cur;
                for (;; ++pos) {
                    if (pos >= text.size())
                        throw ParseError{line_no, "unterminated tuple"};
                    char ch = text[pos];
                    if (ch == ',' || ch == ')') {
                        string trimmed;
                        std::istringstream in{cur};
                        in >> trimmed;
                        if (trimmed.empty())
                            throw ParseError{line_no, "empty value in tuple"};
                        string rest;
                        if (in >> rest)
                            throw ParseError{line_no, "value '" + trimmed + " " + rest + "' contains whitespace"};
                        tuple.push_back(trimmed);
                        cur.clear();
                        if (ch == ')') {
                            ++pos;
                            break;
                        }
                    }
                    else
                        cur += ch;
                }
                tuples.push_back(move(tuple));
                skip_ws();
            }
            return tuples;
        }
    }

    auto parse_instance(const string & text) -> CspInstance
    {
        vector<CspInstance::VariableSpec> vars;
        vector<CspInstance::ConstraintSpec> cons;
        vector<std::pair<int, CspInstance::ConstraintSpec>> cons_lines;

        std::istringstream in{text};
        string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != string::npos)
                line = line.substr(0, hash);
            auto toks = split_ws(line);
            if (toks.empty())
                continue;

            if (toks[0] == "var") {
                if (toks.size() < 3)
                    throw ParseError{line_no, "var needs a name and at least one value"};
                CspInstance::VariableSpec v;
                v.name = toks[1];
                for (const auto & existing : vars)
                    if (existing.name == v.name)
                        throw ParseError{line_no, "duplicate variable '" + v.name + "'"};
                v.values.assign(toks.begin() + 2, toks.end());
                for (std::size_t i = 0; i < v.values.size(); ++i)
                    for (std::size_t j = i + 1; j < v.values.size(); ++j)
                        if (v.values[i] == v.values[j])
                            throw ParseError{line_no, "variable '" + v.name + "' repeats value '" + v.values[i] + "'"};
                vars.push_back(move(v));
            }
            else if (toks[0] == "con") {
                auto colon = line.find(':');
                if (colon == string::npos)
                    throw ParseError{line_no, "con needs ':' before the polarity"};
                auto head = split_ws(line.substr(0, colon));
                auto tail = line.substr(colon + 1);
                auto tail_toks = split_ws(tail);
                if (head.size() < 2)
                    throw ParseError{line_no, "con needs at least one scope variable"};
                if (tail_toks.empty() || (tail_toks[0] != "allow" && tail_toks[0] != "forbid"))
                    throw ParseError{line_no, "expected 'allow' or 'forbid' after ':'"};

                CspInstance::ConstraintSpec c;
                c.scope.assign(head.begin() + 1, head.end());
                c.polarity = tail_toks[0] == "allow" ? Polarity::allow : Polarity::forbid;
                auto rest = tail.substr(tail.find(tail_toks[0]) + tail_toks[0].size());
                c.tuples = parse_tuples(rest, line_no);
                cons_lines.emplace_back(line_no, move(c));
            }
            else
                throw ParseError{line_no, "unknown directive '" + toks[0] + "'"};
        }

        for (auto & [ln, c] : cons_lines)
            cons.push_back(move(c));

        try {
            return CspInstance{vars, cons};
        }
        catch (const Error & e) {
            // reattribute instance-level validation to the offending line
            for (const auto & [ln, c] : cons_lines) {
                try {
                    CspInstance probe{vars, {c}};
                }
                catch (const Error &) {
                    throw ParseError{ln, e.what()};
                }
            }
            throw ParseError{line_no, e.what()};
        }
    }

    auto emit_instance(const CspInstance & csp) -> string
    {
        std::ostringstream out;
        for (int v = 0; v < csp.variable_count(); ++v) {
            out << "var " << csp.variable_name(v);
            for (int val : csp.domain(v))
                out << " " << csp.value_name(v, val);
            out << "\n";
        }
        for (const auto & c : csp.constraints()) {
            out << "con";
            for (int v : c.scope)
                out << " " << csp.variable_name(v);
            out << " : " << (c.polarity == Polarity::allow ? "allow" : "forbid");
            for (const auto & t : c.tuples) {
                bool live = true;
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (! csp.in_domain(c.scope[i], t[i])) {
                        live = false;
                        break;
                    }
                if (! live)
                    continue;
                out << " (";
                for (std::size_t i = 0; i < t.size(); ++i)
                    out << (i ? "," : "") << csp.value_name(c.scope[i], t[i]);
                out << ")";
            }
            out << "\n";
        }
        return out.str();
    }

    auto parse_constraints(const CspInstance & csp, const string & text) -> vector<Constraint>
    {
        vector<Constraint> out;
        std::istringstream in{text};
        string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto hash = line.find('#');
            if (hash != string::npos)
                line = line.substr(0, hash);
            auto toks = split_ws(line);
            if (toks.empty())
                continue;
            if (toks[0] != "con")
                throw ParseError{line_no, "only 'con' lines are allowed here"};
            auto colon = line.find(':');
            if (colon == string::npos)
                throw ParseError{line_no, "con needs ':' before the polarity"};
            auto head = split_ws(line.substr(0, colon));
            auto tail = line.substr(colon + 1);
            auto tail_toks = split_ws(tail);
            if (head.size() < 2 || tail_toks.empty() || (tail_toks[0] != "allow" && tail_toks[0] != "forbid"))
                throw ParseError{line_no, "expected 'con <vars> : allow|forbid (tuples)'"};
            CspInstance::ConstraintSpec spec;
            spec.scope.assign(head.begin() + 1, head.end());
            spec.polarity = tail_toks[0] == "allow" ? Polarity::allow : Polarity::forbid;
            auto rest = tail.substr(tail.find(tail_toks[0]) + tail_toks[0].size());
            spec.tuples = parse_tuples(rest, line_no);
            try {
                out.push_back(constraint_from_names(csp, spec));
            }
            catch (const Error & e) {
                throw ParseError{line_no, e.what()};
            }
        }
        return out;
    }

    auto read_instance_file(const string & path) -> CspInstance
    {
        std::ifstream in{path};
        if (! in)
            throw Error{"cannot open '" + path + "'"};
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_instance(buf.str());
    }

    auto write_file(const string & path, const string & text) -> void
    {
        std::ofstream out{path};
        if (! out)
            throw Error{"cannot write '" + path + "'"};
        out << text;
    }

    auto Rng::next() -> uint64_t
    {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    auto Rng::below(uint64_t bound) -> uint64_t
    {
        if (bound == 0)
            throw InvalidParameterError{"empty range"};
        uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t r;
        do
            r = next();
        while (r >= limit);
        return r % bound;
    }

    namespace
    {
        // first k elements of a seeded Fisher-Yates shuffle, returned sorted
        auto sample_without_replacement(uint64_t count, uint64_t k, Rng & rng) -> vector<uint64_t>
        {
            vector<uint64_t> pool(count);
            for (uint64_t i = 0; i < count; ++i)
                pool[i] = i;
            for (uint64_t i = 0; i < k; ++i) {
                uint64_t j = i + rng.below(count - i);
                std::swap(pool[i], pool[j]);
            }
            pool.resize(k);
            std::sort(pool.begin(), pool.end());
            return pool;
        }

        auto combinations(int n, int k) -> vector<vector<int>>
        {
            vector<vector<int>> out;
            vector<int> cur;
            auto rec = [&](auto && self, int start) -> void {
                if (int(cur.size()) == k) {
                    out.push_back(cur);
                    return;
                }
                for (int i = start; i < n; ++i) {
                    cur.push_back(i);
                    self(self, i + 1);
                    cur.pop_back();
                }
            };
            rec(rec, 0);
            return out;
        }
    }

    auto generate_instance(const RandomModel & model) -> CspInstance
    {
        if (model.variables < 1 || model.domain_size < 1)
            throw InvalidModelError{"need at least one variable and one value"};
        if (model.density < 0.0 || model.density > 1.0)
            throw InvalidModelError{"density must be in [0,1]"};
        if (model.tightness < 0.0 || model.tightness > 1.0)
            throw InvalidModelError{"tightness must be in [0,1]"};
        if (model.arity < 1)
            throw InvalidModelError{"arity must be at least 1"};

        if (model.arity > model.variables && model.density > 0.0)
            throw InvalidModelError{"density asks for scopes of an arity the instance cannot hold"};
        auto scopes = combinations(model.variables, std::min(model.arity, model.variables));
        if (model.arity > model.variables)
            scopes.clear();
        auto want = std::llround(model.density * double(scopes.size()));

        uint64_t tuple_count = 1;
        for (int i = 0; i < model.arity; ++i)
            tuple_count *= uint64_t(model.domain_size);
        auto forbid = std::llround(model.tightness * double(tuple_count));

        Rng rng{model.seed};
        auto chosen = sample_without_replacement(scopes.size(), uint64_t(want), rng);

        vector<CspInstance::VariableSpec> vars;
        for (int v = 0; v < model.variables; ++v) {
            CspInstance::VariableSpec spec;
            spec.name = "x" + std::to_string(v);
            for (int d = 0; d < model.domain_size; ++d)
                spec.values.push_back("v" + std::to_string(d));
            vars.push_back(move(spec));
        }

        vector<CspInstance::ConstraintSpec> cons;
        for (uint64_t scope_idx : chosen) {
            CspInstance::ConstraintSpec c;
            for (int v : scopes[scope_idx])
                c.scope.push_back("x" + std::to_string(v));
            c.polarity = Polarity::forbid;
            for (uint64_t t : sample_without_replacement(tuple_count, uint64_t(forbid), rng)) {
                vector<string> tuple;
                uint64_t rest = t;
                for (int i = model.arity - 1; i >= 0; --i) {
                    tuple.insert(tuple.begin(), "v" + std::to_string(rest % model.domain_size));
                    rest /= model.domain_size;
                }
                c.tuples.push_back(move(tuple));
            }
            cons.push_back(move(c));
        }
        return CspInstance{vars, cons};
    }
}
