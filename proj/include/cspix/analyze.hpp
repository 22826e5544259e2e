#ifndef CSPIX_ANALYZE_HPP
#define CSPIX_ANALYZE_HPP

#include <cspix/csp.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cspix
{
    // Name-based query surface shared by the command line and the bindings.
    struct Query
    {
        std::string concept_name;
        std::string variable;  // empty: every variable
        std::optional<std::pair<std::string, std::string>> value_pair;

        std::vector<std::string> subset;    // boundary S
        std::vector<std::string> ordering;  // total variable order
        std::vector<std::pair<std::string, std::string>> assignments;
        std::string extra_text;  // condition constraints, `con` lines
        int k = 3;
        int constraint_index = -1;
        int s_max = 2;
        bool exact = false;
        bool per_variable_supports = false;  // alternative GNSub reading

        std::vector<std::string> tuple_vars;  // ForwNI / TupSub
        std::vector<std::string> left_values, right_values;
    };

    // one human-readable line per result; machine mode uses tab-separated
    // fields, stable across releases
    auto run_query(const CspInstance & csp, const Query & q, bool machine) -> std::vector<std::string>;
}

#endif
