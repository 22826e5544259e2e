#ifndef CSPIX_TESTS_HELPERS_HPP
#define CSPIX_TESTS_HELPERS_HPP

#include <cspix/csp.hpp>
#include <cspix/io.hpp>

#include <string>
#include <vector>

namespace cspix::test
{
    inline auto inst(const std::string & text) -> CspInstance
    {
        return parse_instance(text);
    }

    inline auto var(const CspInstance & c, const std::string & name) -> int
    {
        return c.variable_index(name);
    }

    inline auto val(const CspInstance & c, const std::string & variable, const std::string & value) -> int
    {
        return c.value_index(c.variable_index(variable), value);
    }

    inline auto asg(const CspInstance & c,
        const std::vector<std::pair<std::string, std::string>> & bindings) -> Assignment
    {
        return assignment_from_names(c, bindings);
    }

    inline auto small_corpus(int count, std::uint64_t seed0, int n = 4, int d = 3,
        double density = 0.5) -> std::vector<CspInstance>
    {
        std::vector<CspInstance> out;
        const double tight[] = {0.2, 0.4, 0.6};
        for (int i = 0; i < count; ++i) {
            RandomModel model;
            model.seed = seed0 + std::uint64_t(i);
            model.variables = n;
            model.domain_size = d;
            model.density = density;
            model.tightness = tight[i % 3];
            out.push_back(generate_instance(model));
        }
        return out;
    }
}

#endif
