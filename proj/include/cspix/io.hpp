#ifndef CSPIX_IO_HPP
#define CSPIX_IO_HPP

#include <cspix/csp.hpp>

#include <cstdint>
#include <string>

namespace cspix
{
    // Line-oriented instance format:
    //
    //   # comment
    //   var X a b c
    //   con X Y : allow (a,p) (b,q)
    //   con X Y Z : forbid (a,p,r)
    //
    // Declaration order is canonical order. Emission is canonical: scopes in
    // variable declaration order, tuples sorted by value declaration indices,
    // single spaces, tuples restricted to the current domains.
    auto parse_instance(const std::string & text) -> CspInstance;
    auto emit_instance(const CspInstance & csp) -> std::string;

    auto read_instance_file(const std::string & path) -> CspInstance;
    auto write_file(const std::string & path, const std::string & text) -> void;

    // `con` lines interpreted against an existing instance (condition sets)
    auto parse_constraints(const CspInstance & csp, const std::string & text) -> std::vector<Constraint>;

    // splitmix64: the full generation pipeline is pinned to this stream plus
    // rejection sampling, so seeded output is identical across platforms
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : state_(seed) {}

        auto next() -> std::uint64_t;
        auto below(std::uint64_t bound) -> std::uint64_t;  // uniform in [0, bound)

    private:
        std::uint64_t state_;
    };

    struct RandomModel
    {
        std::uint64_t seed = 0;
        int variables = 4;
        int domain_size = 3;
        double density = 0.5;    // fraction of possible scopes constrained
        double tightness = 0.3;  // fraction of tuples forbidden per constraint
        int arity = 2;
    };

    auto generate_instance(const RandomModel & model) -> CspInstance;
}

#endif
