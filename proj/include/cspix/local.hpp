#ifndef CSPIX_LOCAL_HPP
#define CSPIX_LOCAL_HPP

#include <cspix/csp.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace cspix
{
    // A neighbourhood annotation: one satisfied way of extending a value of
    // the processed variable through one constraint. Ordering is the single
    // canonical order used everywhere: (variable indices, value indices,
    // constraint index); for binary constraints that is (neighbour, value,
    // constraint).
    struct Annotation
    {
        std::vector<int> other_vars;
        std::vector<int> tuple;
        int constraint;

        auto operator<=>(const Annotation &) const = default;
    };

    struct Partition
    {
        int variable = -1;
        std::vector<std::vector<int>> blocks;  // disjoint, cover the domain

        auto block_of(int value) const -> int;
        auto same_block(int a, int b) const -> bool { return block_of(a) == block_of(b); }
        auto nontrivial() const -> bool;
    };

    // Trie over per-value annotation sequences; values with equal
    // neighbourhood behaviour end on the same node, and the value sets at
    // terminal nodes partition the domain.
    class DiscriminationTree
    {
    public:
        struct Node
        {
            std::optional<Annotation> label;
            std::map<Annotation, int> children;
            std::vector<int> values;
        };

        static auto build(const CspInstance & csp, int v, const std::vector<int> & constraints)
            -> DiscriminationTree;

        auto partition() const -> Partition;
        auto node_count() const -> std::size_t { return nodes_.size(); }
        auto annotation_visits() const -> std::uint64_t { return visits_; }
        auto variable() const -> int { return variable_; }
        auto nodes() const -> const std::vector<Node> & { return nodes_; }

    private:
        int variable_ = -1;
        std::vector<Node> nodes_;
        std::uint64_t visits_ = 0;
    };

    // satisfied extensions of v=x through constraint c, projected onto
    // scope minus v, restricted to live values, sorted
    auto supports_wrt(const CspInstance & csp, int c, int v, int x) -> std::vector<std::vector<int>>;

    auto ni_tree(const CspInstance & csp, int v) -> DiscriminationTree;
    auto ni_classes(const CspInstance & csp, int v) -> Partition;

    // joint discrimination tree: only constraints on v crossing the boundary
    auto npi_tree(const CspInstance & csp, int v, const std::vector<int> & S) -> DiscriminationTree;
    auto npi_classes(const CspInstance & csp, int v, const std::vector<int> & S) -> Partition;

    auto nic_classes(const CspInstance & csp, int v, int c) -> Partition;
    auto nsubc_pairs(const CspInstance & csp, int v, int c) -> std::vector<std::pair<int, int>>;

    // ordered pairs (a,b) with a neighbourhood-substitutable for b
    auto nsub_pairs(const CspInstance & csp, int v) -> std::vector<std::pair<int, int>>;

    enum class GnsubMode { per_constraint, per_variable };
    auto gnsub_pairs(const CspInstance & csp, int v, GnsubMode mode = GnsubMode::per_constraint)
        -> std::vector<std::pair<int, int>>;

    auto diri_classes(const CspInstance & csp, int v, const std::vector<int> & ordering) -> Partition;
    auto dirsub_pairs(const CspInstance & csp, int v, const std::vector<int> & ordering)
        -> std::vector<std::pair<int, int>>;

    // --- NS-Closure ---------------------------------------------------------

    struct SplitterTable
    {
        // per variable, per ordered surviving pair: the splitter annotation
        std::vector<std::map<std::pair<int, int>, Annotation>> splitters;
    };

    struct Removal
    {
        int variable;
        int removed;
        int kept;
        bool tie;  // equal supports, canonically later value dropped
    };

    struct NsClosureResult
    {
        CspInstance reduced;
        SplitterTable table;
        std::vector<Removal> log;
        std::uint64_t probes = 0;  // splitter support evaluations
    };

    // removes neighbourhood-substitutable values until every surviving
    // ordered pair has a splitter
    auto ns_closure(const CspInstance & csp) -> NsClosureResult;

    // a splitter for (a,b) at variable v: live annotation supporting a but
    // not b; searches the canonical candidate list
    auto find_splitter(const CspInstance & csp, int v, int a, int b) -> std::optional<Annotation>;

    // --- tuple-level detectors ----------------------------------------------

    struct NtiEntry
    {
        int a;
        int b;
        std::vector<int> S;  // includes the variable itself
        std::vector<std::pair<Assignment, Assignment>> mates;
    };

    // matching witness: for every consistent tuple over S through one value,
    // a mate through the other with equal crossing-constraint support sets
    auto nti_check(const CspInstance & csp, int v, int a, int b, const std::vector<int> & S)
        -> std::optional<std::vector<std::pair<Assignment, Assignment>>>;

    // smallest S (size-then-canonical, S always contains v, S a proper
    // subset of the variables); s_max caps |S|-1; exact mode searches all
    // other variables instead of just the neighbourhood
    auto nti_pairs(const CspInstance & csp, int v, int s_max, bool exact = false) -> std::vector<NtiEntry>;

    struct ForwNiResult
    {
        bool holds;
        int violating_constraint = -1;
        explicit operator bool() const { return holds; }
    };

    auto forw_ni(const CspInstance & csp, const std::vector<int> & U,
        const Assignment & u, const Assignment & u2) -> ForwNiResult;

    auto dyn_ni(const CspInstance & csp, int v, int a, int b, const Assignment & assignments) -> bool;

    enum class ConLocalConcept { con_ni, con_nsub };
    auto con_local(const CspInstance & csp, int v, int a, int b,
        const std::vector<Constraint> & extra, ConLocalConcept kind) -> bool;

    // the constructive route from shared supports to a condition set making
    // the pair neighbourhood interchangeable; nullopt when no constraint on
    // v retains a shared support
    auto conni_construction(const CspInstance & csp, int v, int a, int b)
        -> std::optional<std::vector<Constraint>>;
}

#endif
