#ifndef CSPIX_CSP_HPP
#define CSPIX_CSP_HPP

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cspix
{
    // Errors follow the contract used by the CLI exit codes: anything derived
    // from Error is a caller mistake (bad input, bad parameters), everything
    // else is an internal bug.
    struct Error : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    struct InvalidInstanceError : Error { using Error::Error; };
    struct InvalidAssignmentError : Error { using Error::Error; };
    struct InconsistentAssignmentError : Error { using Error::Error; };
    struct InvalidSubsetError : Error { using Error::Error; };
    struct InvalidParameterError : Error { using Error::Error; };
    struct InvalidConstraintError : Error { using Error::Error; };
    struct InvalidOrderingError : Error { using Error::Error; };
    struct InvalidValueError : Error { using Error::Error; };
    struct ArityUnsupportedError : Error { using Error::Error; };
    struct InvalidModelError : Error { using Error::Error; };
    struct SizeGuardError : Error { using Error::Error; };
    struct GalleryIntegrityError : Error { using Error::Error; };

    struct ParseError : Error
    {
        int line;
        ParseError(int line_, const std::string & what_) :
            Error("line " + std::to_string(line_) + ": " + what_),
            line(line_)
        {
        }
    };

    enum class Polarity
    {
        allow,
        forbid
    };

    // An extensional constraint in canonical form: scope sorted by variable
    // declaration index, tuples sorted by value indices. The satisfied-tuple
    // set is exposed uniformly regardless of polarity.
    struct Constraint
    {
        std::vector<int> scope;                // variable indices, strictly increasing
        std::vector<std::vector<int>> tuples;  // listed tuples, sorted, deduplicated
        Polarity polarity = Polarity::allow;

        auto arity() const -> int { return int(scope.size()); }
        auto lists(const std::vector<int> & tuple) const -> bool;
        auto satisfied(const std::vector<int> & tuple) const -> bool;
    };

    // A (possibly partial) assignment, indexed like the instance's variables.
    // kUnbound marks free variables.
    struct Assignment
    {
        static constexpr int unbound = -1;

        std::vector<int> values;

        Assignment() = default;
        explicit Assignment(std::size_t n) : values(n, unbound) {}

        auto bound(int var) const -> bool { return values[var] != unbound; }
        auto bound_count() const -> int;
        auto full() const -> bool;
        auto operator<=>(const Assignment &) const = default;
    };

    // Variables have per-variable symbolic values: a value is identified by
    // its declaration index against the variable's symbol table, and value
    // equality across variables is meaningless. Domains may shrink through
    // reduction operations (the symbol table does not), so value ids stay
    // stable across induced/applied/reduced instances.
    class CspInstance
    {
    public:
        struct VariableSpec
        {
            std::string name;
            std::vector<std::string> values;
        };

        struct ConstraintSpec
        {
            std::vector<std::string> scope;
            std::vector<std::vector<std::string>> tuples;
            Polarity polarity;
        };

        CspInstance() = default;
        CspInstance(const std::vector<VariableSpec> & vars, const std::vector<ConstraintSpec> & cons);

        auto variable_count() const -> int { return int(var_names_.size()); }
        auto constraint_count() const -> int { return int(constraints_.size()); }
        auto variable_name(int v) const -> const std::string & { return var_names_.at(v); }
        auto value_name(int v, int val) const -> const std::string & { return value_names_.at(v).at(val); }
        auto variable_index(const std::string & name) const -> int;
        auto value_index(int var, const std::string & name) const -> int;

        // current domain, as sorted value ids into the symbol table
        auto domain(int v) const -> const std::vector<int> & { return domains_.at(v); }
        auto in_domain(int v, int val) const -> bool;
        auto symbol_count(int v) const -> int { return int(value_names_.at(v).size()); }
        auto max_domain_size() const -> int;

        auto constraints() const -> const std::vector<Constraint> & { return constraints_; }
        auto constraint(int c) const -> const Constraint & { return constraints_.at(c); }
        auto constraints_on(int v) const -> const std::vector<int> & { return constraints_on_.at(v); }
        auto neighbours(int v) const -> const std::vector<int> & { return neighbours_.at(v); }

        auto max_arity() const -> int;

        // new instance with v's domain shrunk by one value
        auto without_value(int v, int val) const -> CspInstance;

        // new instance with extra constraints conjoined in (conditional forms)
        auto with_extra_constraints(const std::vector<Constraint> & extra) const -> CspInstance;

        auto structurally_equal(const CspInstance & other) const -> bool;

    private:
        std::vector<std::string> var_names_;
        std::vector<std::vector<std::string>> value_names_;
        std::vector<std::vector<int>> domains_;
        std::vector<Constraint> constraints_;
        std::vector<std::vector<int>> constraints_on_;
        std::vector<std::vector<int>> neighbours_;

        friend auto make_reduced(const CspInstance &, std::vector<std::vector<int>>) -> CspInstance;
        friend auto induced_subproblem(const CspInstance &, const std::vector<int> &) -> CspInstance;
        auto rebuild_indexes() -> void;
        auto conjoin_and_canonicalise(std::vector<Constraint>) -> void;
    };

    // true iff every constraint fully bound by asg is satisfied; partial
    // assignments are judged only on fully-bound constraints
    auto is_consistent(const CspInstance & csp, const Assignment & asg) -> bool;

    // throws InvalidAssignmentError on out-of-range variables or values
    auto validate_assignment(const CspInstance & csp, const Assignment & asg) -> void;

    // the CSP restricted to the variables in vars (reindexed, declaration
    // order preserved), keeping exactly the constraints whose scope is
    // contained in vars
    auto induced_subproblem(const CspInstance & csp, const std::vector<int> & vars) -> CspInstance;

    // domains of assigned variables reduced to their singleton values;
    // constraints unchanged; requires asg consistent
    auto apply_assignment(const CspInstance & csp, const Assignment & asg) -> CspInstance;

    // internal: same symbol tables, new domains
    auto make_reduced(const CspInstance & base, std::vector<std::vector<int>> domains) -> CspInstance;

    auto assignment_from_names(const CspInstance & csp,
        const std::vector<std::pair<std::string, std::string>> & bindings) -> Assignment;

    auto format_assignment(const CspInstance & csp, const Assignment & asg) -> std::string;

    auto constraint_from_names(const CspInstance & csp, const CspInstance::ConstraintSpec & spec) -> Constraint;
}

#endif
