#ifndef CSPIX_TAXONOMY_HPP
#define CSPIX_TAXONOMY_HPP

#include <cspix/csp.hpp>
#include <cspix/io.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cspix
{
    enum class ConceptId
    {
        fi, ki, pi, spr_i, sub, con_i, con_sub, fdyn_i, fdyn_sub, ctx_dep_i, tup_sub,
        ni, nsub, npi, dir_i, dir_sub, ni_c, nsub_c, dyn_ni, con_ni, con_nsub, nti, forw_ni, gnsub
    };

    enum class Plane { semantic, syntactic };

    auto concept_name(ConceptId c) -> std::string;
    auto concept_from_name(const std::string & name) -> ConceptId;
    auto all_concepts() -> const std::vector<ConceptId> &;

    struct LatticeNode
    {
        ConceptId id;
        Plane plane;
        bool preserving;
        std::string citation;
        std::string note;
    };

    struct LatticeEdge
    {
        ConceptId from, to;
        std::string citation;
        std::string transfer;  // how parameters carry across the implication
    };

    struct Equivalence
    {
        ConceptId a, b;
        std::string citation;
        std::string transfer;
    };

    struct Incomparability
    {
        ConceptId a, b;
        std::string citation;
        std::string note;
    };

    struct TaxonomyLattice
    {
        std::vector<LatticeNode> nodes;
        std::vector<LatticeEdge> edges;
        std::vector<Equivalence> equivalences;
        std::vector<Incomparability> incomparabilities;

        auto node(ConceptId id) const -> const LatticeNode &;
        auto reachable(ConceptId from, ConceptId to) const -> bool;
        auto validate() const -> void;
        auto to_text() const -> std::string;
        auto to_dot() const -> std::string;
    };

    auto lattice() -> const TaxonomyLattice &;
    auto lattice_from_text(const std::string & text) -> TaxonomyLattice;

    // structural comparison against the built-in lattice; throws Error naming
    // the first bogus or missing item
    auto validate_against_builtin(const TaxonomyLattice & candidate) -> void;

    // --- randomized edge verification ------------------------------------------

    struct VerifyConfig
    {
        int max_boundary = 3;   // |S| cap for boundary-parameterised relations
        int max_tuple_vars = 2; // |U| cap for the ForwNI/TupSub sweep
        int s_max = 2;          // NTI neighbourhood cap
        int extra_sets = 3;     // sampled condition sets per instance
        int guard_n = 6;
        int guard_d = 4;
        std::uint64_t seed = 0;
    };

    // guard override from the environment (CSPIX_ORACLE_GUARD="n,d")
    auto guard_from_env(VerifyConfig cfg) -> VerifyConfig;

    struct EdgeViolation
    {
        std::string edge;
        std::string variable;
        std::string values;
        std::string params;
        std::string instance_text;
    };

    // evaluates both endpoints of every implication edge under its recorded
    // parameter-transfer rule; at most one counterexample per edge is kept
    auto verify_edges(const std::vector<CspInstance> & instances, const VerifyConfig & cfg)
        -> std::vector<EdgeViolation>;

    // NPI ≡ DirI over boundaries and orderings, CtxDepI ≡ FDynI over all
    // consistent assignment sets (plus the clique cross-check on binary)
    auto verify_equivalences(const std::vector<CspInstance> & instances, const VerifyConfig & cfg)
        -> std::vector<EdgeViolation>;

    // --- gallery -----------------------------------------------------------------

    struct GalleryClaim
    {
        std::string description;
        std::function<bool(const CspInstance &)> holds;
    };

    struct GalleryEntry
    {
        std::string id;
        std::string title;
        std::string text;  // canonical instance text
        std::string variable;
        std::string value_a, value_b;
        std::vector<GalleryClaim> claims;

        auto instance() const -> CspInstance;
    };

    auto gallery() -> const std::vector<GalleryEntry> &;

    struct GalleryFailure
    {
        std::string id;
        std::string claim;
    };

    auto verify_gallery() -> std::vector<GalleryFailure>;

    // --- satisfiability-preservation audit ----------------------------------------

    struct AuditRecord
    {
        int variable;
        int a, b;  // the relation holds for (a,b); b is removed
        std::string params;
        bool preserved;
    };

    struct AuditReport
    {
        ConceptId concept_id;
        std::vector<AuditRecord> records;

        auto violations() const -> int;
    };

    auto audit_sat_preservation(ConceptId concept_id, const CspInstance & csp, const VerifyConfig & cfg)
        -> AuditReport;

    auto auditable_concepts() -> const std::vector<ConceptId> &;
}

#endif
