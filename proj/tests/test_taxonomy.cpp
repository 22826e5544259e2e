#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cspix/taxonomy.hpp>

#include "helpers.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

using namespace cspix;
using namespace cspix::test;
using std::string;
using std::vector;

TEST_CASE("the lattice closure contains the composed implications")
{
    const auto & l = lattice();
    CHECK(l.reachable(ConceptId::ni, ConceptId::fi));
    CHECK(l.reachable(ConceptId::ni, ConceptId::sub));
    CHECK(l.reachable(ConceptId::nti, ConceptId::tup_sub));
    CHECK(l.reachable(ConceptId::gnsub, ConceptId::con_sub));
}

TEST_CASE("declared incomparabilities admit no directed path")
{
    const auto & l = lattice();
    auto none = [&](ConceptId a, ConceptId b) {
        return ! l.reachable(a, b) && ! l.reachable(b, a);
    };
    CHECK(none(ConceptId::fi, ConceptId::nsub));
    CHECK(none(ConceptId::spr_i, ConceptId::pi));
    CHECK(none(ConceptId::npi, ConceptId::pi));
    CHECK(none(ConceptId::con_i, ConceptId::con_nsub));
    CHECK(none(ConceptId::tup_sub, ConceptId::fdyn_sub));
    CHECK(none(ConceptId::nsub, ConceptId::gnsub));
    CHECK_NOTHROW(l.validate());
}

TEST_CASE("the lattice serialises and loads losslessly")
{
    auto text = lattice().to_text();
    auto loaded = lattice_from_text(text);
    CHECK_NOTHROW(validate_against_builtin(loaded));
    CHECK_NOTHROW(loaded.validate());
    CHECK(loaded.to_text() == text);
}

TEST_CASE("a corrupted lattice file is rejected by name")
{
    auto text = lattice().to_text();

    auto corrupt = text;
    auto pos = corrupt.find("edge NI KI");
    REQUIRE(pos != string::npos);
    corrupt.replace(pos, 10, "edge FI NI");
    try {
        validate_against_builtin(lattice_from_text(corrupt));
        FAIL("bogus edge accepted");
    }
    catch (const Error & e) {
        CHECK(string{e.what()}.find("FI -> NI") != string::npos);
    }

    // dropping a line is also caught
    auto missing = text;
    pos = missing.find("edge NSub Sub");
    REQUIRE(pos != string::npos);
    missing.erase(pos, missing.find('\n', pos) - pos + 1);
    CHECK_THROWS_AS(validate_against_builtin(lattice_from_text(missing)), Error);
}

TEST_CASE("the dot rendering names every concept")
{
    auto dot = lattice().to_dot();
    for (auto id : all_concepts())
        CHECK(dot.find(concept_name(id)) != string::npos);
}

TEST_CASE("verify_edges handles trivial corpora")
{
    VerifyConfig cfg;
    CHECK(verify_edges({}, cfg).empty());
    CHECK(verify_edges({inst("var X a b c\n")}, cfg).empty());
    CHECK(verify_equivalences({inst("var X a b c\n")}, cfg).empty());

    auto big = inst("var X a b c d e\nvar B a b c d e\nvar C a\nvar D a\nvar E a\nvar F a\nvar G a\n");
    CHECK_THROWS_AS(verify_edges({big}, cfg), SizeGuardError);
}

TEST_CASE("verify_edges is clean on a small seeded corpus")
{
    VerifyConfig cfg;
    cfg.seed = 11;
    auto corpus = small_corpus(8, 6000, 5, 3);
    CHECK(verify_edges(corpus, cfg).empty());
    CHECK(verify_equivalences(corpus, cfg).empty());
}

TEST_CASE("verify_edges is clean on a ternary corpus")
{
    VerifyConfig cfg;
    cfg.seed = 12;
    vector<CspInstance> corpus;
    const double tight[] = {0.2, 0.4, 0.6};
    for (int i = 0; i < 10; ++i) {
        RandomModel model;
        model.seed = 31337 + std::uint64_t(i);
        model.variables = 4;
        model.domain_size = 3;
        model.density = 0.5;
        model.tightness = tight[i % 3];
        model.arity = 3;
        auto c = generate_instance(model);
        // sprinkle a unary constraint on top of the ternary ones
        auto text = emit_instance(c) + "con x0 : forbid (v2)\n";
        corpus.push_back(parse_instance(text));
    }
    for (const auto & v : verify_edges(corpus, cfg))
        MESSAGE(v.edge, " ", v.params);
    CHECK(verify_edges(corpus, cfg).empty());
    CHECK(verify_equivalences(corpus, cfg).empty());
}

TEST_CASE("the gallery verifies and covers the declared separations")
{
    CHECK(gallery().size() >= 13);
    auto failures = verify_gallery();
    for (const auto & f : failures)
        MESSAGE(f.id, ": ", f.claim);
    CHECK(failures.empty());

    std::set<string> ids;
    for (const auto & e : gallery())
        ids.insert(e.id);
    for (const char * required : {"G-FIG1", "G-FIG2", "G-FIG3", "G-FIG4", "G-FIG4b", "G-FIG5",
             "G-FIG6", "G-FIG7", "G-FIG8", "G-FIG8b", "G-FIG9", "G-FIG9b", "G-FIG10", "G-FIG10b",
             "G-FIG10c", "G-FIG11", "G-T18a", "G-T18b"})
        CHECK(ids.count(required));
}

TEST_CASE("the audit confirms the preservation flags on a corpus")
{
    VerifyConfig cfg;
    auto corpus = small_corpus(6, 7000, 4, 3);

    // flagged-preserving concepts audit clean everywhere
    for (auto id : auditable_concepts()) {
        if (! lattice().node(id).preserving)
            continue;
        for (const auto & c : corpus)
            CHECK_MESSAGE(audit_sat_preservation(id, c, cfg).violations() == 0,
                concept_name(id));
    }

    // every non-preserving concept has a constructed violation in the gallery
    auto violated = [&](ConceptId id, const string & gallery_id) {
        for (const auto & e : gallery())
            if (e.id == gallery_id)
                return audit_sat_preservation(id, e.instance(), cfg).violations() > 0;
        return false;
    };
    const std::pair<ConceptId, const char *> witnesses[] = {
        {ConceptId::npi, "G-SATV-NPI"},
        {ConceptId::spr_i, "G-FIG5"},
        {ConceptId::ni_c, "G-SATV-NIC"},
        {ConceptId::nsub_c, "G-SATV-NIC"},
        {ConceptId::dir_i, "G-SATV-DIR"},
        {ConceptId::dir_sub, "G-SATV-DIR"},
        {ConceptId::gnsub, "G-SATV-GNSUB"},
        {ConceptId::dyn_ni, "G-SATV-DYN"},
        {ConceptId::con_ni, "G-SATV-DYN"},
        {ConceptId::con_nsub, "G-SATV-DYN"},
        {ConceptId::con_i, "G-SATV-DYN"},
        {ConceptId::con_sub, "G-SATV-DYN"},
    };
    std::set<ConceptId> covered;
    for (const auto & [id, gallery_id] : witnesses) {
        CHECK(! lattice().node(id).preserving);
        CHECK_MESSAGE(violated(id, gallery_id), concept_name(id), " via ", gallery_id);
        covered.insert(id);
    }
    for (auto id : auditable_concepts())
        if (! lattice().node(id).preserving)
            CHECK(covered.count(id));
}

TEST_CASE("concept names round-trip")
{
    for (auto id : all_concepts())
        CHECK(concept_from_name(concept_name(id)) == id);
    CHECK(concept_from_name("ni") == ConceptId::ni);
    CHECK(concept_from_name("CTXDEPI") == ConceptId::ctx_dep_i);
    CHECK_THROWS_AS(concept_from_name("nope"), InvalidParameterError);
}

TEST_CASE("the environment can widen the oracle guard")
{
    VerifyConfig cfg;
    CHECK(cfg.guard_n == 6);
    CHECK(cfg.guard_d == 4);

    setenv("CSPIX_ORACLE_GUARD", "8,5", 1);
    auto widened = guard_from_env(cfg);
    CHECK(widened.guard_n == 8);
    CHECK(widened.guard_d == 5);

    setenv("CSPIX_ORACLE_GUARD", "7", 1);
    auto single = guard_from_env(cfg);
    CHECK(single.guard_n == 7);
    CHECK(single.guard_d == 7);

    setenv("CSPIX_ORACLE_GUARD", "zebra", 1);
    CHECK_THROWS_AS(guard_from_env(cfg), InvalidParameterError);
    unsetenv("CSPIX_ORACLE_GUARD");
}
