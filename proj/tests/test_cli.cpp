#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cspix/io.hpp>
#include <cspix/taxonomy.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

using std::string;

namespace
{
    struct RunResult
    {
        int exit_code;
        string output;
    };

    auto run(const string & args) -> RunResult
    {
        string cmd = string{CSPIX_CLI_PATH} + " " + args + " 2>&1";
        FILE * pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        string output;
        char buf[4096];
        while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
            output.append(buf, got);
        int status = pclose(pipe);
        return {WEXITSTATUS(status), output};
    }

    auto data(const string & name) -> string
    {
        return string{CSPIX_DATA_DIR} + "/" + name;
    }

    auto tmp_file(const string & name, const string & text) -> string
    {
        auto path = string{"/tmp/cspix_test_"} + name;
        cspix::write_file(path, text);
        return path;
    }
}

TEST_CASE("analyze prints the ni block of the gallery pair")
{
    auto r = run("analyze " + data("gallery/G-FIG2.csp") + " --concept ni");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("{a,b}") != string::npos);
}

TEST_CASE("analyze answers a reflexive fi query")
{
    auto r = run("analyze " + data("gallery/G-FIG2.csp") + " --concept fi --pair X a a");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("true") != string::npos);
}

TEST_CASE("analyze rejects unknown concepts with a usage exit")
{
    auto r = run("analyze " + data("gallery/G-FIG2.csp") + " --concept wibble");
    CHECK(r.exit_code == 2);
}

TEST_CASE("analyze reports parse errors with the offending line")
{
    auto path = tmp_file("broken.csp", "var X a b\ncon X X : allow (a,a)\n");
    auto r = run("analyze " + path + " --concept ni");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 2") != string::npos);
}

TEST_CASE("analyze prints witnesses on negative semantic answers")
{
    auto path = tmp_file("sub.csp", "var X a b\nvar Y p q\ncon X Y : allow (a,p) (a,q) (b,p)\n");
    auto r = run("analyze " + path + " --concept fi --pair X a b");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("false") != string::npos);
    CHECK(r.output.find("violated by") != string::npos);
}

TEST_CASE("verify --gallery passes")
{
    auto r = run("verify --gallery");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all verified") != string::npos);
}

TEST_CASE("verify --random reports a clean run and its runtime")
{
    auto r = run("verify --random 6 --seed 7 -n 5 -d 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("no violation") != string::npos);
    CHECK(r.output.find("runtime") != string::npos);
}

TEST_CASE("verify refuses corpora beyond the oracle guard, with guidance")
{
    auto r = run("verify --random 2 -n 9 -d 3");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("CSPIX_ORACLE_GUARD") != string::npos);
}

TEST_CASE("verify --lattice flags the bogus edge")
{
    auto good = tmp_file("lattice.txt", cspix::lattice().to_text());
    CHECK(run("verify --lattice " + good).exit_code == 0);

    auto text = cspix::lattice().to_text();
    auto pos = text.find("edge NI KI");
    REQUIRE(pos != string::npos);
    text.replace(pos, 10, "edge FI NI");
    auto bad = tmp_file("lattice_bad.txt", text);
    auto r = run("verify --lattice " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("bogus edge FI -> NI") != string::npos);
}

TEST_CASE("solve prints bundles with the interchangeable block")
{
    auto r = run("solve --bundle " + data("gallery/G-FIG2.csp"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("X={a,b}") != string::npos);
}

TEST_CASE("an unsatisfiable instance is a result, not an error")
{
    auto path = tmp_file("unsat.csp", "var X a\nvar Y p\ncon X Y : forbid (a,p)\n");
    auto r = run("solve " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0 solutions") != string::npos);
}

TEST_CASE("solve --limit emits exactly one solution")
{
    auto path = tmp_file("big.csp", "var X a b c\nvar Y p q r\nvar Z u v w\n");
    auto r = run("solve --limit 1 " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1 solutions") != string::npos);
}

TEST_CASE("gen matches its golden file")
{
    auto r = run("gen -n 4 -d 3 --density 0.5 --tightness 0.3 --seed 1");
    CHECK(r.exit_code == 0);

    FILE * f = std::fopen(data("golden/gen-n4-d3-p50-t30-s1.csp").c_str(), "r");
    REQUIRE(f != nullptr);
    string golden;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, f))
        golden.append(buf, got);
    std::fclose(f);
    CHECK(r.output == golden);
}

TEST_CASE("dot --hasse names one node per concept")
{
    auto r = run("dot --hasse");
    CHECK(r.exit_code == 0);
    for (auto id : cspix::all_concepts())
        CHECK(r.output.find(cspix::concept_name(id)) != string::npos);
}

TEST_CASE("dot --micro refuses non-binary instances")
{
    auto path = tmp_file("nb.csp", "var X a\nvar Y p\nvar Z r\ncon X Y Z : allow (a,p,r)\n");
    auto r = run("dot --micro " + path);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("binary") != string::npos);
}

TEST_CASE("porcelain output is tab-separated")
{
    auto r = run("--porcelain analyze " + data("gallery/G-FIG2.csp") + " --concept fi --pair X a b");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("relation\tFI\tX\ta\tb\ttrue") != string::npos);
}
