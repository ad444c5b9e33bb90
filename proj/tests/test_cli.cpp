#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sullivan/report.hpp"

using namespace sullivan;
namespace fs = std::filesystem;

namespace {

const char* S2_TEXT =
    "generator x 2\n"
    "generator y 3\n"
    "d y = x^2\n";

json strip_timing(json j) {
    j.erase("timing_ms");
    return j;
}

struct TempFile {
    fs::path path;
    TempFile(const std::string& name, const std::string& text) {
        path = fs::temp_directory_path() / name;
        std::ofstream(path) << text;
    }
    ~TempFile() { std::error_code ec; fs::remove(path, ec); }
};

}  // namespace

TEST_CASE("parser: the even sphere file") {
    AlgebraFile f = parse_algebra_file(S2_TEXT);
    CHECK(f.algebra.table->size() == 2);
    CHECK(f.algebra.d.image(1) == Poly::generator(f.algebra.table, 0).pow(2));
    json rep = cmd_check(f, {});
    CHECK(rep["pure"] == true);
    CHECK(rep["semipure"] == true);
    CHECK(rep["p"] == 1);
    CHECK(rep["q"] == 1);
}

TEST_CASE("parser: errors carry line numbers") {
    // forward reference
    try {
        parse_algebra_file("generator y 3\nd y = z\ngenerator z 4\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    // degree-1 generators rejected
    CHECK_THROWS_AS(parse_algebra_file("generator t 1\n"), ParseError);
    // unknown directive
    try {
        parse_algebra_file("generator x 2\nfrobnicate x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    // inhomogeneous differential
    CHECK_THROWS_AS(parse_algebra_file("generator x 2\ngenerator y 3\nd y = x\n"), ParseError);
    // duplicate differential
    CHECK_THROWS_AS(
        parse_algebra_file("generator x 2\ngenerator y 3\nd y = x^2\nd y = 0\n"),
        ParseError);
    // self reference
    CHECK_THROWS_AS(parse_algebra_file("generator x 2\ngenerator y 3\nd y = y\n"), ParseError);
}

TEST_CASE("parser: empty file is the unit algebra") {
    AlgebraFile f = parse_algebra_file("");
    CHECK(f.algebra.table->size() == 0);
    json rep = cmd_check(f, {});
    CHECK(rep["valid"] == true);
    CHECK(rep["p"] == 0);
    CHECK(rep["q"] == 0);
}

TEST_CASE("parser: expressions with rationals, powers, parentheses") {
    TablePtr t = make_table({{"x", 2}, {"y", 3}});
    Poly p = parse_poly("3/2 * x^2 - (x * y - 2*x*y)", t);
    Poly expect = Poly::generator(t, 0).pow(2).scaled(Q(3, 2)) +
                  Poly::generator(t, 0) * Poly::generator(t, 1);
    CHECK(p == expect);
    CHECK_THROWS(parse_poly("x +", t));
    CHECK_THROWS(parse_poly("w", t));
    CHECK_THROWS(parse_poly("x y", t));  // juxtaposition is not a product
}

TEST_CASE("models command reports the corrected bar differential") {
    AlgebraFile f = parse_algebra_file(S2_TEXT);
    CmdOptions opt;
    opt.max_degree = 8;
    json rep = cmd_models(f, opt);
    std::string dybar = rep["multiplication_model"]["d"]["y~"].get<std::string>();
    CHECK(dybar.find("x''*x~") != std::string::npos);
    CHECK(dybar.find("x'*x~") != std::string::npos);
    CHECK(rep["multiplication_model"]["corrections"]["y"].get<std::string>() ==
          "x''*x~ + x'*x~");
    CHECK(rep["checks"]["quasi_iso_all"] == true);
    // the loop model of the odd sphere is free of differentials
    AlgebraFile f3 = parse_algebra_file("generator y 3\n");
    json rep3 = cmd_models(f3, opt);
    CHECK(rep3["loop_model"]["d"]["y~"].get<std::string>() == "0");
}

TEST_CASE("cohomology command: loop dims of the odd sphere") {
    AlgebraFile f = parse_algebra_file("generator y 3\n");
    CmdOptions opt;
    opt.max_degree = 12;
    opt.loop = true;
    json rep = cmd_cohomology(f, opt);
    std::vector<int> expect{1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
    REQUIRE(rep["dims"].size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(rep["dims"][i] == expect[i]);
    // the unit algebra
    AlgebraFile fe = parse_algebra_file("");
    CmdOptions opt0;
    opt0.max_degree = 4;
    json rep0 = cmd_cohomology(fe, opt0);
    CHECK(rep0["dims"][0] == 1);
    for (int n = 1; n <= 4; ++n) CHECK(rep0["dims"][n] == 0);
}

TEST_CASE("shriek command on semi-pure and non-semi-pure input") {
    AlgebraFile f = parse_algebra_file(S2_TEXT);
    CmdOptions opt;
    opt.max_degree = 10;
    json rep = cmd_shriek(f, opt);
    CHECK(rep["goodness"]["good"] == true);
    CHECK(rep["shriek_class"]["class_generates_ext"] == true);
    CHECK(rep["shriek_class"]["sign"] == 1);
    CHECK(rep["mu_delta"]["all_zero"] == false);
    CHECK(rep["delta"]["1"].get<std::string>() == "x'' + x'");

    AlgebraFile g = parse_algebra_file(
        "generator y1 3\ngenerator y2 3\ngenerator y3 3\ngenerator x 8\n"
        "d x = y1*y2*y3\n");
    json rep2 = cmd_shriek(g, opt);
    CHECK(rep2["nice_model"].is_string());  // skipped
    CHECK(rep2["shriek_class"].is_string());
    CHECK(rep2["goodness"]["good"] == true);  // goodness is still checked
}

TEST_CASE("triviality command: verdicts and language") {
    CmdOptions opt;
    opt.max_degree = 10;
    {
        AlgebraFile f = parse_algebra_file("generator x 2\n");
        json rep = cmd_triviality(f, opt);
        bool dlp_certified = false;
        for (auto& c : rep["certificates"])
            if (c["target"] == "Dlp" && c["verdict"] == "certified-trivial" &&
                c["route"] == "part2")
                dlp_certified = true;
        CHECK(dlp_certified);
    }
    {
        AlgebraFile f = parse_algebra_file(
            "generator x 2\ngenerator y1 3\ngenerator y2 3\nd y1 = x^2\n");
        json rep = cmd_triviality(f, opt);
        bool dlcop3 = false;
        for (auto& c : rep["certificates"])
            if (c["target"] == "Dlcop" && c["verdict"] == "certified-trivial" &&
                c["route"] == "part3")
                dlcop3 = true;
        CHECK(dlcop3);
    }
    {
        AlgebraFile f = parse_algebra_file(S2_TEXT);
        json rep = cmd_triviality(f, opt);
        for (auto& c : rep["certificates"]) CHECK(c["verdict"] == "not-certified");
        // the negative verdict never claims anything is nonzero
        std::string dump = rep.dump();
        CHECK(dump.find("nontrivial") == std::string::npos);
        CHECK(dump.find("non-trivial") == std::string::npos);
        // the Euler witness is surfaced
        bool witness = false;
        for (auto& c : rep["certificates"])
            for (auto& w : c["witnesses"])
                if (w["value"] == "2*x") witness = true;
        CHECK(witness);
    }
    {
        // the part-1 annotation is honored
        AlgebraFile f =
            parse_algebra_file("generator y 3\ngenerator z 5\ndecompose dlcop y\n");
        CmdOptions o1;
        o1.max_degree = 10;
        o1.route = "part1";
        json rep = cmd_triviality(f, o1);
        bool via_y = false;
        for (auto& c : rep["certificates"])
            for (auto& w : c["witnesses"])
                if (w["label"] == "odd cocycle generator" && w["value"] == "y") via_y = true;
        CHECK(via_y);
    }
}

TEST_CASE("reports are deterministic") {
    AlgebraFile f = parse_algebra_file(S2_TEXT);
    CmdOptions opt;
    opt.max_degree = 8;
    for (const std::string& cmd : {"check", "models", "shriek", "triviality", "cohomology"}) {
        json a = strip_timing(run_command(cmd, f, opt));
        json b = strip_timing(run_command(cmd, f, opt));
        CHECK(a.dump() == b.dump());
    }
}

TEST_CASE("witness identities re-verify, tampering is detected") {
    AlgebraFile f = parse_algebra_file(S2_TEXT);
    CmdOptions opt;
    opt.max_degree = 8;
    for (const std::string& cmd : {"models", "shriek", "triviality"}) {
        json rep = run_command(cmd, f, opt);
        CHECK(verify_report(rep).empty());
    }
    json rep = run_command("models", f, opt);
    REQUIRE(!rep["identities"].empty());
    // corrupt the first polynomial identity
    for (auto& id : rep["identities"]) {
        if (id["kind"] == "poly_eq") {
            id["rhs"] = id["rhs"].get<std::string>() + " + 1";
            break;
        }
    }
    CHECK(!verify_report(rep).empty());
}

#ifdef SULLIVAN_CLI_PATH
TEST_CASE("binary: end-to-end run, json output, exit codes") {
    TempFile alg("sullivan_cli_s2.alg", S2_TEXT);
    TempFile bad("sullivan_cli_bad.alg", "generator y 3\nd y = z\n");
    fs::path jsonout = fs::temp_directory_path() / "sullivan_cli_s2.json";

    std::string cmd = std::string(SULLIVAN_CLI_PATH) + " models " + alg.path.string() +
                      " --max-degree 6 --json " + jsonout.string() + " --verify";
    CHECK(std::system(cmd.c_str()) == 0);
    std::ifstream in(jsonout);
    REQUIRE(in.good());
    json rep = json::parse(in);
    CHECK(rep["command"] == "models");
    CHECK(rep["verified"] == true);
    fs::remove(jsonout);

    std::string bad_cmd =
        std::string(SULLIVAN_CLI_PATH) + " check " + bad.path.string() + " 2>/dev/null";
    int rc = std::system(bad_cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 1);

    // batch mode over a directory
    fs::path dir = fs::temp_directory_path() / "sullivan_cli_batch";
    fs::create_directories(dir);
    std::ofstream(dir / "a.alg") << "generator y 3\n";
    std::ofstream(dir / "b.alg") << "generator x 2\n";
    std::string batch =
        std::string(SULLIVAN_CLI_PATH) + " check --batch " + dir.string() + " >/dev/null";
    CHECK(std::system(batch.c_str()) == 0);
    fs::remove_all(dir);
}
#endif

TEST_CASE("models with max-degree zero stays structural") {
    AlgebraFile f = parse_algebra_file(S2_TEXT);
    CmdOptions opt;
    opt.max_degree = 0;
    json rep = cmd_models(f, opt);
    CHECK(!rep["checks"].contains("quasi_iso"));
    CHECK(rep["multiplication_model"]["d"].contains("y~"));
}

TEST_CASE("shriek and triviality run on the unit algebra") {
    AlgebraFile f = parse_algebra_file("");
    CmdOptions opt;
    opt.max_degree = 2;
    json rep = cmd_shriek(f, opt);
    CHECK(rep["delta"]["1"].get<std::string>() == "1");
    json tv = cmd_triviality(f, opt);
    for (auto& c : tv["certificates"]) CHECK(c["verdict"] == "not-certified");
}
