#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "equilattice/report.hpp"

using namespace eql;

TEST_CASE("config parsing and validation") {
    auto cfg = parse_config(R"({"kind":"multiplicity","r":2,"K":100})");
    CHECK(cfg.kind == "multiplicity");
    CHECK(cfg.r == 2);
    CHECK(cfg.K == 100);
    CHECK_THROWS_WITH_AS(parse_config(R"({"kind":"nope"})"),
                         doctest::Contains("unknown kind"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(R"({"kind":"cm"})"), doctest::Contains("N_set"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"kind":"sublattices","lattice":"Z9","n_grid":[5],"seed":1})"),
        doctest::Contains("unknown lattice preset"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        parse_config(R"({"kind":"sublattices","lattice":"Z3","n_grid":[5]})"),
        doctest::Contains("seed"), std::invalid_argument);
    CHECK_THROWS(parse_config("not json"));
}

TEST_CASE("multiplicity experiment") {
    auto cfg = parse_config(R"({"kind":"multiplicity","r":2,"K":100})");
    auto rep = run_experiment(cfg);
    CHECK(rep.exit_code == 0);
    REQUIRE(rep.files.count("multiplicity.csv") == 1);
    auto& csv = rep.files.at("multiplicity.csv");
    CHECK(csv.rfind("k,b_k\n", 0) == 0);
    CHECK(csv.find("\n2,3\n") != std::string::npos);  // b_2 = 3 for r = 2
    CHECK(rep.files.count("multiplicity.csv.meta.json") == 1);
}

TEST_CASE("cm experiment lists the orbifold records for N = 1") {
    auto cfg = parse_config(R"({"kind":"cm","N_set":[1]})");
    auto rep = run_experiment(cfg);
    CHECK(rep.exit_code == 0);
    auto& csv = rep.files.at("cm_points.csv");
    CHECK(csv.find("1,0,-4,0,1,0.5") != std::string::npos);       // i
    CHECK(csv.find("1,1,-3,-0.5,0.866") != std::string::npos);    // rho
}

TEST_CASE("sublattices experiment accepts window descriptors") {
    auto cfg = parse_config(
        R"({"kind":"sublattices","lattice":"Z3","r":1,"n_grid":[30],"samples":20000,"seed":3,
            "windows":[{"type":"cap","id":"c1","axis":[1,0,0],"tau":0.5}]})");
    auto rep = run_experiment(cfg);
    CHECK(rep.exit_code == 0);
    auto& csv = rep.files.at("convergence.csv");
    CHECK(csv.find("\nc1,") != std::string::npos);
    CHECK_THROWS(run_experiment(parse_config(
        R"({"kind":"sublattices","lattice":"Z3","r":1,"n_grid":[30],"seed":3,
            "windows":[{"type":"cap","axis":[1,0],"tau":0.5}]})")));
}

TEST_CASE("sublattices experiment reproduces byte-identically") {
    auto cfg = parse_config(
        R"({"kind":"sublattices","lattice":"Z3","r":1,"n_grid":[10,20],"samples":20000,"seed":7})");
    auto rep1 = run_experiment(cfg);
    auto rep2 = run_experiment(cfg);
    CHECK(rep1.exit_code == 0);
    CHECK(rep1.files.at("convergence.csv") == rep2.files.at("convergence.csv"));
    // thread count does not change the bytes
    auto cfg4 = cfg;
    cfg4.threads = 1;
    auto rep3 = run_experiment(cfg4);
    CHECK(rep1.files.at("convergence.csv") == rep3.files.at("convergence.csv"));
}

TEST_CASE("pullpush experiment") {
    auto cfg = parse_config(R"({"kind":"pullpush","preset":"so21-geodesic"})");
    auto rep = run_experiment(cfg);
    CHECK(rep.exit_code == 0);
    auto& csv = rep.files.at("pullpush.csv");
    CHECK(csv.find("so21-geodesic") != std::string::npos);
    CHECK(csv.find(",1,") != std::string::npos);  // witness found
}

TEST_CASE("density experiment") {
    auto cfg = parse_config(
        R"({"kind":"density","lattice":"Z5","r":1,"n_grid":[1,2,3],"primes":7,"s_max":3})");
    auto rep = run_experiment(cfg);
    CHECK(rep.exit_code == 0);
    CHECK(rep.files.at("densities.csv").find("prime,s,raw_count") == 0);
}

TEST_CASE("run_from_file writes outputs and reports config errors") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "eql_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "good.json");
        out << R"({"kind":"multiplicity","r":2,"K":20,"out":")" << (dir / "out").string()
            << R"("})";
    }
    CHECK(run_from_file((dir / "good.json").string(), "", 0, 0, false) == 0);
    CHECK(fs::exists(dir / "out" / "multiplicity.csv"));
    CHECK(fs::exists(dir / "out" / "multiplicity.csv.meta.json"));
    CHECK(fs::exists(dir / "out" / "report.json"));
    {
        std::ofstream out(dir / "bad.json");
        out << R"({"kind":"cm"})";
    }
    CHECK(run_from_file((dir / "bad.json").string(), "", 0, 0, false) == 1);
    CHECK(run_from_file((dir / "missing.json").string(), "", 0, 0, false) == 1);
    {
        // valid schema but the run itself must fail: the relative-volume
        // exponent is undefined at r = d
        std::ofstream out(dir / "runfail.json");
        out << R"({"kind":"density","lattice":"Z2","r":2,"n_grid":[1],"out":")"
            << (dir / "out2").string() << R"("})";
    }
    CHECK(run_from_file((dir / "runfail.json").string(), "", 0, 0, false) == 2);
    fs::remove_all(dir);
}

#ifdef EQUILATTICE_BIN
TEST_CASE("the installed binary runs end to end") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "eql_bin_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "cfg.json");
        out << R"({"kind":"cm","N_set":[1,2]})";
    }
    std::string bin = EQUILATTICE_BIN;
    std::string cmd = bin + " run " + (dir / "cfg.json").string() + " --out " +
                      (dir / "out").string() + " > " + (dir / "log").string() + " 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "out" / "cm_points.csv"));
    CHECK(fs::exists(dir / "out" / "cm_regions.csv"));
    CHECK(std::system((bin + " presets > " + (dir / "p").string()).c_str()) == 0);
    {
        std::ifstream in(dir / "p");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        CHECK(text.find("sl2xsl2-diagonal") != std::string::npos);
    }
    // unknown preset exits with the config error code
    {
        std::ofstream out(dir / "bad.json");
        out << R"({"kind":"pullpush","preset":"nope"})";
    }
    int rc = std::system((bin + " run " + (dir / "bad.json").string() + " >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(rc) == 1);
    fs::remove_all(dir);
}
#endif

TEST_CASE("preset listing") {
    auto listing = preset_listing();
    CHECK(listing.find("sl2xsl2-diagonal") != std::string::npos);
    CHECK(listing.find("so22-weight2") != std::string::npos);
    CHECK(listing.find("Z4") != std::string::npos);
}

TEST_CASE("csv escaping") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
