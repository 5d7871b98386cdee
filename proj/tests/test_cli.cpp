#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "zsf/io.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = zsf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("zsf_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("documented invocations") {
    const auto v = run({"verify", "--group", "dihedral:3", "--statement", "thm4.1"});
    CHECK(v.code == zsf::cli::kOk);
    const auto report = nlohmann::json::parse(v.out);
    CHECK(report["equal"] == true);
    CHECK(report["family_size"] == 9);
    CHECK(report["missing"].empty());

    const auto d = run({"davenport", "--group", "dicyclic:2", "--large"});
    CHECK(d.code == 0);
    CHECK(d.out == "6\n");

    const auto p = run({"pi", "--group", "dihedral:3", "--seq", "t (a t)"});
    CHECK(p.code == 0);
    CHECK(p.out == "{a, a^2}\n");
}

TEST_CASE("subcommands produce their reports") {
    CHECK(run({"lengths", "--group", "cyclic:3", "--seq", "1^[3] 2^[3]"}).out == "{2, 3}\n");
    CHECK(run({"davenport", "--group", "cyclic:5", "--small"}).out == "4\n");
    CHECK(run({"pi", "--group", "cyclic:7", "--seq", "1^[4]", "--all"}).out == "{1, 2, 3, 4}\n");

    const auto c = run({"classify", "--group", "cyclic:5", "--seq", "1^[4]"});
    CHECK(c.out.find("product_one_free: true") != std::string::npos);

    const auto census = run({"census", "--group", "dicyclic:2"});
    CHECK(census.code == 0);
    std::istringstream lines(census.out);
    std::string line;
    std::size_t total = 0;
    while (std::getline(lines, line)) {
        const auto rec = nlohmann::json::parse(line);
        CHECK(rec.contains("counts"));
        CHECK_FALSE(rec.contains("verdict_time_ms"));
        total += rec["orbit_size"].get<std::size_t>();
    }
    CHECK(total == 24);

    const auto expanded = run({"census", "--group", "dihedral:3", "--expand-orbits"});
    CHECK(expanded.out.find("\"orbit\"") != std::string::npos);

    const auto timed = run({"census", "--group", "dihedral:3", "--timings"});
    CHECK(timed.out.find("verdict_time_ms") != std::string::npos);

    const auto rho = run({"rho", "--group", "dicyclic:2", "-k", "3"});
    CHECK(rho.code == 0);
    CHECK(rho.out.rfind("k,lambda_lower,lambda_exact,rho_lower,rho_exact,rho_upper,witness\n", 0) == 0);
    CHECK(rho.out.find("\n3,") != std::string::npos);

    const auto lam = run({"lambda", "--group", "dihedral:3", "--k-max", "18", "--format", "json"});
    CHECK(lam.code == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({}).code == zsf::cli::kUsage);
    CHECK(run({"frobnicate"}).code == zsf::cli::kUsage);
    CHECK(run({"pi", "--group", "dihedral:3"}).code == zsf::cli::kUsage);
    CHECK(run({"pi", "--group", "dihedral:3", "--seq", "b"}).code == zsf::cli::kUsage);
    CHECK(run({"pi", "--group", "klein:4", "--seq", "1"}).code == zsf::cli::kUsage);
    CHECK(run({"verify", "--group", "dihedral:3"}).code == zsf::cli::kUsage);
    CHECK(run({"verify", "--group", "dihedral:3", "--statement", "thm9.9"}).code == zsf::cli::kUsage);
    CHECK(run({"verify", "--group", "dihedral:4", "--statement", "thm4.1"}).code == zsf::cli::kUsage);
    CHECK(run({"group", "--group", "dihedral:33"}).code == zsf::cli::kCapacity);
    CHECK(run({"pi", "--group", "cyclic:5", "--seq", "1^[3] 2^[3] 3^[3]", "--budget", "10"}).code ==
          zsf::cli::kCapacity);
    const auto bad = run({"atom", "--group", "dihedral:3", "--seq", "q"});
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("group and sequence JSON round trip") {
    for (const char* spec : {"dihedral:3", "dicyclic:2", "cyclic:6", "abelian:2x4"}) {
        const auto emitted = run({"group", "--group", spec, "--format", "json"});
        REQUIRE(emitted.code == 0);
        const auto file = temp_file("group.json", emitted.out);
        const auto direct = run({"davenport", "--group", spec});
        const auto via_file = run({"davenport", "--group-file", file});
        CHECK(via_file.code == 0);
        CHECK(direct.out == via_file.out);
        std::filesystem::remove(file);
    }

    // a generic table survives the trip too
    const auto generic = zsf::build_group("abelian:2x2");
    const auto gfile = temp_file("generic.json", zsf::group_to_json(generic).dump());
    CHECK(run({"davenport", "--group-file", gfile, "--large"}).out == "3\n");
    std::filesystem::remove(gfile);

    const auto g = std::make_shared<const zsf::FiniteGroup>(zsf::build_group("dihedral:3"));
    const auto s = zsf::parse_sequence(g, "a^[4] t^[2]");
    const auto sfile = temp_file("seq.json", zsf::sequence_to_json(s).dump());
    const auto a = run({"atom", "--seq-file", sfile});
    CHECK(a.code == 0);
    CHECK(a.out == run({"atom", "--group", "dihedral:3", "--seq", "a^[4] t^[2]"}).out);
    std::filesystem::remove(sfile);

    // census records carry sequences other subcommands accept
    const auto census = run({"census", "--group", "dihedral:3"});
    std::istringstream lines(census.out);
    std::string line;
    while (std::getline(lines, line)) {
        const auto rec = nlohmann::json::parse(line);
        const auto atom = run({"atom", "--group", "dihedral:3", "--seq", rec["sequence"].get<std::string>()});
        CHECK(atom.code == 0);
        CHECK(atom.out.rfind("atom", 0) == 0);
    }
}

TEST_CASE("output does not depend on --jobs") {
    const std::vector<std::vector<std::string>> cmds = {
        {"census", "--group", "dihedral:4", "--length", "5"},
        {"census", "--group", "dicyclic:3", "--reflections", "--length", "8", "--expand-orbits"},
        {"verify", "--group", "dihedral:6", "--statement", "prop3.2"},
        {"unions", "--group", "dicyclic:2", "-k", "3", "--max-len", "9"},
        {"davenport", "--group", "dihedral:4"},
    };
    for (const auto& base : cmds) {
        std::string first;
        for (const char* jobs : {"1", "2", "4", "8"}) {
            auto args = base;
            args.push_back("--jobs");
            args.push_back(jobs);
            const auto r = run(args);
            CHECK(r.code == 0);
            if (first.empty())
                first = r.out;
            else
                CHECK(r.out == first);
        }
    }
}
