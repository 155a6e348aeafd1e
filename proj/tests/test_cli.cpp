#include "doctest.h"

#include "cli.hpp"
#include "matchkit/instance_io.hpp"
#include "matchkit/server.hpp"
#include "matchkit/service.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace matchkit;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("matchkit_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write(const fs::path& path, const std::string& text)
{
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("usage errors")
{
    CHECK(run({}).code == cli::usage);
    CHECK(run({"frobnicate"}).code == cli::usage);
    CHECK(run({"--help"}).code == cli::ok);
    CHECK(run({"solve", "--class", "SR"}).code == cli::usage);
}

TEST_CASE("generate writes parseable instances and provenance")
{
    const fs::path dir = scratch("gen");
    auto r = run({"generate", "--class", "SR", "--param", "numOfRoommates=2", "--param", "probabilityOfTies=0",
                  "--param", "preferenceListDensity=1", "--param", "numOfInstances=1", "--out", dir.string()});
    REQUIRE(r.code == cli::ok);
    CHECK(slurp(dir / "instance_1.txt") == "2\n2 \n1\n");
    CHECK(nlohmann::json::parse(slurp(dir / "provenance.json"))["problemClass"] == "SR");

    const fs::path many = scratch("gen_many");
    r = run({"generate", "--class", "HR", "--param", "numOfResidents=6", "--param", "numOfHospitals=3", "--param",
             "totalCapacity=7", "--param", "numOfInstances=100", "--param", "probabilityOfTies=0.3", "--seed", "9",
             "--out", many.string()});
    REQUIRE(r.code == cli::ok);
    int files = 0;
    for (const auto& entry : fs::directory_iterator(many)) {
        if (entry.path().extension() != ".txt")
            continue;
        const std::string text = slurp(entry.path());
        const Instance inst = parse_instance(ProblemClass::HR, text);
        CHECK(serialize_instance(inst) + "\n" == text);
        ++files;
    }
    CHECK(files == 100);
    CHECK(nlohmann::json::parse(slurp(many / "provenance.json"))["seed"] == 9);

    CHECK(run({"generate", "--class", "SR", "--param", "numOfRoommates=2", "--param", "numOfInstances=0", "--out",
               dir.string()})
              .code != cli::ok);
    CHECK(run({"generate", "--class", "SR", "--param", "colour=blue", "--out", dir.string()}).code != cli::ok);
}

TEST_CASE("solve formats and exit codes")
{
    const fs::path dir = scratch("solve");
    const std::string sr = write(dir / "sr.txt", "2\n2 \n1");
    auto r = run({"solve", "--class", "SR", "--alg", "Default Stable (No Ties)", sr});
    REQUIRE(r.code == cli::ok);
    const auto service = run_algorithms(
        {{"problemClass", "SR"}, {"algorithms", "Default Stable (No Ties)"}, {"fileContents", {"2\n2 \n1"}}});
    CHECK(OrderedJson::parse(r.out) == service);

    CHECK(run({"solve", "--class", "SR", "--alg", "Irving", sr}).code == cli::inapplicable);
    CHECK(run({"solve", "--class", "SR", "--alg", "Teleport", "--alg", "Tan-Hsueh", sr}).code == cli::ok);
    CHECK(run({"solve", "--class", "SR", "--alg", "Tan-Hsueh", write(dir / "empty.txt", "")}).code == cli::parse);

    const std::string sm = write(dir / "sm.txt", "3 3\n1: 1 2 3\n2: 2 3 1\n3: 3 1 2\n1: 1: 2 3 1\n2: 1: 3 1 2\n3: 1: 1 2 3");
    r = run({"solve", "--class", "SM", "--alg", "All Stable Matchings", "--format", "html", sm});
    REQUIRE(r.code == cli::ok);
    CHECK(count(r.out, "<div class=\"matching\">") == 3);
    CHECK(r.out.find("<script type=\"application/json\"") != std::string::npos);

    r = run({"solve", "--class", "SM", "--alg", "All Stable Matchings", "--format", "text", sm});
    CHECK(count(r.out, "matching ") == 3);

    const std::string out = (dir / "result.json").string();
    CHECK(run({"solve", "--class", "SM", "--alg", "Egalitarian Stable", "--out", out, sm}).code == cli::ok);
    CHECK(OrderedJson::parse(slurp(out))[0]["numberOfMatchings"] == 1);
}

TEST_CASE("list-algorithms and export")
{
    const fs::path dir = scratch("list");
    auto r = run({"list-algorithms", "--class", "SR"});
    CHECK(r.out.find("Tan-Hsueh") != std::string::npos);
    r = run({"list-algorithms", "--class", "SR", write(dir / "tied.txt", "3\n(2 3)\n1 3\n1 2")});
    CHECK(r.out.find("Tan-Hsueh") != std::string::npos);
    CHECK(r.out.find("Egalitarian Stable Matching") == std::string::npos);

    const std::string sm = write(dir / "sm.txt", "2 2\n1: 1 2\n2: 2 1\n1: 1: 2 1\n2: 1: 1 2");
    r = run({"export", "--class", "SM", "--kind", "sm-hasse", "--format", "dot", sm});
    REQUIRE(r.code == cli::ok);
    CHECK(count(r.out, "->") == 1);
    r = run({"export", "--class", "SM", "--kind", "sm-rotation-poset", "--format", "graph-json", sm});
    CHECK(graph_from_json(r.out).nodes.size() == 1);
    CHECK(run({"export", "--class", "SM", "--kind", "sr-rotation-poset", sm}).code == cli::inapplicable);
    CHECK(run({"export", "--class", "SM", "--kind", "lattice", sm}).code == cli::usage);
}

TEST_CASE("bench output")
{
    auto r = run({"bench", "--x-values", "1", "--trials", "1", "--seed", "4"});
    REQUIRE(r.code == cli::ok);
    CHECK(count(r.out, "\n") == 6);
    CHECK(r.out.rfind("x,algorithm,meanSize,meanTotalStudentCost,meanAvgStudentCost\n", 0) == 0);
    CHECK(run({"bench", "--x-values", "1-3", "--trials", "2", "--seed", "4"}).out ==
          run({"bench", "--x-values", "1-3", "--trials", "2", "--seed", "4"}).out);
    r = run({"bench", "--x-values", "2", "--trials", "1", "--algs", "Greedy One-Sided,Cost-Optimal One-Sided"});
    CHECK(count(r.out, "\n") == 3);
    CHECK(run({"bench", "--x-values", "0"}).code == cli::usage);
    CHECK(run({"bench", "--algs", "Teleport"}).code == cli::usage);
}

TEST_CASE("serve refuses a busy port")
{
    Server holder;
    const int port = holder.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    CHECK(run({"serve", "--port", std::to_string(port)}).code != cli::ok);
    CHECK(run({"serve", "--port", "70000"}).code == cli::usage);
}
