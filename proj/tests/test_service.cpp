#include "doctest.h"

#include "helpers.hpp"
#include "httplib.h"
#include "matchkit/oracle.hpp"
#include "matchkit/runner.hpp"
#include "matchkit/server.hpp"
#include "matchkit/service.hpp"

#include <future>
#include <thread>

using namespace matchkit;
using json = nlohmann::json;
using testing_support::small_instance;

namespace {

const char* kGoldenRun = R"golden([
    {
        "status": "success",
        "description": null,
        "algorithm": "default stable (no ties)",
        "numberOfMatchings": 1,
        "matchings": [
            {
                "matchingNumber": 0,
                "statsToDisplay": {
                    "Size": "1",
                    "Profile Amount": "(2)",
                    "Profile Position": "(1)",
                    "Cost": "2"
                },
                "statsToExpand": {
                    "Preference Lists": "1: <2>\n2: <1>",
                    "Matched Pairs": "(1, 2)\n"
                }
            }
        ],
        "numberOfIterations": 1,
        "stats": "",
        "expandableStats": {},
        "graphs": []
    }
])golden";

// Keys of the catalog entries that bracket the elided part of the listing.
void check_sr_catalog(const OrderedJson& algs)
{
    REQUIRE(algs.is_object());
    REQUIRE(algs.size() >= 2);
    CHECK(algs.begin().key() == "Minimum Regret Matching");
    CHECK(algs.begin().value() == "Find a minimum regret stable matching or report that none exists");
    auto last = algs.end();
    --last;
    CHECK(last.key() == "Egalitarian Stable Matching");
    CHECK(last.value() == "Find an egalitarian stable matching or report that none exists");
}

json post(const std::string& path, const json& body)
{
    const ServiceResponse r = handle_request(path, body.dump());
    INFO(r.body);
    REQUIRE(r.status == 201);
    return json::parse(r.body);
}

}  // namespace

TEST_CASE("check-file replays the documented exchange")
{
    const auto r = check_file(json{{"problemClass", "SR"}, {"fileContents", "2\n2 \n1"}});
    CHECK(r["status"] == "success");
    CHECK(r["statusText"].is_null());
    CHECK(r["instances"].is_null());
    check_sr_catalog(r["availableAlgs"]);
    std::vector<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"status", "statusText", "availableAlgs", "instances"});

    const auto empty = check_file(json{{"problemClass", "SR"}, {"fileContents", ""}});
    CHECK(empty["status"] == "error");
    CHECK(empty["statusText"].get<std::string>().find("empty instance") != std::string::npos);

    const auto bad = check_file(json{{"problemClass", "SR"}, {"fileContents", "2\n2 x\n1"}});
    CHECK(bad["status"] == "error");
    CHECK(bad["statusText"].get<std::string>().rfind("line 2", 0) == 0);

    const auto tied = check_file(json{{"problemClass", "SR"}, {"fileContents", "3\n(2 3)\n1 3\n1 2"}});
    CHECK(tied["availableAlgs"].contains("Tan-Hsueh"));
    CHECK_FALSE(tied["availableAlgs"].contains("Egalitarian Stable Matching"));
}

TEST_CASE("check-params replays the documented exchange")
{
    const json params = {{"numOfRoommates", 2}, {"probabilityOfTies", 0}, {"preferenceListDensity", 1},
                         {"numOfInstances", 1}};
    const auto r = check_params(json{{"problemClass", "SR"}, {"parameters", params}});
    CHECK(r["status"] == "success");
    CHECK(r["statusText"].is_null());
    check_sr_catalog(r["availableAlgs"]);
    CHECK(r["instances"] == OrderedJson::array({"2\n2 \n1"}));

    json five = params;
    five["numOfInstances"] = 5;
    five["numOfRoommates"] = 6;
    five["seed"] = 17;
    const auto batch = check_params(json{{"problemClass", "SR"}, {"parameters", five}});
    REQUIRE(batch["instances"].size() == 5);
    for (const auto& text : batch["instances"])
        CHECK(parse_instance(ProblemClass::SR, text.get<std::string>()).first().size() == 6);
    CHECK(check_params(json{{"problemClass", "SR"}, {"parameters", five}}) == batch);
    CHECK_FALSE(batch["availableAlgs"].contains("All Stable Matchings"));

    json zero = params;
    zero["numOfInstances"] = 0;
    const auto err = check_params(json{{"problemClass", "SR"}, {"parameters", zero}});
    CHECK(err["status"] == "error");
    CHECK(err["statusText"].get<std::string>().find("numOfInstances") != std::string::npos);
    json unknown = params;
    unknown["numOfHospitals"] = 2;
    CHECK(check_params(json{{"problemClass", "SR"}, {"parameters", unknown}})["statusText"].get<std::string>().find(
              "numOfHospitals") != std::string::npos);

    const json hr = {{"numOfResidents", 4}, {"numOfHospitals", 2}, {"totalCapacity", 4}, {"seed", 3}};
    const auto hr_batch = check_params(json{{"problemClass", "HR"}, {"parameters", hr}});
    REQUIRE(hr_batch["status"] == "success");
    CHECK(parse_instance(ProblemClass::HR, hr_batch["instances"][0].get<std::string>()).first().size() == 4);
}

TEST_CASE("run-algorithms replays the documented exchange")
{
    const json body = {{"problemClass", "SR"}, {"algorithms", "Default Stable (No Ties)"}, {"fileContents", {"2\n2 \n1"}}};
    const auto r = run_algorithms(body);
    CHECK(r == OrderedJson::parse(kGoldenRun));
    CHECK(r.dump() == OrderedJson::parse(kGoldenRun).dump());
    CHECK(handle_request("/run-algorithms", body.dump()).body == OrderedJson::parse(kGoldenRun).dump());
}

TEST_CASE("run-algorithms results")
{
    const char* two_stable = "2 2\n1: 1 2\n2: 2 1\n1: 1: 2 1\n2: 1: 1 2";
    const auto all = run_algorithms(
        json{{"problemClass", "SM"}, {"algorithms", {"All Stable Matchings", "Egalitarian Stable"}}, {"fileContents", {two_stable}}});
    REQUIRE(all.size() == 2);
    CHECK(all[0]["numberOfMatchings"] == 2);
    CHECK(all[0]["matchings"].size() == 2);
    REQUIRE(all[0]["graphs"].size() == 3);
    CHECK(all[0]["graphs"][2]["name"] == "hasse diagram");
    CHECK(all[0]["graphs"][2]["nodes"].size() == 2);
    CHECK(all[1]["numberOfMatchings"] == 1);

    const auto none = run_algorithms(json{{"problemClass", "SR"}, {"algorithms", "Default Stable (No Ties)"},
                                          {"fileContents", {"3\n2 3\n3 1\n1 2"}}});
    CHECK(none[0]["status"] == "success");
    CHECK(none[0]["numberOfMatchings"] == 0);
    CHECK(none[0]["description"] == "No stable matching exists");

    const auto bad = run_algorithms(json{{"problemClass", "SR"}, {"algorithms", {"Egalitarian Stable Matching", "Teleport"}},
                                         {"fileContents", {"3\n(2 3)\n1 3\n1 2"}}});
    CHECK(bad[0]["status"] == "error");
    CHECK(bad[1]["status"] == "error");
    CHECK(bad[1]["description"].get<std::string>().find("unknown algorithm") != std::string::npos);

    const auto batch = run_algorithms(json{{"problemClass", "SR"}, {"algorithms", {"Maximum Stable", "All Stable Matchings"}},
                                           {"fileContents", {"2\n2 \n1", "3\n2 3\n3 1\n1 2"}}});
    CHECK(batch[0]["status"] == "success");
    CHECK(batch[0]["numberOfIterations"] == 2);
    CHECK(batch[0]["matchings"].empty());
    CHECK(batch[0]["expandableStats"]["Mean Size"] == "1.00");
    CHECK(batch[1]["status"] == "error");

    const auto switching = run_algorithms(json{{"problemClass", "HA"}, {"algorithms", "Switching Graph"},
                                               {"fileContents", {"2 2\n1: 1 2\n2: 1 2\n1: 1\n2: 1"}}});
    CHECK(switching[0]["graphs"].size() == 1);
}

TEST_CASE("malformed requests")
{
    CHECK(handle_request("/check-file", "{").status == 400);
    CHECK(handle_request("/check-file", R"({"problemClass":"SR"})").status == 400);
    CHECK(handle_request("/run-algorithms", R"({"problemClass":"SR","algorithms":3,"fileContents":[]})").status == 400);
    CHECK(handle_request("/nowhere", "{}").status == 404);
    const auto cls = post("/check-file", json{{"problemClass", "XX"}, {"fileContents", "1\n"}});
    CHECK(cls["status"] == "error");
}

TEST_CASE("slow requests time out")
{
    ServiceOptions quick;
    quick.timeout = std::chrono::milliseconds(0);
    const json body = {{"problemClass", "SR"}, {"parameters", {{"numOfRoommates", 300}, {"numOfInstances", 50}}}};
    const auto r = handle_request("/check-params", body.dump(), quick);
    CHECK(r.body.find("timeout") != std::string::npos);
}

TEST_CASE("every catalog algorithm returns valid matchings")
{
    const ProblemClass classes[] = {ProblemClass::HA, ProblemClass::CHA, ProblemClass::HR, ProblemClass::SM,
                                    ProblemClass::SR, ProblemClass::SPA, ProblemClass::SPAS};
    int runs = 0;
    for (ProblemClass cls : classes)
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const Instance inst = small_instance(cls, seed, 6);
            const auto props = classify(inst);
            for (const auto& info : class_algorithms(cls)) {
                INFO(info.name, " on ", serialize_instance(inst));
                if (!is_applicable(info.id, props)) {
                    CHECK_THROWS_AS(run_algorithm(info.id, inst), InapplicableError);
                    continue;
                }
                const RunOutput out = run_algorithm(info.id, inst);
                for (const auto& m : out.matchings)
                    CHECK(is_valid(inst, m));
                if (single_output(info.id))
                    CHECK(out.matchings.size() <= 1);
                ++runs;
            }
        }
    CHECK(runs > 1000);
}

TEST_CASE("concurrent HTTP requests give identical responses")
{
    Server server;
    const int port = server.bind("127.0.0.1", 0);
    REQUIRE(port > 0);
    std::thread loop([&] { server.listen(); });
    const std::vector<json> bodies = {
        {{"problemClass", "SR"}, {"algorithms", "Default Stable (No Ties)"}, {"fileContents", {"2\n2 \n1"}}},
        {{"problemClass", "SR"}, {"parameters", {{"numOfRoommates", 8}, {"numOfInstances", 3}, {"seed", 5}}}},
        {{"problemClass", "SR"}, {"fileContents", "2\n2 \n1"}},
    };
    const char* paths[] = {"/run-algorithms", "/check-params", "/check-file"};
    std::vector<std::string> expected;
    for (int i = 0; i < 3; ++i)
        expected.push_back(handle_request(paths[i], bodies[i].dump()).body);

    std::vector<std::future<bool>> results;
    for (int i = 0; i < 50; ++i)
        results.push_back(std::async(std::launch::async, [&, i] {
            httplib::Client client("127.0.0.1", port);
            auto res = client.Post(paths[i % 3], bodies[i % 3].dump(), "application/json");
            return res && res->status == 201 && res->body == expected[i % 3];
        }));
    int ok = 0;
    for (auto& f : results)
        ok += f.get();
    CHECK(ok == 50);

    httplib::Client client("127.0.0.1", port);
    auto big = client.Post("/check-file", std::string(11 * 1024 * 1024, ' '), "application/json");
    REQUIRE(big);
    CHECK(big->status == 413);
    server.stop();
    loop.join();

    Server clash;
    CHECK(clash.bind("127.0.0.1", port) == port);
    Server second;
    CHECK(second.bind("127.0.0.1", port) == -1);
}
