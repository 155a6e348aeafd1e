#include "doctest.h"

#include "helpers.hpp"
#include "matchkit/metrics.hpp"
#include "matchkit/oracle.hpp"
#include "matchkit/twosided.hpp"

#include <set>
#include <sstream>

using namespace matchkit;
using testing_support::random_sm;
using testing_support::show;
using testing_support::small_instance;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

// Women's lines are written without the unit capacity.
Instance sm(const std::string& text)
{
    std::istringstream in(text);
    std::string line, out;
    std::getline(in, line);
    out = line + "\n";
    const int men = std::stoi(line);
    for (int i = 0; std::getline(in, line); ++i) {
        if (i >= men) {
            const auto colon = line.find(':');
            line = line.substr(0, colon) + ": 1:" + line.substr(colon + 1);
        }
        out += line + "\n";
    }
    return parse_instance(ProblemClass::SM, out);
}
Instance hr(const std::string& text) { return parse_instance(ProblemClass::HR, text); }

const char* kUnique = "2 2\n1: 1 2\n2: 2 1\n1: 1 2\n2: 2 1";
const char* kTwoStable = "2 2\n1: 1 2\n2: 2 1\n1: 2 1\n2: 1 2";

Instance strict_hr(std::uint64_t seed, int n) { return small_instance(ProblemClass::HR, seed, n, 0.0); }

// Rank of `partner` for a first-group agent, with unmatched worst.
int resident_rank(const Instance& inst, const Matching& m, int r)
{
    const int p = m.partner(r);
    return p == -1 ? 1 << 20 : inst.rank(Side::first, r, p);
}

int hospital_worst(const Instance& inst, const Matching& m, int h)
{
    int worst = 0;
    if (static_cast<int>(m.assignees(h).size()) < inst.second().capacity[h])
        return 1 << 20;
    for (int r : m.assignees(h))
        worst = std::max(worst, inst.rank(Side::second, h, r));
    return worst;
}

std::set<Matching> as_set(const std::vector<Matching>& ms) { return {ms.begin(), ms.end()}; }

}  // namespace

TEST_CASE("Gale-Shapley examples")
{
    const Instance u = sm(kUnique);
    CHECK(gale_shapley(u).pairs() == Pairs{{0, 0}, {1, 1}});
    CHECK(gale_shapley(u, Proposers::hospitals).pairs() == Pairs{{0, 0}, {1, 1}});
    const Instance t = sm(kTwoStable);
    CHECK(gale_shapley(t).pairs() == Pairs{{0, 0}, {1, 1}});
    CHECK(gale_shapley(t, Proposers::hospitals).pairs() == Pairs{{0, 1}, {1, 0}});
    CHECK(gale_shapley(hr("2 1\n1: 1\n2: 1\n1: 2: 1 2")).size() == 2);
    CHECK_THROWS_AS(gale_shapley(sm("2 2\n1: (1 2)\n2: 1 2\n1: 1 2\n2: 1 2")), InapplicableError);
}

TEST_CASE("Gale-Shapley is stable and proposer-optimal")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Instance inst = strict_hr(seed, 5);
        const auto stable = stable_matchings(inst);
        const Matching r = gale_shapley(inst);
        const Matching h = gale_shapley(inst, Proposers::hospitals);
        INFO(show(inst));
        REQUIRE(is_valid(inst, r));
        REQUIRE(is_valid(inst, h));
        CHECK(is_stable(inst, r));
        CHECK(is_stable(inst, h));
        for (const auto& s : stable) {
            for (int a = 0; a < inst.first().size(); ++a)
                CHECK(resident_rank(inst, r, a) <= resident_rank(inst, s, a));
            for (int b = 0; b < inst.second().size(); ++b)
                CHECK(hospital_worst(inst, h, b) <= hospital_worst(inst, s, b));
        }
    }
}

TEST_CASE("Rural Hospitals property on oracle stable sets")
{
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const Instance inst = strict_hr(seed, 6);
        const auto stable = stable_matchings(inst);
        REQUIRE_FALSE(stable.empty());
        auto shape = [&](const Matching& m) {
            std::vector<int> v;
            for (int a = 0; a < inst.first().size(); ++a)
                v.push_back(m.partner(a) != -1);
            for (int b = 0; b < inst.second().size(); ++b)
                v.push_back(static_cast<int>(m.assignees(b).size()));
            return v;
        };
        for (const auto& m : stable)
            CHECK(shape(m) == shape(stable.front()));
    }
}

TEST_CASE("super-stable matchings agree with the oracle")
{
    CHECK(super_stable(sm("1 1\n1: 1\n1: 1"))->pairs() == Pairs{{0, 0}});
    const Instance t = sm(kTwoStable);
    CHECK(*super_stable(t) == gale_shapley(t));
    const Instance tied = sm("2 2\n1: (1 2)\n2: (1 2)\n1: 1 2\n2: 2 1");
    CHECK(super_stable(tied).has_value() == !stable_matchings(tied, Criterion::super).empty());

    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = small_instance(ProblemClass::HR, seed, 5);
        const auto got = super_stable(inst);
        const auto all = stable_matchings(inst, Criterion::super);
        INFO(show(inst));
        CHECK(got.has_value() == !all.empty());
        if (got) {
            REQUIRE(is_valid(inst, *got));
            CHECK(is_stable(inst, *got, Criterion::super));
        }
    }
}

TEST_CASE("strongly stable matchings agree with the oracle")
{
    CHECK(strongly_stable(sm("1 1\n1: 1\n1: 1"))->pairs() == Pairs{{0, 0}});
    const Instance t = sm(kTwoStable);
    CHECK(*strongly_stable(t) == gale_shapley(t));
    CHECK_THROWS_AS(strongly_stable(hr("2 1\n1: 1\n2: 1\n1: 2: 1 2")), InapplicableError);

    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const Instance inst = random_sm(seed, 2 + static_cast<int>(seed % 4), seed % 2 ? 1.0 : 0.7, 0.4);
        const auto got = strongly_stable(inst);
        const auto all = stable_matchings(inst, Criterion::strong);
        INFO(show(inst));
        CHECK(got.has_value() == !all.empty());
        if (got) {
            REQUIRE(is_valid(inst, *got));
            CHECK(is_stable(inst, *got, Criterion::strong));
        }
    }
}

TEST_CASE("Kiraly approximation stays within two thirds of the maximum")
{
    const Instance full = sm("3 3\n1: (1 2 3)\n2: (1 2 3)\n3: (1 2 3)\n1: (1 2 3)\n2: (1 2 3)\n3: (1 2 3)");
    CHECK(kiraly_two_sided(full).size() == 3);
    const Instance strict = sm(kTwoStable);
    CHECK(kiraly_one_sided(strict).size() == gale_shapley(strict).size());
    CHECK_THROWS_AS(kiraly_one_sided(sm("2 2\n1: (1 2)\n2: 1 2\n1: 1 2\n2: 1 2")), InapplicableError);

    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = seed % 2 ? small_instance(ProblemClass::HR, seed, 5)
                                       : random_sm(seed, 2 + static_cast<int>(seed % 5), 0.6, 0.5);
        const auto best = oracle_optimum(inst, Objective::max_size_stable);
        const Matching m = kiraly_two_sided(inst);
        INFO(show(inst), " got ", show(m));
        REQUIRE(is_valid(inst, m));
        CHECK(is_stable(inst, m));
        CHECK(3 * m.size() >= 2 * best.value[0]);
    }
}

TEST_CASE("a tied resident makes room for one without alternatives")
{
    // Resident 1 is indifferent between hospitals 1 and 3; resident 2 accepts only hospital 1.
    const Instance inst = hr("3 5\n1: (1 3) 4 5\n2: 1\n3:\n1: 1: 1 2\n2: 1:\n3: 1: 1\n4: 1: 1\n5: 1: 1");
    const Matching m = kiraly_two_sided(inst);
    CHECK(m.pairs() == Pairs{{0, 2}, {1, 0}});
    CHECK(is_stable(inst, m));
}

TEST_CASE("one-sided Kiraly on hospital ties")
{
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 600 && checked < 150; ++seed) {
        const Instance inst = small_instance(ProblemClass::HR, seed, 5);
        if (classify(inst).ties(Role::resident))
            continue;
        ++checked;
        const Matching m = kiraly_one_sided(inst);
        INFO(show(inst), " got ", show(m));
        REQUIRE(is_valid(inst, m));
        CHECK(is_stable(inst, m));
        CHECK(3 * m.size() >= 2 * oracle_optimum(inst, Objective::max_size_stable).value[0]);
    }
    CHECK(checked >= 100);
}

TEST_CASE("maximum popular matchings in SMI")
{
    CHECK(max_popular_sm(sm("1 1\n1: 1\n1: 1")).pairs() == Pairs{{0, 0}});
    CHECK(max_popular_sm(sm(kTwoStable)).size() == 2);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Instance inst = random_sm(seed, 1 + static_cast<int>(seed % 5), 0.5);
        const Matching m = max_popular_sm(inst);
        INFO(show(inst), " got ", show(m));
        REQUIRE(is_valid(inst, m));
        CHECK(is_popular(inst, m));
        CHECK(m.size() == oracle_optimum(inst, Objective::max_size_popular).value[0]);
    }
}

TEST_CASE("optimal stable matchings")
{
    const Instance u = sm(kUnique);
    for (auto o : {StableObjective::egalitarian, StableObjective::min_regret, StableObjective::min_regret_men,
                   StableObjective::min_regret_women})
        CHECK(optimal_stable_sm(u, o) == gale_shapley(u));
    const Instance t = sm(kTwoStable);
    CHECK(compute_stats(t, optimal_stable_sm(t, StableObjective::egalitarian)).total_cost == 6);
    CHECK(optimal_stable_sm(t, StableObjective::min_regret_men) == gale_shapley(t));
    CHECK_THROWS_AS(optimal_stable_sm(sm("2 2\n1: 1\n2: 2 1\n1: 1 2\n2: 2"), StableObjective::egalitarian),
                    InapplicableError);

    const std::pair<StableObjective, Objective> cases[] = {
        {StableObjective::egalitarian, Objective::egalitarian_stable},
        {StableObjective::min_regret, Objective::min_regret_stable},
        {StableObjective::min_regret_men, Objective::min_regret_first_stable},
        {StableObjective::min_regret_women, Objective::min_regret_second_stable},
    };
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Instance inst = random_sm(seed, 2 + static_cast<int>(seed % 5));
        for (auto [mine, theirs] : cases) {
            const Matching m = optimal_stable_sm(inst, mine);
            INFO(show(inst), " objective ", static_cast<int>(mine), " got ", show(m));
            CHECK(is_stable(inst, m));
            CHECK(objective_value(inst, m, theirs) == oracle_optimum(inst, theirs).value);
        }
    }
}

TEST_CASE("stable pairs and enumeration on small examples")
{
    for (auto method : {EnumerationMethod::break_marriage, EnumerationMethod::rotation_elimination}) {
        CHECK(enumerate_stable_sm(sm(kUnique), method, 100).size() == 1);
        const auto two = enumerate_stable_sm(sm(kTwoStable), method, 100);
        REQUIRE(two.size() == 2);
        CHECK(two.front() == gale_shapley(sm(kTwoStable)));
        bool truncated = false;
        CHECK(enumerate_stable_sm(sm(kTwoStable), method, 1, &truncated).size() == 1);
        CHECK(truncated);
    }
    CHECK(all_stable_pairs_sm(sm(kUnique)).size() == 2);
    CHECK(all_stable_pairs_sm(sm(kTwoStable)).size() == 4);
}

TEST_CASE("enumeration, pairs and rotations agree with the oracle")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 1 + static_cast<int>(seed % 7);
        const Instance inst = random_sm(seed, n, seed % 3 == 0 ? 0.6 : 1.0);
        const auto oracle = stable_matchings(inst);
        INFO(show(inst));
        const auto bm = enumerate_stable_sm(inst, EnumerationMethod::break_marriage, 100000);
        const auto re = enumerate_stable_sm(inst, EnumerationMethod::rotation_elimination, 100000);
        CHECK(bm.size() == oracle.size());
        CHECK(re.size() == oracle.size());
        CHECK(as_set(bm) == as_set(oracle));
        CHECK(as_set(re) == as_set(oracle));
        CHECK(bm == re);
        REQUIRE_FALSE(bm.empty());
        CHECK(bm.front() == gale_shapley(inst));
        CHECK(bm.back() == gale_shapley(inst, Proposers::hospitals));

        std::set<std::pair<int, int>> pairs;
        for (const auto& m : oracle)
            pairs.insert(m.pairs().begin(), m.pairs().end());
        CHECK(all_stable_pairs_sm(inst) == Pairs(pairs.begin(), pairs.end()));

        const auto rs = sm_rotations(inst);
        for (auto [a, b] : rs.poset)
            CHECK(a < b);
    }
}
