#include "doctest.h"

#include "helpers.hpp"
#include "matchkit/metrics.hpp"
#include "matchkit/oracle.hpp"
#include "matchkit/roommates.hpp"

#include <numeric>
#include <set>

using namespace matchkit;
using testing_support::show;
using testing_support::small_instance;

namespace {

using Pairs = std::vector<std::pair<int, int>>;

Instance sr(const std::string& text) { return parse_instance(ProblemClass::SR, text); }

const char* kTriangle = "3\n2 3\n3 1\n1 2";

Instance relabel(const Instance& inst, const std::vector<int>& perm)
{
    const int n = inst.first().size();
    std::vector<PreferenceList> prefs(n);
    for (int a = 0; a < n; ++a) {
        std::vector<TieGroup> groups;
        for (auto g : inst.first().prefs[a].groups()) {
            for (int& b : g)
                b = perm[b];
            groups.push_back(g);
        }
        prefs[perm[a]] = PreferenceList(groups);
    }
    return Instance::roommates(prefs);
}

// Largest matching with no blocking pair among its matched agents.
int oracle_internally_stable_size(const Instance& inst)
{
    int best = 0;
    for (const auto& m : all_matchings(inst)) {
        bool ok = true;
        for (auto [a, b] : acceptable_pairs(inst))
            if (m.partner(a) != -1 && m.partner(b) != -1 && blocks(inst, m, a, b, Criterion::weak))
                ok = false;
        if (ok)
            best = std::max(best, m.size());
    }
    return best;
}

/// Closed sets holding every singular rotation and one of each dual pair.
long complete_closed_sets(const SrRotationPoset& p)
{
    const int k = static_cast<int>(p.rotations.size());
    long count = 0;
    for (long mask = 0; mask < (1L << k); ++mask) {
        bool ok = true;
        for (int r = 0; r < k && ok; ++r) {
            const bool in = mask >> r & 1;
            if (p.dual[r] == -1 && !in)
                ok = false;
            if (p.dual[r] != -1 && in == static_cast<bool>(mask >> p.dual[r] & 1))
                ok = false;
            if (in)
                for (int q : p.predecessors[r])
                    if (!(mask >> q & 1))
                        ok = false;
        }
        count += ok;
    }
    return count;
}

Instance random_sr(std::uint64_t seed, int max_agents, double ties = 0.0)
{
    return small_instance(ProblemClass::SR, seed, max_agents, ties);
}

}  // namespace

TEST_CASE("Irving's algorithm on small examples")
{
    CHECK(irving_stable(sr("2\n2 \n1"))->pairs() == Pairs{{0, 1}});
    CHECK_FALSE(irving_stable(sr(kTriangle)).has_value());
    CHECK(irving_stable(sr("1\n\n"))->empty());
    CHECK_THROWS_AS(irving_stable(sr("3\n(2 3)\n1 3\n1 2")), InapplicableError);
}

TEST_CASE("Irving's algorithm agrees with the oracle")
{
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Instance inst = random_sr(seed, 8);
        const auto got = irving_stable(inst);
        const auto all = stable_matchings(inst);
        INFO(show(inst));
        CHECK(got.has_value() == !all.empty());
        if (got) {
            REQUIRE(is_valid(inst, *got));
            CHECK(is_stable(inst, *got));
        }
    }
}

TEST_CASE("stable partitions")
{
    const auto two = tan_hsueh(sr("2\n2\n1"));
    CHECK(two.cycles == std::vector<std::vector<int>>{{0, 1}});
    const auto tri = tan_hsueh(sr(kTriangle));
    CHECK(tri.cycles == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(tan_hsueh(sr("1\n\n")).cycles == std::vector<std::vector<int>>{{0}});

    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const Instance inst = random_sr(seed, 8, seed % 2 ? 0.3 : 0.0);
        const auto p = tan_hsueh(inst);
        INFO(show(inst));
        CHECK(is_stable_partition(inst, p));
        CHECK(p.reduced());
        if (seed % 2 == 0)
            CHECK((p.odd_parties() == 0) == !stable_matchings(inst).empty());
    }
}

TEST_CASE("odd cycle count is invariant under relabelling")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = random_sr(seed, 9);
        const int q = tan_hsueh(inst).odd_cycles();
        Rng rng(seed, 11);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<int> perm(inst.first().size());
            std::iota(perm.begin(), perm.end(), 0);
            rng.shuffle(perm);
            const Instance moved = relabel(inst, perm);
            const auto p = tan_hsueh(moved);
            CHECK(is_stable_partition(moved, p));
            CHECK(p.odd_cycles() == q);
        }
    }
}

TEST_CASE("maximum stable matchings")
{
    const Matching tri = max_stable_sr(sr(kTriangle));
    CHECK(tri.pairs() == Pairs{{1, 2}});
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = random_sr(seed, 7);
        const Matching m = max_stable_sr(inst);
        const int n = inst.first().size();
        INFO(show(inst), " got ", show(m));
        REQUIRE(is_valid(inst, m));
        CHECK(2 * m.size() == n - tan_hsueh(inst).odd_cycles());
        CHECK(m.size() == oracle_internally_stable_size(inst));
        if (auto s = irving_stable(inst))
            CHECK(m.size() == s->size());
    }
}

TEST_CASE("optimal stable matchings, pairs and enumeration")
{
    const Instance two = sr("2\n2 \n1");
    const auto egal = optimal_stable_sr(two, SrObjective::egalitarian);
    REQUIRE(egal.has_value());
    CHECK(compute_stats(two, *egal).total_cost == 2);
    CHECK(compute_stats(two, *egal).total_regret == 1);
    CHECK(all_stable_pairs_sr(two) == Pairs{{0, 1}});
    CHECK(enumerate_stable_sr(two, 10).size() == 1);
    CHECK_FALSE(optimal_stable_sr(sr(kTriangle), SrObjective::min_regret).has_value());
    CHECK(enumerate_stable_sr(sr(kTriangle), 10).empty());
    CHECK(all_stable_pairs_sr(sr(kTriangle)).empty());

    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const Instance inst = random_sr(seed, 8);
        const auto all = stable_matchings(inst);
        INFO(show(inst));
        const auto listed = enumerate_stable_sr(inst, 100000);
        CHECK(std::set<Matching>(listed.begin(), listed.end()) == std::set<Matching>(all.begin(), all.end()));
        CHECK(listed.size() == all.size());
        std::set<std::pair<int, int>> pairs;
        for (const auto& m : all)
            pairs.insert(m.pairs().begin(), m.pairs().end());
        CHECK(all_stable_pairs_sr(inst) == Pairs(pairs.begin(), pairs.end()));
        for (auto [mine, theirs] : {std::pair{SrObjective::egalitarian, Objective::egalitarian_stable},
                                    std::pair{SrObjective::min_regret, Objective::min_regret_stable}}) {
            const auto got = optimal_stable_sr(inst, mine);
            const auto best = oracle_optimum(inst, theirs);
            REQUIRE(got.has_value() == best.feasible);
            if (got)
                CHECK(objective_value(inst, *got, theirs) == best.value);
        }
        bool truncated = false;
        if (all.size() > 1) {
            CHECK(enumerate_stable_sr(inst, 1, &truncated).size() == 1);
            CHECK(truncated);
        }
    }
}

TEST_CASE("roommates rotation poset matches the stable set")
{
    CHECK_THROWS_AS(sr_rotation_poset(sr(kTriangle)), DomainError);
    int nontrivial = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const Instance inst = random_sr(seed, 8);
        const auto all = stable_matchings(inst);
        if (all.empty())
            continue;
        const auto p = sr_rotation_poset(inst);
        INFO(show(inst));
        REQUIRE(p.rotations.size() < 20);
        CHECK(complete_closed_sets(p) == static_cast<long>(all.size()));
        nontrivial += all.size() > 1;
        for (auto [a, b] : p.poset)
            CHECK(a != b);
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("partitions and maximum stable matchings on larger instances")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Instance inst = random_sr(seed, 30);
        const auto p = tan_hsueh(inst);
        INFO(show(inst));
        CHECK(is_stable_partition(inst, p));
        const Matching m = max_stable_sr(inst);
        CHECK(2 * m.size() == inst.first().size() - p.odd_cycles());
        for (auto [a, b] : acceptable_pairs(inst))
            if (m.partner(a) != -1 && m.partner(b) != -1)
                CHECK_FALSE(blocks(inst, m, a, b, Criterion::weak));
        CHECK(irving_stable(inst).has_value() == (p.odd_parties() == 0));
    }
}
