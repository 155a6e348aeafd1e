#pragma once

#include <string>
#include <vector>

#include "matchkit/generator.hpp"
#include "matchkit/instance_io.hpp"
#include "matchkit/model.hpp"
#include "matchkit/random.hpp"

namespace testing_support {

using namespace matchkit;

/// Small random instance of the class with sizes in [1, max_agents] and
/// random list lengths, tie probability and capacities.
inline Instance small_instance(ProblemClass cls, std::uint64_t seed, int max_agents, double ties = -1)
{
    Rng rng(seed, 977);
    GeneratorParams p;
    p.num_first = static_cast<int>(rng.range(1, max_agents));
    p.num_second = cls == ProblemClass::SM ? p.num_first : static_cast<int>(rng.range(1, max_agents));
    if (cls == ProblemClass::SR)
        p.num_first = static_cast<int>(rng.range(1, max_agents));
    p.num_third = static_cast<int>(rng.range(1, p.num_second));
    if (cls == ProblemClass::HR || cls == ProblemClass::CHA || is_spa(cls))
        p.second_capacity = rng.range(p.num_second, p.num_second * 2);
    if (is_spa(cls))
        p.third_capacity = rng.range(p.num_third, p.num_third * 3);
    p.lower = 0;
    p.upper = p.num_second;
    if (rng.bernoulli(0.5))
        p.lower = p.upper;
    p.density = rng.bernoulli(0.5) ? 1.0 : 0.3 + 0.7 * rng.uniform();
    p.probability_of_ties = ties >= 0 ? ties : (rng.bernoulli(0.5) ? 0.0 : 0.4 * rng.uniform());
    p.skewness = 1 + 2 * rng.uniform();
    p.even_capacities = rng.bernoulli(0.5);
    p.seed = seed;
    return generate_one(cls, p, 0);
}

/// Random SM instance. Each pair is acceptable with probability `density`
/// (1 gives complete lists); adjacent list entries are tied with
/// probability `ties`.
inline Instance random_sm(std::uint64_t seed, int n, double density = 1.0, double ties = 0.0)
{
    Rng rng(seed, 4242);
    std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
    for (auto& row : ok)
        for (auto& c : row)
            c = density >= 1.0 || rng.bernoulli(density);
    auto list = [&](int agent, bool man) {
        std::vector<int> order;
        for (int j = 0; j < n; ++j)
            if (man ? ok[agent][j] : ok[j][agent])
                order.push_back(j);
        rng.shuffle(order);
        std::vector<TieGroup> groups;
        for (int x : order) {
            if (groups.empty() || !rng.bernoulli(ties))
                groups.push_back({});
            groups.back().push_back(x);
        }
        return PreferenceList(groups);
    };
    std::vector<PreferenceList> men, women;
    for (int i = 0; i < n; ++i)
        men.push_back(list(i, true));
    for (int i = 0; i < n; ++i)
        women.push_back(list(i, false));
    return Instance::two_sided(ProblemClass::SM, men, std::vector<int>(n, 1), women);
}

inline std::string show(const Instance& inst) { return serialize_instance(inst); }

inline std::string show(const Matching& m)
{
    std::string out;
    for (auto [a, b] : m.pairs())
        out += "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
    return out.empty() ? "{}" : out;
}

}  // namespace testing_support
