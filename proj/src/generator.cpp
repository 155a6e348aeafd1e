#include "matchkit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace matchkit {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw DomainError("invalid generator parameters: " + what);
}

int targets_of(ProblemClass cls, const GeneratorParams& p)
{
    return cls == ProblemClass::SR ? p.num_first - 1 : p.num_second;
}

/// Ranks the `candidates` (ascending indices) with popularity weights over
/// their position.
std::vector<int> rank_candidates(Rng& rng, const std::vector<int>& candidates, double s)
{
    std::vector<int> order;
    for (int i : sample_order(rng, popularity_weights(static_cast<int>(candidates.size()), s),
                              static_cast<int>(candidates.size())))
        order.push_back(candidates[i]);
    return order;
}

std::vector<int> contiguous_owners(int projects, int lecturers)
{
    std::vector<int> owner;
    const int base = projects / lecturers, extra = projects % lecturers;
    for (int l = 0; l < lecturers; ++l)
        for (int k = 0; k < base + (l < extra ? 1 : 0); ++k)
            owner.push_back(l);
    return owner;
}

}  // namespace

void validate_params(ProblemClass cls, const GeneratorParams& p)
{
    require(p.num_first >= 1, "at least one agent is needed in every group");
    require(p.num_instances >= 1, "numOfInstances must be positive");
    require(p.probability_of_ties >= 0 && p.probability_of_ties <= 1, "probabilityOfTies must lie in [0, 1]");
    require(p.skewness >= 1 && p.secondary_skewness >= 1, "skewness must be at least 1");
    if (cls == ProblemClass::SR) {
        require(p.density > 0 && p.density <= 1, "preferenceListDensity must lie in (0, 1]");
        return;
    }
    require(p.num_second >= 1, "at least one agent is needed in every group");
    const int targets = targets_of(cls, p);
    const int lo = p.lower < 0 ? targets : p.lower;
    const int hi = p.upper < 0 ? targets : p.upper;
    require(lo <= hi && hi <= targets, "list length bounds must satisfy lower <= upper <= number of targets");
    if (cls == ProblemClass::SM)
        require(p.num_first == p.num_second, "SM needs equally many men and women");
    if (cls == ProblemClass::HR || cls == ProblemClass::CHA || is_spa(cls))
        require(p.second_capacity == 0 || p.second_capacity >= p.num_second,
                "total capacity must cover one place per agent");
    if (is_spa(cls)) {
        require(p.num_third >= 1 && p.num_third <= p.num_second, "every lecturer needs at least one project");
        require(p.third_capacity == 0 || p.third_capacity >= p.num_third,
                "total lecturer capacity must cover one place per lecturer");
    }
}

std::vector<double> popularity_weights(int targets, double s)
{
    std::vector<double> w(std::max(targets, 0), s);
    if (targets > 1)
        for (int k = 1; k <= targets; ++k)
            w[k - 1] = s + (1.0 - k) / (targets - 1) * (s - 1.0);
    return w;
}

std::vector<int> sample_order(Rng& rng, const std::vector<double>& weights, int count)
{
    std::vector<double> w = weights;
    std::vector<int> out;
    count = std::min<int>(count, static_cast<int>(w.size()));
    for (int i = 0; i < count; ++i) {
        const std::size_t k = rng.weighted(w);
        out.push_back(static_cast<int>(k));
        w[k] = 0;
    }
    return out;
}

PreferenceList with_ties(Rng& rng, const std::vector<int>& order, double p)
{
    std::vector<TieGroup> groups;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && rng.bernoulli(p))
            groups.back().push_back(order[i]);
        else
            groups.push_back({order[i]});
    }
    return PreferenceList(std::move(groups));
}

std::vector<int> split_capacity(Rng& rng, long total, int count, bool even)
{
    if (count <= 0)
        return {};
    if (total < count)
        throw DomainError("total capacity smaller than the number of agents");
    std::vector<int> caps(count);
    if (even) {
        for (int i = 0; i < count; ++i)
            caps[i] = static_cast<int>(total / count + (i < total % count ? 1 : 0));
        return caps;
    }
    // Uniform composition: choose count-1 distinct cut points in [1, total-1].
    std::set<long> cuts;
    while (static_cast<int>(cuts.size()) < count - 1)
        cuts.insert(rng.range(1, total - 1));
    long prev = 0;
    int i = 0;
    for (long c : cuts) {
        caps[i++] = static_cast<int>(c - prev);
        prev = c;
    }
    caps[i] = static_cast<int>(total - prev);
    return caps;
}

Instance generate_one(ProblemClass cls, const GeneratorParams& p, std::uint64_t index)
{
    validate_params(cls, p);
    Rng rng(p.seed, index);
    const int n1 = p.num_first;
    const double ties = p.probability_of_ties;

    if (cls == ProblemClass::SR) {
        const int len = static_cast<int>(std::lround(p.density * (n1 - 1)));
        std::vector<std::vector<int>> draws(n1);
        const auto weights = popularity_weights(n1 - 1, p.skewness);
        for (int a = 0; a < n1; ++a)
            for (int k : sample_order(rng, weights, len))
                draws[a].push_back(k < a ? k : k + 1);
        std::vector<std::set<int>> drew(n1);
        for (int a = 0; a < n1; ++a)
            drew[a].insert(draws[a].begin(), draws[a].end());
        std::vector<PreferenceList> prefs;
        for (int a = 0; a < n1; ++a) {
            std::vector<int> kept;
            for (int b : draws[a])
                if (drew[b].count(a))
                    kept.push_back(b);
            prefs.push_back(with_ties(rng, kept, ties));
        }
        return Instance::roommates(std::move(prefs));
    }

    const int n2 = p.num_second;
    const int lo = p.lower < 0 ? n2 : p.lower;
    const int hi = p.upper < 0 ? n2 : p.upper;
    const auto weights = popularity_weights(n2, p.skewness);
    std::vector<std::vector<int>> orders(n1);
    std::vector<PreferenceList> first;
    for (int a = 0; a < n1; ++a) {
        orders[a] = sample_order(rng, weights, static_cast<int>(rng.range(lo, hi)));
        first.push_back(with_ties(rng, orders[a], ties));
    }

    // Agents of the ranking side order whoever found them acceptable.
    auto ranked_lists = [&](int groups, auto&& accepts) {
        std::vector<PreferenceList> lists;
        for (int g = 0; g < groups; ++g) {
            std::vector<int> candidates;
            for (int a = 0; a < n1; ++a)
                if (accepts(g, a))
                    candidates.push_back(a);
            lists.push_back(with_ties(rng, rank_candidates(rng, candidates, p.secondary_skewness), ties));
        }
        return lists;
    };
    auto lists_item = [&](int a, int item) {
        return std::find(orders[a].begin(), orders[a].end(), item) != orders[a].end();
    };

    switch (cls) {
    case ProblemClass::HR:
    case ProblemClass::SM: {
        std::vector<int> caps = cls == ProblemClass::SM
                                    ? std::vector<int>(n2, 1)
                                    : split_capacity(rng, p.second_capacity ? p.second_capacity : n2, n2,
                                                     p.even_capacities);
        auto second = ranked_lists(n2, [&](int h, int r) { return lists_item(r, h); });
        return Instance::two_sided(cls, std::move(first), std::move(caps), std::move(second));
    }
    case ProblemClass::HA:
        return Instance::house_allocation(cls, std::move(first), std::vector<int>(n2, 1));
    case ProblemClass::CHA:
        return Instance::house_allocation(
            cls, std::move(first),
            split_capacity(rng, p.second_capacity ? p.second_capacity : n2, n2, p.even_capacities));
    case ProblemClass::SPA:
    case ProblemClass::SPAS: {
        const int n3 = p.num_third;
        auto pcaps = split_capacity(rng, p.second_capacity ? p.second_capacity : n2, n2, p.even_capacities);
        auto lcaps = split_capacity(rng, p.third_capacity ? p.third_capacity : n3, n3, p.even_capacities);
        auto owner = contiguous_owners(n2, n3);
        std::vector<PreferenceList> lecturer;
        if (cls == ProblemClass::SPAS)
            lecturer = ranked_lists(n3, [&](int l, int s) {
                return std::any_of(orders[s].begin(), orders[s].end(), [&](int j) { return owner[j] == l; });
            });
        return Instance::spa(cls, std::move(first), std::move(pcaps), std::move(owner), std::move(lcaps),
                             std::move(lecturer));
    }
    case ProblemClass::SR:
        break;
    }
    throw DomainError("unsupported problem class");
}

std::vector<Instance> generate(ProblemClass cls, const GeneratorParams& p)
{
    validate_params(cls, p);
    std::vector<Instance> out;
    out.reserve(p.num_instances);
    for (int i = 0; i < p.num_instances; ++i)
        out.push_back(generate_one(cls, p, static_cast<std::uint64_t>(i)));
    return out;
}

Instance experiment_family(int x, std::uint64_t seed)
{
    if (x < 1)
        throw DomainError("experiment size must be positive");
    GeneratorParams p;
    p.num_first = 5 * x;
    p.num_second = 7 * x;
    p.num_third = x;
    p.second_capacity = 10L * x;
    p.third_capacity = 7L * x;
    p.lower = p.upper = std::min(6, 7 * x);
    p.seed = seed;
    return generate_one(ProblemClass::SPAS, p, 0);
}

}  // namespace matchkit
