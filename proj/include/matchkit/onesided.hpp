#pragma once

// House allocation (HA, CHA) algorithms. The profile-optimal solvers also
// accept student-project instances, where only student preferences count and
// lecturer capacities are enforced.

#include <cstdint>
#include <optional>
#include <vector>

#include "matchkit/graph.hpp"
#include "matchkit/model.hpp"

namespace matchkit {

/// Applicants in `order` each take the best house with room left; within a
/// tie the lowest-indexed house wins.
Matching serial_dictatorship(const Instance& inst, const std::vector<int>& order);
Matching random_serial_dictatorship(const Instance& inst, std::uint64_t seed);

enum class ProfileObjective { min_cost, rank_maximal, greedy, generous, greedy_generous };

/// rank_maximal ranges over all matchings; the others over maximum ones.
Matching profile_optimal(const Instance& inst, ProfileObjective objective);

Matching max_pareto_optimal(const Instance& inst);

/// A popular matching, or nullopt when none exists. Ties and capacities
/// are supported.
std::optional<Matching> find_popular(const Instance& inst);

/// Switching structure of a popular matching for tie-free instances.
/// Every applicant a has a first choice f(a) and a second post s(a) (the
/// best house not already claimed by enough first choices, or its own last
/// resort, encoded as house index -1 - a).
class PopularStructure {
public:
    /// Returns nullopt when the instance admits no popular matching.
    static std::optional<PopularStructure> build(const Instance& inst);

    const Matching& base() const { return base_; }
    const StructureGraph& switching_graph() const { return graph_; }

    /// Number of popular matchings; saturates at INT64_MAX.
    std::int64_t count() const;
    /// Pairs (applicant, house) that occur in some popular matching.
    std::vector<std::pair<int, int>> popular_pairs() const;
    /// Up to `cap` popular matchings; `truncated` reports whether more exist.
    std::vector<Matching> enumerate(std::size_t cap, bool* truncated = nullptr) const;
    Matching uniform(std::uint64_t seed) const;

    Matching rank_maximal() const;
    Matching generous_max_cardinality() const;
    Matching min_cost_max_cardinality() const;

private:
    struct Option {
        // Applicant moves: applicant -> new post (negative = last resort).
        std::vector<std::pair<int, int>> moves;
    };
    struct Component {
        std::vector<Option> options;  // options[0] keeps the base matching
    };

    Matching apply(const std::vector<int>& choice) const;
    Matching best(int objective) const;

    Instance inst_;
    Matching base_;
    std::vector<int> post_;  // applicant -> post in the base (negative = last resort)
    std::vector<Component> components_;
    StructureGraph graph_;
};

}  // namespace matchkit
