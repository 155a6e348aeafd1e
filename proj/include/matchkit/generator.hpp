#pragma once

#include <cstdint>
#include <vector>

#include "matchkit/model.hpp"
#include "matchkit/random.hpp"

namespace matchkit {

/// Counts, capacities and list shapes for one generated batch. Roles follow
/// the internal groups: `first` ranks `second`; hospitals and lecturers rank
/// the first-group agents that found them acceptable.
struct GeneratorParams {
    int num_first = 0;
    int num_second = 0;
    int num_third = 0;
    /// Totals split over the second and third groups; 0 means one each.
    long second_capacity = 0;
    long third_capacity = 0;
    /// Bounds on first-group list lengths; -1 means "all targets".
    int lower = -1;
    int upper = -1;
    /// Roommates only: list length = round(density * (n - 1)).
    double density = 1.0;
    double probability_of_ties = 0.0;
    /// Popularity ratio between the most and least popular target.
    double skewness = 1.0;
    /// Same, for the order in which hospitals and lecturers rank.
    double secondary_skewness = 1.0;
    bool even_capacities = true;
    int num_instances = 1;
    std::uint64_t seed = 0;
};

/// Throws DomainError describing the first invalid field.
void validate_params(ProblemClass cls, const GeneratorParams& p);

std::vector<Instance> generate(ProblemClass cls, const GeneratorParams& p);
/// The `index`-th instance of the batch, generated independently.
Instance generate_one(ProblemClass cls, const GeneratorParams& p, std::uint64_t index);

/// Linear popularity weights: `s` for the first target down to 1 for the last.
std::vector<double> popularity_weights(int targets, double s);
/// Weighted sampling without replacement, in draw order.
std::vector<int> sample_order(Rng& rng, const std::vector<double>& weights, int count);
/// Splits a sorted order into tie groups by merging each entry into its
/// predecessor's group with probability p.
PreferenceList with_ties(Rng& rng, const std::vector<int>& order, double p);
std::vector<int> split_capacity(Rng& rng, long total, int count, bool even);

/// Student-project family with 5x students, 7x projects and x lecturers.
Instance experiment_family(int x, std::uint64_t seed);

}  // namespace matchkit
