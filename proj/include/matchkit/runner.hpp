#pragma once

// Runs catalog algorithms on instances and collects their outputs.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "matchkit/catalog.hpp"
#include "matchkit/graph.hpp"
#include "matchkit/model.hpp"

namespace matchkit {

struct RunOptions {
    std::uint64_t seed = 0;
    /// Upper bound on listed matchings for enumeration algorithms.
    std::size_t enumeration_cap = 10000;
};

struct RunOutput {
    std::vector<Matching> matchings;
    /// Set when the algorithm finished but found nothing to return, or when
    /// an enumeration was cut short.
    std::string note;
    /// Free-text result for algorithms that report pairs, counts or partitions.
    std::string text;
    std::vector<StructureGraph> graphs;
    bool truncated = false;
};

/// Enumeration and listing algorithms may return zero or many matchings;
/// the rest return at most one.
bool single_output(AlgorithmId id);

/// Throws InapplicableError when the algorithm does not fit the instance.
RunOutput run_algorithm(AlgorithmId id, const Instance& inst, const RunOptions& options = {});

}  // namespace matchkit
