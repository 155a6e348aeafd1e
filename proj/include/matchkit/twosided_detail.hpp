#pragma once

// Helpers shared by the two-sided algorithm sources.

#include <vector>

#include "matchkit/model.hpp"

namespace matchkit::detail {

/// Tie groups restricted to mutually acceptable partners.
struct Lists {
    std::vector<std::vector<TieGroup>> resident;
    std::vector<std::vector<TieGroup>> hospital;
};

void require_two_sided(const Instance& inst, const char* what);
bool any_ties(const AgentGroup& g);
Lists acceptable_lists(const Instance& inst);
std::vector<int> flat(const std::vector<TieGroup>& groups);
/// Every resident-hospital pair is mutually acceptable.
bool complete_lists(const Instance& inst);

}  // namespace matchkit::detail
