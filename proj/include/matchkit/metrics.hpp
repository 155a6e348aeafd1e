#pragma once

#include <span>
#include <string>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

/// counts[i] = number of group members assigned to a partner of rank i+1.
struct Profile {
    std::vector<int> counts;

    int assigned() const;
    long cost() const;
    int regret() const;
    Profile padded(std::size_t length) const;
    bool operator==(const Profile&) const = default;
};

struct GroupStats {
    Role role;
    Profile profile;
    long cost = 0;
    int regret = 0;
};

struct MatchingStats {
    int size = 0;
    std::vector<GroupStats> groups;
    Profile total_profile;
    long total_cost = 0;
    int total_regret = 0;

    const GroupStats* group(Role r) const;
};

/// Profiles count one entry per assignee, also for agents with capacity > 1.
/// Lecturer-side statistics are only produced on request.
MatchingStats compute_stats(const Instance& inst, const Matching& m, bool include_lecturers = false);

enum class ProfileOrder { rank_maximal, generous };
enum class Comparison { less, equal, greater };

/// `greater` means p is better than q under the order.
Comparison profile_compare(const Profile& p, const Profile& q, ProfileOrder order);

struct FieldSummary {
    double mean = 0;
    double min = 0;
    double max = 0;
};

struct GroupSummary {
    Role role;
    FieldSummary cost;
    FieldSummary regret;
};

struct BatchSummary {
    int count = 0;
    FieldSummary size;
    FieldSummary total_cost;
    FieldSummary total_regret;
    std::vector<GroupSummary> groups;
};

BatchSummary summarize_batch(std::span<const MatchingStats> results);

/// "(c1, c2, ...)" over the nonzero counts, and "(i1, i2, ...)" over their ranks.
std::string profile_amount_text(const Profile& p);
std::string profile_position_text(const Profile& p);

}  // namespace matchkit
