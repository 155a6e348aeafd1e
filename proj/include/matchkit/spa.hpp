#pragma once

// Student-project allocation: profile-optimal matchings over student
// preferences and the two extreme stable matchings of SPA-S.

#include "matchkit/model.hpp"

namespace matchkit {

enum class SpaObjective { min_cost, greedy, generous };

/// Maximum matching optimal for the student profile. Project and lecturer
/// capacities both hold; lecturer preferences play no part.
Matching spa_profile_opt(const Instance& inst, SpaObjective objective);

enum class SpaOptimal { student, lecturer };

/// Student- or lecturer-optimal stable matching. Requires SPA-S with
/// lecturer preferences and no ties.
Matching spa_s_stable(const Instance& inst, SpaOptimal optimal_for);

}  // namespace matchkit
