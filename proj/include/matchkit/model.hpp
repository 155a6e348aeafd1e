#pragma once

// Agents, tie-aware preference lists, instances and matchings for the five
// matching-under-preferences problem classes (HR/SM, HA/CHA, SR, SPA/SPA-S).
//
// Internally every agent is a 0-based index inside one of up to three
// groups:
//   first  - residents / applicants / roommates / students (capacity 1)
//   second - hospitals / houses / projects (empty for SR)
//   third  - lecturers (SPA only)
// AgentId carries the 1-based index used on the wire and in text files.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace matchkit {

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an algorithm is asked to run on an instance it does not support.
class InapplicableError : public DomainError {
public:
    using DomainError::DomainError;
};

class BudgetError : public DomainError {
public:
    using DomainError::DomainError;
};

enum class ProblemClass { HR, SM, HA, CHA, SR, SPA, SPAS };
enum class Role { resident, hospital, applicant, house, roommate, student, project, lecturer };
enum class Side { first, second, third };
enum class Criterion { weak, strong, super };
enum class Subscription { unassigned, under_subscribed, full, over_subscribed };

std::string_view to_string(ProblemClass c);
std::string_view to_string(Role r);
ProblemClass parse_problem_class(std::string_view token);

bool is_two_sided(ProblemClass c);     // HR, SM
bool is_house_allocation(ProblemClass c);  // HA, CHA
bool is_spa(ProblemClass c);           // SPA, SPAS

struct AgentId {
    Role role;
    int index;  // 1-based
    auto operator<=>(const AgentId&) const = default;
};

using TieGroup = std::vector<int>;

/// Ordered sequence of tie groups over 0-based counterpart indices.
class PreferenceList {
public:
    PreferenceList() = default;
    explicit PreferenceList(std::vector<TieGroup> groups);
    static PreferenceList strict(const std::vector<int>& order);

    const std::vector<TieGroup>& groups() const { return groups_; }
    bool empty() const { return groups_.empty(); }
    int num_groups() const { return static_cast<int>(groups_.size()); }
    int length() const;
    bool has_ties() const;
    std::vector<int> flattened() const;

    bool operator==(const PreferenceList&) const = default;

private:
    std::vector<TieGroup> groups_;
};

struct AgentGroup {
    Role role = Role::resident;
    std::vector<int> capacity;
    /// One list per agent, or empty when the group has no preferences.
    std::vector<PreferenceList> prefs;

    int size() const { return static_cast<int>(capacity.size()); }
    bool ranks() const { return !prefs.empty(); }
    bool operator==(const AgentGroup&) const = default;
};

class Instance {
public:
    Instance() = default;

    static Instance two_sided(ProblemClass cls, std::vector<PreferenceList> resident_prefs,
                              std::vector<int> hospital_caps,
                              std::vector<PreferenceList> hospital_prefs);
    static Instance house_allocation(ProblemClass cls, std::vector<PreferenceList> applicant_prefs,
                                     std::vector<int> house_caps);
    static Instance roommates(std::vector<PreferenceList> prefs);
    /// Lecturer lists may all be empty (plain SPA).
    static Instance spa(ProblemClass cls, std::vector<PreferenceList> student_prefs,
                        std::vector<int> project_caps, std::vector<int> project_owner,
                        std::vector<int> lecturer_caps,
                        std::vector<PreferenceList> lecturer_prefs);

    ProblemClass problem_class() const { return class_; }
    bool roommates() const { return class_ == ProblemClass::SR; }

    const AgentGroup& group(Side s) const;
    const AgentGroup& first() const { return first_; }
    const AgentGroup& second() const { return second_; }
    const AgentGroup& third() const { return third_; }
    int size(Side s) const { return group(s).size(); }

    int owner(int project) const { return owner_.at(project); }
    const std::vector<int>& owners() const { return owner_; }
    const std::vector<int>& projects_of(int lecturer) const { return offered_.at(lecturer); }
    /// SPA-S with at least one nonempty lecturer list.
    bool lecturer_prefs_present() const;

    /// Tie-group rank (1-based) of `partner` in the list of `agent`, 0 when
    /// unacceptable or when the group keeps no list. Project ranks are
    /// inherited from the owning lecturer.
    int rank(Side side, int agent, int partner) const;
    /// Number of tie groups in the longest list of the side.
    int max_rank(Side side) const;

    /// Mutual acceptability of first-group `a` with second-group `b`
    /// (for SR: roommates a and b).
    bool acceptable(int a, int b) const;

    Side counterpart(Side s) const;
    Side side_of(Role r) const;

    bool operator==(const Instance& o) const;

private:
    void build_ranks();
    void check_invariants() const;

    ProblemClass class_ = ProblemClass::SR;
    AgentGroup first_;
    AgentGroup second_;
    AgentGroup third_;
    std::vector<int> owner_;
    std::vector<std::vector<int>> offered_;
    // rank_[side][agent][partner]
    std::vector<std::vector<int>> rank_[3];
};

/// Capacity-respecting set of pairs. Pairs are (first, second) for the
/// bipartite classes and (a, b) with a < b for SR.
class Matching {
public:
    Matching() = default;
    explicit Matching(const Instance& inst);
    Matching(const Instance& inst, const std::vector<std::pair<int, int>>& pairs);

    void add(int a, int b);
    void remove(int a, int b);
    bool contains(int a, int b) const;

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    bool empty() const { return pairs_.empty(); }

    /// Partner of a first-group agent (or roommate), -1 when unmatched.
    int partner(int a) const { return partner_.at(a); }
    const std::vector<int>& assignees(int b) const { return assignees_.at(b); }

    bool operator==(const Matching& o) const { return pairs_ == o.pairs_; }
    auto operator<=>(const Matching& o) const { return pairs_ <=> o.pairs_; }

private:
    bool roommates_ = false;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> partner_;
    std::vector<std::vector<int>> assignees_;
};

/// Students assigned to a lecturer's projects.
std::vector<int> lecturer_assignees(const Instance& inst, const Matching& m, int lecturer);

/// Throws DomainError when capacity or acceptability is violated.
void validate(const Instance& inst, const Matching& m);
bool is_valid(const Instance& inst, const Matching& m);

std::optional<int> rank_of(const Instance& inst, AgentId agent, AgentId partner);
Subscription subscription_state(const Instance& inst, const Matching& m, AgentId agent);

/// Index-level blocking test: `a` is first-group, `b` second-group (SR: two
/// roommates). Pair must be mutually acceptable.
bool blocks(const Instance& inst, const Matching& m, int a, int b, Criterion c);
bool is_blocking_pair(const Instance& inst, const Matching& m, AgentId a, AgentId b, Criterion c);
bool is_stable(const Instance& inst, const Matching& m, Criterion c = Criterion::weak);

/// All mutually acceptable (first, second) pairs, or (a, b) a < b for SR.
std::vector<std::pair<int, int>> acceptable_pairs(const Instance& inst);

}  // namespace matchkit
