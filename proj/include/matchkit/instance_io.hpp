#pragma once

// Text instance formats.
//
//   SR       n / one line of partner ids per agent (no id prefix)
//   HR, SM   "n1 n2" / n1 lines "i: prefs" / n2 lines "j: cap: prefs"
//   HA, CHA  "n1 n2" / n1 lines "i: prefs" / n2 lines "j: cap"
//   SPA(S)   "n1 n2 n3" / students "i: prefs" / lecturers "k: cap: prefs" /
//            projects "j: cap: lecturer"
//
// A parenthesised group "(a b)" is a tie. Lines whose first non-blank
// character is '#' are comments.

#include <string>
#include <string_view>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

class ParseError : public DomainError {
public:
    enum class Kind {
        empty_instance,
        count_mismatch,
        non_numeric,
        unbalanced_parentheses,
        dangling_reference,
        duplicate_id,
        non_positive_capacity,
        malformed_line,
        invalid_instance,
    };

    ParseError(Kind kind, int line, const std::string& what);

    Kind kind() const { return kind_; }
    /// 1-based source line, 0 when the error concerns the whole instance.
    int line() const { return line_; }

private:
    Kind kind_;
    int line_;
};

Instance parse_instance(ProblemClass cls, std::string_view text);
std::string serialize_instance(const Instance& inst);

struct RoleProperties {
    Role role;
    int count = 0;
    long total_capacity = 0;
    bool has_lists = false;
    bool ties = false;
    bool complete = false;
};

struct InstanceProperties {
    ProblemClass problem_class = ProblemClass::SR;
    std::vector<RoleProperties> roles;
    bool ties_present = false;
    bool sm_detected = false;
    bool unit_capacities = true;
    bool lecturer_lists_present = false;

    const RoleProperties& role(Role r) const;
    bool ties(Role r) const { return role(r).ties; }
    bool complete(Role r) const { return role(r).complete; }
};

InstanceProperties classify(const Instance& inst);

}  // namespace matchkit
