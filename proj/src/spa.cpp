#include "matchkit/spa.hpp"

#include <set>

#include "matchkit/onesided.hpp"

namespace matchkit {

Matching spa_profile_opt(const Instance& inst, SpaObjective objective)
{
    if (!is_spa(inst.problem_class()))
        throw InapplicableError("spa_profile_opt requires an SPA or SPA-S instance");
    switch (objective) {
    case SpaObjective::min_cost: return profile_optimal(inst, ProfileObjective::min_cost);
    case SpaObjective::greedy: return profile_optimal(inst, ProfileObjective::greedy);
    case SpaObjective::generous: return profile_optimal(inst, ProfileObjective::generous);
    }
    throw DomainError("unknown SPA objective");
}

namespace {

class SpaState {
public:
    explicit SpaState(const Instance& inst)
        : inst_(inst),
          students_(inst.first().size()),
          projects_(inst.second().size()),
          lecturers_(inst.third().size()),
          alive_(students_, std::vector<char>(projects_, 0)),
          list_(students_),
          assigned_(students_, -1),
          in_project_(projects_),
          lecturer_load_(lecturers_, 0)
    {
        for (int s = 0; s < students_; ++s)
            for (int p : inst.first().prefs[s].flattened())
                if (inst.acceptable(s, p)) {
                    list_[s].push_back(p);
                    alive_[s][p] = 1;
                }
    }

    Matching student_optimal()
    {
        std::set<int> free;
        for (int s = 0; s < students_; ++s)
            free.insert(s);
        while (!free.empty()) {
            const int s = *free.begin();
            free.erase(free.begin());
            const int p = first_alive(s);
            if (p == -1)
                continue;
            const int l = inst_.owner(p);
            assign(s, p);
            if (project_load(p) > project_cap(p)) {
                const int worst = worst_of(in_project_[p]);
                unassign(worst);
                free.insert(worst);
            } else if (lecturer_load_[l] > lecturer_cap(l)) {
                const int worst = worst_of(lecturer_students(l));
                unassign(worst);
                free.insert(worst);
            }
            if (project_load(p) == project_cap(p)) {
                const int worst = worst_of(in_project_[p]);
                for (int t : successors(l, worst))
                    alive_[t][p] = 0;
            }
            if (lecturer_load_[l] == lecturer_cap(l)) {
                const int worst = worst_of(lecturer_students(l));
                for (int t : successors(l, worst))
                    for (int q : inst_.projects_of(l))
                        alive_[t][q] = 0;
            }
        }
        return result();
    }

    Matching lecturer_optimal()
    {
        for (;;) {
            bool moved = false;
            for (int l = 0; l < lecturers_ && !moved; ++l) {
                if (lecturer_load_[l] >= lecturer_cap(l))
                    continue;
                for (int s : inst_.third().prefs[l].flattened()) {
                    const int p = offer_for(l, s);
                    if (p == -1)
                        continue;
                    if (assigned_[s] != -1)
                        unassign(s);
                    assign(s, p);
                    bool after = false;
                    for (int q : list_[s]) {
                        if (after)
                            alive_[s][q] = 0;
                        after = after || q == p;
                    }
                    moved = true;
                    break;
                }
            }
            if (!moved)
                return result();
        }
    }

private:
    int project_cap(int p) const { return inst_.second().capacity[p]; }
    int lecturer_cap(int l) const { return inst_.third().capacity[l]; }
    int project_load(int p) const { return static_cast<int>(in_project_[p].size()); }
    int lecturer_rank(int l, int s) const { return inst_.rank(Side::third, l, s); }

    int first_alive(int s) const
    {
        for (int p : list_[s])
            if (alive_[s][p])
                return p;
        return -1;
    }

    // First acceptable, under-subscribed project of l that s would move to.
    int offer_for(int l, int s) const
    {
        for (int p : list_[s]) {
            if (!alive_[s][p] || assigned_[s] == p)
                continue;
            if (inst_.owner(p) == l && project_load(p) < project_cap(p))
                return p;
        }
        return -1;
    }

    void assign(int s, int p)
    {
        assigned_[s] = p;
        in_project_[p].insert(s);
        ++lecturer_load_[inst_.owner(p)];
    }

    void unassign(int s)
    {
        const int p = assigned_[s];
        assigned_[s] = -1;
        in_project_[p].erase(s);
        --lecturer_load_[inst_.owner(p)];
    }

    std::vector<int> lecturer_students(int l) const
    {
        std::vector<int> out;
        for (int p : inst_.projects_of(l))
            out.insert(out.end(), in_project_[p].begin(), in_project_[p].end());
        return out;
    }

    template <class Range>
    int worst_of(const Range& students) const
    {
        int worst = -1;
        for (int s : students) {
            const int l = inst_.owner(assigned_[s]);
            if (worst == -1 || lecturer_rank(l, s) > lecturer_rank(l, worst))
                worst = s;
        }
        return worst;
    }

    // Students strictly after `s` on l's list.
    std::vector<int> successors(int l, int s) const
    {
        std::vector<int> out;
        const int r = lecturer_rank(l, s);
        for (int t : inst_.third().prefs[l].flattened())
            if (lecturer_rank(l, t) > r)
                out.push_back(t);
        return out;
    }

    Matching result() const
    {
        Matching m(inst_);
        for (int s = 0; s < students_; ++s)
            if (assigned_[s] != -1)
                m.add(s, assigned_[s]);
        return m;
    }

    const Instance& inst_;
    int students_, projects_, lecturers_;
    std::vector<std::vector<char>> alive_;
    std::vector<std::vector<int>> list_;
    std::vector<int> assigned_;
    std::vector<std::set<int>> in_project_;
    std::vector<int> lecturer_load_;
};

}  // namespace

Matching spa_s_stable(const Instance& inst, SpaOptimal optimal_for)
{
    if (inst.problem_class() != ProblemClass::SPAS || !inst.lecturer_prefs_present())
        throw InapplicableError("stable SPA matchings need lecturer preferences");
    for (Side side : {Side::first, Side::third})
        for (const auto& list : inst.group(side).prefs)
            if (list.has_ties())
                throw InapplicableError("stable SPA matchings need strict preferences");
    SpaState state(inst);
    return optimal_for == SpaOptimal::student ? state.student_optimal() : state.lecturer_optimal();
}

}  // namespace matchkit
