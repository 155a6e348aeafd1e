#include "matchkit/model.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace matchkit {

std::string_view to_string(ProblemClass c)
{
    switch (c) {
    case ProblemClass::HR: return "HR";
    case ProblemClass::SM: return "SM";
    case ProblemClass::HA: return "HA";
    case ProblemClass::CHA: return "CHA";
    case ProblemClass::SR: return "SR";
    case ProblemClass::SPA: return "SPA";
    case ProblemClass::SPAS: return "SPAS";
    }
    return "?";
}

std::string_view to_string(Role r)
{
    switch (r) {
    case Role::resident: return "resident";
    case Role::hospital: return "hospital";
    case Role::applicant: return "applicant";
    case Role::house: return "house";
    case Role::roommate: return "roommate";
    case Role::student: return "student";
    case Role::project: return "project";
    case Role::lecturer: return "lecturer";
    }
    return "?";
}

ProblemClass parse_problem_class(std::string_view token)
{
    for (auto c : {ProblemClass::HR, ProblemClass::SM, ProblemClass::HA, ProblemClass::CHA,
                   ProblemClass::SR, ProblemClass::SPA, ProblemClass::SPAS})
        if (to_string(c) == token)
            return c;
    if (token == "SPA-S")
        return ProblemClass::SPAS;
    throw DomainError("unknown problem class '" + std::string(token) + "'");
}

bool is_two_sided(ProblemClass c) { return c == ProblemClass::HR || c == ProblemClass::SM; }
bool is_house_allocation(ProblemClass c) { return c == ProblemClass::HA || c == ProblemClass::CHA; }
bool is_spa(ProblemClass c) { return c == ProblemClass::SPA || c == ProblemClass::SPAS; }

// ---------------------------------------------------------------------------

PreferenceList::PreferenceList(std::vector<TieGroup> groups) : groups_(std::move(groups))
{
    for (const auto& g : groups_)
        if (g.empty())
            throw DomainError("empty tie group");
}

PreferenceList PreferenceList::strict(const std::vector<int>& order)
{
    std::vector<TieGroup> groups;
    groups.reserve(order.size());
    for (int x : order)
        groups.push_back({x});
    return PreferenceList(std::move(groups));
}

int PreferenceList::length() const
{
    int n = 0;
    for (const auto& g : groups_)
        n += static_cast<int>(g.size());
    return n;
}

bool PreferenceList::has_ties() const
{
    return std::any_of(groups_.begin(), groups_.end(), [](const TieGroup& g) { return g.size() > 1; });
}

std::vector<int> PreferenceList::flattened() const
{
    std::vector<int> out;
    for (const auto& g : groups_)
        out.insert(out.end(), g.begin(), g.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

AgentGroup make_group(Role role, std::vector<int> caps, std::vector<PreferenceList> prefs)
{
    AgentGroup g;
    g.role = role;
    g.capacity = std::move(caps);
    g.prefs = std::move(prefs);
    return g;
}

void check_lists(const std::vector<PreferenceList>& lists, int counterpart, std::string_view who,
                 bool forbid_self)
{
    for (std::size_t i = 0; i < lists.size(); ++i) {
        std::set<int> seen;
        for (int x : lists[i].flattened()) {
            if (x < 0 || x >= counterpart)
                throw DomainError(std::string(who) + " " + std::to_string(i + 1) +
                                  " lists unknown agent " + std::to_string(x + 1));
            if (forbid_self && x == static_cast<int>(i))
                throw DomainError(std::string(who) + " " + std::to_string(i + 1) + " lists itself");
            if (!seen.insert(x).second)
                throw DomainError(std::string(who) + " " + std::to_string(i + 1) +
                                  " lists agent " + std::to_string(x + 1) + " twice");
        }
    }
}

}  // namespace

Instance Instance::two_sided(ProblemClass cls, std::vector<PreferenceList> resident_prefs,
                             std::vector<int> hospital_caps, std::vector<PreferenceList> hospital_prefs)
{
    if (!is_two_sided(cls))
        throw DomainError("two_sided requires HR or SM");
    Instance inst;
    inst.class_ = cls;
    std::vector<int> ones(resident_prefs.size(), 1);
    inst.first_ = make_group(Role::resident, std::move(ones), std::move(resident_prefs));
    inst.second_ = make_group(Role::hospital, std::move(hospital_caps), std::move(hospital_prefs));
    inst.third_.role = Role::lecturer;
    inst.check_invariants();
    inst.build_ranks();
    return inst;
}

Instance Instance::house_allocation(ProblemClass cls, std::vector<PreferenceList> applicant_prefs,
                                    std::vector<int> house_caps)
{
    if (!is_house_allocation(cls))
        throw DomainError("house_allocation requires HA or CHA");
    Instance inst;
    inst.class_ = cls;
    std::vector<int> ones(applicant_prefs.size(), 1);
    inst.first_ = make_group(Role::applicant, std::move(ones), std::move(applicant_prefs));
    inst.second_ = make_group(Role::house, std::move(house_caps), {});
    inst.third_.role = Role::lecturer;
    inst.check_invariants();
    inst.build_ranks();
    return inst;
}

Instance Instance::roommates(std::vector<PreferenceList> prefs)
{
    Instance inst;
    inst.class_ = ProblemClass::SR;
    std::vector<int> ones(prefs.size(), 1);
    inst.first_ = make_group(Role::roommate, std::move(ones), std::move(prefs));
    inst.second_.role = Role::roommate;
    inst.third_.role = Role::lecturer;
    inst.check_invariants();
    inst.build_ranks();
    return inst;
}

Instance Instance::spa(ProblemClass cls, std::vector<PreferenceList> student_prefs,
                       std::vector<int> project_caps, std::vector<int> project_owner,
                       std::vector<int> lecturer_caps, std::vector<PreferenceList> lecturer_prefs)
{
    if (!is_spa(cls))
        throw DomainError("spa requires SPA or SPAS");
    Instance inst;
    inst.class_ = cls;
    std::vector<int> ones(student_prefs.size(), 1);
    inst.first_ = make_group(Role::student, std::move(ones), std::move(student_prefs));
    inst.second_ = make_group(Role::project, std::move(project_caps), {});
    if (lecturer_prefs.empty())
        lecturer_prefs.resize(lecturer_caps.size());
    inst.third_ = make_group(Role::lecturer, std::move(lecturer_caps), std::move(lecturer_prefs));
    inst.owner_ = std::move(project_owner);
    inst.check_invariants();
    inst.offered_.assign(inst.third_.size(), {});
    for (int p = 0; p < static_cast<int>(inst.owner_.size()); ++p)
        inst.offered_[inst.owner_[p]].push_back(p);
    inst.build_ranks();
    return inst;
}

void Instance::check_invariants() const
{
    auto positive = [](const std::vector<int>& caps, std::string_view who) {
        for (std::size_t i = 0; i < caps.size(); ++i)
            if (caps[i] < 1)
                throw DomainError(std::string(who) + " " + std::to_string(i + 1) +
                                  " has non-positive capacity");
    };
    switch (class_) {
    case ProblemClass::HR:
    case ProblemClass::SM:
        if (second_.prefs.size() != second_.capacity.size())
            throw DomainError("every hospital needs a preference list");
        positive(second_.capacity, "hospital");
        check_lists(first_.prefs, second_.size(), "resident", false);
        check_lists(second_.prefs, first_.size(), "hospital", false);
        if (class_ == ProblemClass::SM) {
            if (first_.size() != second_.size())
                throw DomainError("SM requires equal side sizes");
            for (int c : second_.capacity)
                if (c != 1)
                    throw DomainError("SM requires unit capacities");
        }
        break;
    case ProblemClass::HA:
    case ProblemClass::CHA:
        positive(second_.capacity, "house");
        check_lists(first_.prefs, second_.size(), "applicant", false);
        if (class_ == ProblemClass::HA)
            for (int c : second_.capacity)
                if (c != 1)
                    throw DomainError("HA requires unit house capacities");
        break;
    case ProblemClass::SR:
        check_lists(first_.prefs, first_.size(), "roommate", true);
        break;
    case ProblemClass::SPA:
    case ProblemClass::SPAS:
        positive(second_.capacity, "project");
        positive(third_.capacity, "lecturer");
        if (owner_.size() != second_.capacity.size())
            throw DomainError("every project needs a lecturer");
        for (std::size_t p = 0; p < owner_.size(); ++p)
            if (owner_[p] < 0 || owner_[p] >= third_.size())
                throw DomainError("project " + std::to_string(p + 1) + " has unknown lecturer");
        check_lists(first_.prefs, second_.size(), "student", false);
        check_lists(third_.prefs, first_.size(), "lecturer", false);
        break;
    }
}

void Instance::build_ranks()
{
    for (Side s : {Side::first, Side::second, Side::third}) {
        const auto& g = group(s);
        auto& table = rank_[static_cast<int>(s)];
        table.clear();
        if (!g.ranks())
            continue;
        const int width = size(counterpart(s));
        table.assign(g.size(), std::vector<int>(width, 0));
        for (int a = 0; a < g.size(); ++a) {
            const auto& groups = g.prefs[a].groups();
            for (std::size_t r = 0; r < groups.size(); ++r)
                for (int x : groups[r])
                    table[a][x] = static_cast<int>(r) + 1;
        }
    }
}

const AgentGroup& Instance::group(Side s) const
{
    switch (s) {
    case Side::first: return first_;
    case Side::second: return second_;
    case Side::third: return third_;
    }
    return first_;
}

Side Instance::counterpart(Side s) const
{
    if (s == Side::first)
        return roommates() ? Side::first : Side::second;
    return Side::first;
}

Side Instance::side_of(Role r) const
{
    if (r == first_.role)
        return Side::first;
    if (!roommates() && r == second_.role)
        return Side::second;
    if (is_spa(class_) && r == Role::lecturer)
        return Side::third;
    throw DomainError("role " + std::string(to_string(r)) + " does not occur in a " +
                      std::string(to_string(class_)) + " instance");
}

bool Instance::lecturer_prefs_present() const
{
    return std::any_of(third_.prefs.begin(), third_.prefs.end(),
                       [](const PreferenceList& l) { return !l.empty(); });
}

int Instance::rank(Side side, int agent, int partner) const
{
    if (side == Side::second && is_spa(class_))
        return rank(Side::third, owner_[agent], partner);
    const auto& table = rank_[static_cast<int>(side)];
    if (table.empty())
        return 0;
    return table[agent][partner];
}

int Instance::max_rank(Side side) const
{
    if (side == Side::second && is_spa(class_))
        side = Side::third;
    int r = 0;
    for (const auto& l : group(side).prefs)
        r = std::max(r, l.num_groups());
    return r;
}

bool Instance::acceptable(int a, int b) const
{
    if (rank(Side::first, a, b) == 0)
        return false;
    switch (class_) {
    case ProblemClass::SR: return rank(Side::first, b, a) > 0;
    case ProblemClass::HR:
    case ProblemClass::SM: return rank(Side::second, b, a) > 0;
    case ProblemClass::HA:
    case ProblemClass::CHA:
    case ProblemClass::SPA: return true;
    case ProblemClass::SPAS: return !lecturer_prefs_present() || rank(Side::third, owner_[b], a) > 0;
    }
    return false;
}

bool Instance::operator==(const Instance& o) const
{
    return class_ == o.class_ && first_ == o.first_ && second_ == o.second_ && third_ == o.third_ &&
           owner_ == o.owner_;
}

// ---------------------------------------------------------------------------

Matching::Matching(const Instance& inst)
    : roommates_(inst.roommates()),
      partner_(inst.first().size(), -1),
      assignees_(inst.roommates() ? 0 : inst.second().size())
{
}

Matching::Matching(const Instance& inst, const std::vector<std::pair<int, int>>& pairs) : Matching(inst)
{
    for (auto [a, b] : pairs)
        add(a, b);
}

void Matching::add(int a, int b)
{
    if (roommates_) {
        if (a == b)
            throw DomainError("agent cannot be matched to itself");
        if (a > b)
            std::swap(a, b);
        if (partner_.at(a) != -1 || partner_.at(b) != -1)
            throw DomainError("roommate already matched");
        partner_[a] = b;
        partner_[b] = a;
    } else {
        if (partner_.at(a) != -1)
            throw DomainError("agent " + std::to_string(a + 1) + " already matched");
        partner_[a] = b;
        auto& as = assignees_.at(b);
        as.insert(std::upper_bound(as.begin(), as.end(), a), a);
    }
    auto p = std::make_pair(a, b);
    pairs_.insert(std::upper_bound(pairs_.begin(), pairs_.end(), p), p);
}

void Matching::remove(int a, int b)
{
    if (roommates_ && a > b)
        std::swap(a, b);
    auto it = std::find(pairs_.begin(), pairs_.end(), std::make_pair(a, b));
    if (it == pairs_.end())
        throw DomainError("pair not in matching");
    pairs_.erase(it);
    partner_[a] = -1;
    if (roommates_) {
        partner_[b] = -1;
    } else {
        auto& as = assignees_[b];
        as.erase(std::find(as.begin(), as.end(), a));
    }
}

bool Matching::contains(int a, int b) const
{
    if (a < 0 || a >= static_cast<int>(partner_.size()))
        return false;
    return partner_[a] == b;
}

std::vector<int> lecturer_assignees(const Instance& inst, const Matching& m, int lecturer)
{
    std::vector<int> out;
    for (int p : inst.projects_of(lecturer))
        out.insert(out.end(), m.assignees(p).begin(), m.assignees(p).end());
    std::sort(out.begin(), out.end());
    return out;
}

void validate(const Instance& inst, const Matching& m)
{
    for (auto [a, b] : m.pairs())
        if (!inst.acceptable(a, b))
            throw DomainError("pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                              ") is not mutually acceptable");
    if (inst.roommates())
        return;
    for (int b = 0; b < inst.second().size(); ++b)
        if (static_cast<int>(m.assignees(b).size()) > inst.second().capacity[b])
            throw DomainError("agent " + std::to_string(b + 1) + " is over-subscribed");
    if (is_spa(inst.problem_class()))
        for (int l = 0; l < inst.third().size(); ++l)
            if (static_cast<int>(lecturer_assignees(inst, m, l).size()) > inst.third().capacity[l])
                throw DomainError("lecturer " + std::to_string(l + 1) + " is over-subscribed");
}

bool is_valid(const Instance& inst, const Matching& m)
{
    try {
        validate(inst, m);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

namespace {

void check_index(const Instance& inst, Side side, AgentId id)
{
    if (id.index < 1 || id.index > inst.size(side))
        throw DomainError("unknown " + std::string(to_string(id.role)) + " " + std::to_string(id.index));
}

bool better(int candidate, int current, bool strict)
{
    return strict ? candidate < current : candidate <= current;
}

// Would a unit-capacity agent `a` (side first) improve by taking `b`?
bool unit_improves(const Instance& inst, const Matching& m, int a, int b, bool strict)
{
    int cur = m.partner(a);
    if (cur == -1)
        return true;
    return better(inst.rank(Side::first, a, b), inst.rank(Side::first, a, cur), strict);
}

int worst_rank(const Instance& inst, Side side, int agent, const std::vector<int>& assigned)
{
    int w = 0;
    for (int x : assigned)
        w = std::max(w, inst.rank(side, agent, x));
    return w;
}

bool hospital_improves(const Instance& inst, const Matching& m, int h, int r, bool strict)
{
    const auto& as = m.assignees(h);
    if (static_cast<int>(as.size()) < inst.second().capacity[h])
        return true;
    return better(inst.rank(Side::second, h, r), worst_rank(inst, Side::second, h, as), strict);
}

bool lecturer_side_improves(const Instance& inst, const Matching& m, int s, int p, bool strict)
{
    const int l = inst.owner(p);
    const auto& in_p = m.assignees(p);
    const auto in_l = lecturer_assignees(inst, m, l);
    const bool p_under = static_cast<int>(in_p.size()) < inst.second().capacity[p];
    const bool l_under = static_cast<int>(in_l.size()) < inst.third().capacity[l];
    const int rs = inst.rank(Side::third, l, s);
    if (p_under && l_under)
        return true;
    if (p_under) {
        if (std::find(in_l.begin(), in_l.end(), s) != in_l.end())
            return true;
        return better(rs, worst_rank(inst, Side::third, l, in_l), strict);
    }
    return better(rs, worst_rank(inst, Side::third, l, in_p), strict);
}

bool combine(bool strict_a, bool weak_a, bool strict_b, bool weak_b, Criterion c)
{
    switch (c) {
    case Criterion::weak: return strict_a && strict_b;
    case Criterion::strong: return (strict_a && weak_b) || (weak_a && strict_b);
    case Criterion::super: return weak_a && weak_b;
    }
    return false;
}

}  // namespace

bool blocks(const Instance& inst, const Matching& m, int a, int b, Criterion c)
{
    const auto cls = inst.problem_class();
    if (is_house_allocation(cls))
        throw InapplicableError("stability is undefined without two-sided preferences");
    if (cls == ProblemClass::SPA || (cls == ProblemClass::SPAS && !inst.lecturer_prefs_present()))
        throw InapplicableError("stability needs lecturer preference lists");
    if (!inst.acceptable(a, b))
        throw DomainError("pair is not mutually acceptable");
    if (m.contains(a, b))
        return false;
    bool sa = unit_improves(inst, m, a, b, true);
    bool wa = unit_improves(inst, m, a, b, false);
    bool sb = false, wb = false;
    if (inst.roommates()) {
        sb = unit_improves(inst, m, b, a, true);
        wb = unit_improves(inst, m, b, a, false);
    } else if (is_two_sided(cls)) {
        sb = hospital_improves(inst, m, b, a, true);
        wb = hospital_improves(inst, m, b, a, false);
    } else {
        sb = lecturer_side_improves(inst, m, a, b, true);
        wb = lecturer_side_improves(inst, m, a, b, false);
    }
    return combine(sa, wa, sb, wb, c);
}

bool is_blocking_pair(const Instance& inst, const Matching& m, AgentId a, AgentId b, Criterion c)
{
    Side sa = inst.side_of(a.role);
    Side sb = inst.side_of(b.role);
    if (sa != Side::first)
        std::swap(a, b), std::swap(sa, sb);
    if (sa != Side::first || sb != inst.counterpart(Side::first))
        throw DomainError("blocking pairs join an agent with a counterpart");
    check_index(inst, sa, a);
    check_index(inst, sb, b);
    return blocks(inst, m, a.index - 1, b.index - 1, c);
}

std::vector<std::pair<int, int>> acceptable_pairs(const Instance& inst)
{
    std::vector<std::pair<int, int>> out;
    const int n = inst.first().size();
    if (inst.roommates()) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (inst.acceptable(a, b))
                    out.emplace_back(a, b);
        return out;
    }
    for (int a = 0; a < n; ++a)
        for (int b : inst.first().prefs[a].flattened())
            if (inst.acceptable(a, b))
                out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_stable(const Instance& inst, const Matching& m, Criterion c)
{
    for (auto [a, b] : acceptable_pairs(inst))
        if (blocks(inst, m, a, b, c))
            return false;
    return true;
}

std::optional<int> rank_of(const Instance& inst, AgentId agent, AgentId partner)
{
    Side s = inst.side_of(agent.role);
    check_index(inst, s, agent);
    Side ps = inst.side_of(partner.role);
    if (ps != inst.counterpart(s))
        throw DomainError("partner role does not match the agent's counterpart");
    check_index(inst, ps, partner);
    bool has_list = inst.group(s).ranks() || (s == Side::second && is_spa(inst.problem_class()));
    if (!has_list)
        throw DomainError(std::string(to_string(agent.role)) + " agents have no preference lists");
    int r = inst.rank(s, agent.index - 1, partner.index - 1);
    if (r == 0)
        return std::nullopt;
    return r;
}

Subscription subscription_state(const Instance& inst, const Matching& m, AgentId agent)
{
    Side s = inst.side_of(agent.role);
    check_index(inst, s, agent);
    const int i = agent.index - 1;
    int load = 0;
    int cap = 1;
    if (s == Side::first) {
        load = m.partner(i) == -1 ? 0 : 1;
    } else if (s == Side::second) {
        load = static_cast<int>(m.assignees(i).size());
        cap = inst.second().capacity[i];
    } else {
        load = static_cast<int>(lecturer_assignees(inst, m, i).size());
        cap = inst.third().capacity[i];
    }
    if (load == 0)
        return Subscription::unassigned;
    if (load > cap)
        return Subscription::over_subscribed;
    if (load == cap)
        return Subscription::full;
    return Subscription::under_subscribed;
}

}  // namespace matchkit
