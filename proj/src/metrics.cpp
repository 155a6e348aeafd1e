#include "matchkit/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace matchkit {

int Profile::assigned() const { return std::accumulate(counts.begin(), counts.end(), 0); }

long Profile::cost() const
{
    long c = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        c += static_cast<long>(i + 1) * counts[i];
    return c;
}

int Profile::regret() const
{
    for (std::size_t i = counts.size(); i > 0; --i)
        if (counts[i - 1] > 0)
            return static_cast<int>(i);
    return 0;
}

Profile Profile::padded(std::size_t length) const
{
    Profile p = *this;
    if (p.counts.size() < length)
        p.counts.resize(length, 0);
    return p;
}

const GroupStats* MatchingStats::group(Role r) const
{
    for (const auto& g : groups)
        if (g.role == r)
            return &g;
    return nullptr;
}

namespace {

void bump(Profile& p, int rank)
{
    if (rank <= 0)
        return;
    if (static_cast<int>(p.counts.size()) < rank)
        p.counts.resize(rank, 0);
    ++p.counts[rank - 1];
}

GroupStats finish(Role role, Profile p, int length)
{
    p = p.padded(length);
    return GroupStats{role, p, p.cost(), p.regret()};
}

}  // namespace

MatchingStats compute_stats(const Instance& inst, const Matching& m, bool include_lecturers)
{
    MatchingStats st;
    st.size = m.size();
    const auto cls = inst.problem_class();

    Profile first;
    for (int a = 0; a < inst.first().size(); ++a)
        if (int b = m.partner(a); b != -1)
            bump(first, inst.rank(Side::first, a, b));
    st.groups.push_back(finish(inst.first().role, first, inst.max_rank(Side::first)));

    if (is_two_sided(cls)) {
        Profile second;
        for (int h = 0; h < inst.second().size(); ++h)
            for (int r : m.assignees(h))
                bump(second, inst.rank(Side::second, h, r));
        st.groups.push_back(finish(Role::hospital, second, inst.max_rank(Side::second)));
    } else if (is_spa(cls) && include_lecturers && inst.lecturer_prefs_present()) {
        Profile third;
        for (int l = 0; l < inst.third().size(); ++l)
            for (int s : lecturer_assignees(inst, m, l))
                bump(third, inst.rank(Side::third, l, s));
        st.groups.push_back(finish(Role::lecturer, third, inst.max_rank(Side::third)));
    }

    std::size_t len = 0;
    for (const auto& g : st.groups)
        len = std::max(len, g.profile.counts.size());
    st.total_profile.counts.assign(len, 0);
    for (const auto& g : st.groups) {
        for (std::size_t i = 0; i < g.profile.counts.size(); ++i)
            st.total_profile.counts[i] += g.profile.counts[i];
        st.total_cost += g.cost;
        st.total_regret = std::max(st.total_regret, g.regret);
    }
    return st;
}

Comparison profile_compare(const Profile& p, const Profile& q, ProfileOrder order)
{
    const std::size_t len = std::max(p.counts.size(), q.counts.size());
    const Profile a = p.padded(len);
    const Profile b = q.padded(len);
    if (order == ProfileOrder::rank_maximal) {
        for (std::size_t i = 0; i < len; ++i)
            if (a.counts[i] != b.counts[i])
                return a.counts[i] > b.counts[i] ? Comparison::greater : Comparison::less;
    } else {
        for (std::size_t i = len; i > 0; --i)
            if (a.counts[i - 1] != b.counts[i - 1])
                return a.counts[i - 1] < b.counts[i - 1] ? Comparison::greater : Comparison::less;
    }
    return Comparison::equal;
}

namespace {

class Accumulator {
public:
    void add(double v)
    {
        sum_ += v;
        min_ = std::min(min_, v);
        max_ = std::max(max_, v);
        ++n_;
    }
    FieldSummary result() const { return {sum_ / n_, min_, max_}; }

private:
    double sum_ = 0;
    double min_ = std::numeric_limits<double>::infinity();
    double max_ = -std::numeric_limits<double>::infinity();
    int n_ = 0;
};

}  // namespace

BatchSummary summarize_batch(std::span<const MatchingStats> results)
{
    if (results.empty())
        throw DomainError("cannot summarise an empty batch");
    Accumulator size, cost, regret;
    std::vector<Accumulator> gcost(results[0].groups.size()), gregret(results[0].groups.size());
    for (const auto& r : results) {
        if (r.groups.size() != gcost.size())
            throw DomainError("batch mixes instances with different agent groups");
        size.add(r.size);
        cost.add(static_cast<double>(r.total_cost));
        regret.add(r.total_regret);
        for (std::size_t g = 0; g < r.groups.size(); ++g) {
            if (r.groups[g].role != results[0].groups[g].role)
                throw DomainError("batch mixes problem classes");
            gcost[g].add(static_cast<double>(r.groups[g].cost));
            gregret[g].add(r.groups[g].regret);
        }
    }
    BatchSummary s;
    s.count = static_cast<int>(results.size());
    s.size = size.result();
    s.total_cost = cost.result();
    s.total_regret = regret.result();
    for (std::size_t g = 0; g < gcost.size(); ++g)
        s.groups.push_back({results[0].groups[g].role, gcost[g].result(), gregret[g].result()});
    return s;
}

namespace {

std::string parenthesized(const std::vector<int>& xs)
{
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(xs[i]);
    }
    return out + ")";
}

}  // namespace

std::string profile_amount_text(const Profile& p)
{
    std::vector<int> xs;
    for (int c : p.counts)
        if (c > 0)
            xs.push_back(c);
    return parenthesized(xs);
}

std::string profile_position_text(const Profile& p)
{
    std::vector<int> xs;
    for (std::size_t i = 0; i < p.counts.size(); ++i)
        if (p.counts[i] > 0)
            xs.push_back(static_cast<int>(i + 1));
    return parenthesized(xs);
}

}  // namespace matchkit
