#include "matchkit/structures.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "matchkit/onesided.hpp"
#include "matchkit/roommates.hpp"
#include "matchkit/twosided.hpp"

namespace matchkit {

namespace {

constexpr std::pair<StructureKind, std::string_view> kNames[] = {
    {StructureKind::sm_rotation_poset, "sm-rotation-poset"},
    {StructureKind::sm_rotation_digraph, "sm-rotation-digraph"},
    {StructureKind::sm_hasse, "sm-hasse"},
    {StructureKind::sr_rotation_poset, "sr-rotation-poset"},
    {StructureKind::cha_switching, "cha-switching"},
};

std::string rotation_id(int r) { return "r" + std::to_string(r + 1); }

std::string rotation_label(const Rotation& rot, char first, char second)
{
    std::string out;
    for (std::size_t i = 0; i < rot.men.size(); ++i) {
        if (i)
            out += ' ';
        out += '(';
        out += first + std::to_string(rot.men[i] + 1) + "," + second + std::to_string(rot.women[i] + 1) + ")";
    }
    return out;
}

std::string pairs_label(const Matching& m)
{
    std::string out = "{";
    for (auto [a, b] : m.pairs()) {
        if (out.size() > 1)
            out += ",";
        out += "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
    }
    return out + "}";
}

void require_sm(const Instance& inst, int max_side)
{
    if (!sm_shaped(inst))
        throw InapplicableError("stable marriage structures need a stable marriage instance");
    const int n = inst.first().size();
    for (Side side : {Side::first, Side::second})
        for (const auto& list : inst.group(side).prefs) {
            if (list.has_ties())
                throw InapplicableError("stable marriage structures need strict preferences");
            if (list.length() != n)
                throw InapplicableError("stable marriage structures need complete preference lists");
        }
    if (n > max_side)
        throw BudgetError("stable marriage structures are limited to " + std::to_string(max_side) + " agents per side");
}

StructureGraph rotation_graph(const RotationStructure& rs, std::string name,
                              const std::vector<std::pair<int, int>>& arcs)
{
    StructureGraph g;
    g.name = std::move(name);
    for (std::size_t r = 0; r < rs.rotations.size(); ++r)
        g.add_node(rotation_id(static_cast<int>(r)), rotation_label(rs.rotations[r], 'm', 'w'));
    auto sorted = arcs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto [a, b] : sorted)
        g.add_edge(rotation_id(a), rotation_id(b));
    return g;
}

bool eliminated(const Instance& inst, const Rotation& rot, const Matching& m)
{
    const int man = rot.men[0];
    return inst.rank(Side::first, man, m.partner(man)) > inst.rank(Side::first, man, rot.women[0]);
}

bool exposed(const Instance& inst, const RotationStructure& rs, int r, const Matching& m)
{
    const Rotation& rot = rs.rotations[r];
    for (std::size_t i = 0; i < rot.men.size(); ++i)
        if (m.partner(rot.men[i]) != rot.women[i])
            return false;
    for (int q : rs.predecessors[r])
        if (!eliminated(inst, rs.rotations[q], m))
            return false;
    return true;
}

StructureGraph hasse(const Instance& inst, const RotationStructure& rs)
{
    bool truncated = false;
    const auto all = enumerate_stable_sm(inst, EnumerationMethod::rotation_elimination, 1000000, &truncated);
    if (truncated)
        throw BudgetError("too many stable matchings for a Hasse diagram");
    std::map<Matching, int> index;
    StructureGraph g;
    g.name = "hasse diagram";
    for (std::size_t i = 0; i < all.size(); ++i) {
        index.emplace(all[i], static_cast<int>(i));
        g.add_node("M" + std::to_string(i + 1), pairs_label(all[i]));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t r = 0; r < rs.rotations.size(); ++r) {
            if (!exposed(inst, rs, static_cast<int>(r), all[i]))
                continue;
            const Rotation& rot = rs.rotations[r];
            std::vector<int> wife(inst.first().size());
            for (auto [m, w] : all[i].pairs())
                wife[m] = w;
            const std::size_t k = rot.men.size();
            for (std::size_t j = 0; j < k; ++j)
                wife[rot.men[j]] = rot.women[(j + 1) % k];
            std::vector<std::pair<int, int>> pairs;
            for (int m = 0; m < inst.first().size(); ++m)
                pairs.emplace_back(m, wife[m]);
            const Matching next(inst, pairs);
            g.add_edge("M" + std::to_string(i + 1), "M" + std::to_string(index.at(next) + 1),
                       rotation_id(static_cast<int>(r)));
        }
    return g;
}

StructureGraph sr_graph(const Instance& inst)
{
    if (!inst.roommates())
        throw InapplicableError("roommates rotation posets need a roommates instance");
    if (!irving_stable(inst))
        throw UnsolvableError("the roommates instance has no stable matching");
    const auto p = sr_rotation_poset(inst);
    StructureGraph g;
    g.name = "roommates rotation poset";
    for (std::size_t r = 0; r < p.rotations.size(); ++r) {
        const std::string dual = p.dual[r] == -1 ? "singular" : rotation_id(p.dual[r]);
        g.add_node(rotation_id(static_cast<int>(r)), rotation_label(p.rotations[r], 'a', 'a'), {{"dual", dual}});
    }
    auto arcs = p.poset;
    std::sort(arcs.begin(), arcs.end());
    for (auto [a, b] : arcs)
        g.add_edge(rotation_id(a), rotation_id(b));
    return g;
}

StructureGraph switching(const Instance& inst)
{
    if (!is_house_allocation(inst.problem_class()))
        throw InapplicableError("switching graphs need a house allocation instance");
    const auto ps = PopularStructure::build(inst);
    if (!ps)
        throw NoPopularMatchingError("the instance has no popular matching");
    return ps->switching_graph();
}

}  // namespace

std::string_view to_string(StructureKind k)
{
    for (auto [kind, name] : kNames)
        if (kind == k)
            return name;
    return "unknown";
}

StructureKind parse_structure_kind(std::string_view name)
{
    for (auto [kind, text] : kNames)
        if (text == name)
            return kind;
    throw DomainError("unknown structure kind: " + std::string(name));
}

StructureGraph structural_graph(const Instance& inst, StructureKind kind, int max_side)
{
    StructureGraph g;
    switch (kind) {
    case StructureKind::sm_rotation_poset:
    case StructureKind::sm_rotation_digraph:
    case StructureKind::sm_hasse: {
        require_sm(inst, max_side);
        const RotationStructure rs = sm_rotations(inst);
        if (kind == StructureKind::sm_rotation_poset)
            g = rotation_graph(rs, "rotation poset", rs.poset);
        else if (kind == StructureKind::sm_rotation_digraph)
            g = rotation_graph(rs, "rotation digraph", rs.digraph);
        else
            g = hasse(inst, rs);
        break;
    }
    case StructureKind::sr_rotation_poset: g = sr_graph(inst); break;
    case StructureKind::cha_switching: g = switching(inst); break;
    }
    g.check();
    return g;
}

}  // namespace matchkit
