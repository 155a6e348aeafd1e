#include "matchkit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"
#include "matchkit/model.hpp"

namespace matchkit {

using json = nlohmann::ordered_json;

void StructureGraph::add_node(std::string id, std::string label,
                              std::vector<std::pair<std::string, std::string>> payload)
{
    nodes.push_back({std::move(id), std::move(label), std::move(payload)});
}

void StructureGraph::add_edge(std::string source, std::string target, std::string label)
{
    edges.push_back({std::move(source), std::move(target), std::move(label)});
}

void StructureGraph::check() const
{
    std::set<std::string> ids;
    for (const auto& n : nodes)
        if (!ids.insert(n.id).second)
            throw DomainError("duplicate graph node " + n.id);
    for (const auto& e : edges)
        if (!ids.count(e.source) || !ids.count(e.target))
            throw DomainError("edge " + e.source + " -> " + e.target + " has a missing endpoint");
}

bool natural_less(const std::string& a, const std::string& b)
{
    auto split = [](const std::string& s) {
        std::size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1])))
            --i;
        const std::string digits = s.substr(i);
        return std::make_pair(s.substr(0, i), digits.empty() || digits.size() > 18 ? -1L : std::stol(digits));
    };
    auto [pa, na] = split(a);
    auto [pb, nb] = split(b);
    if (pa != pb)
        return pa < pb;
    if (na != nb)
        return na < nb;
    return a < b;
}

namespace {

std::vector<GraphNode> sorted_nodes(const StructureGraph& g)
{
    auto nodes = g.nodes;
    std::stable_sort(nodes.begin(), nodes.end(),
                     [](const GraphNode& x, const GraphNode& y) { return natural_less(x.id, y.id); });
    return nodes;
}

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_graph_json(const StructureGraph& g)
{
    json j;
    j["name"] = g.name;
    j["directed"] = g.directed;
    j["nodes"] = json::array();
    for (const auto& n : sorted_nodes(g)) {
        json node = {{"id", n.id}, {"label", n.label}};
        if (!n.payload.empty()) {
            json payload = json::object();
            for (const auto& [k, v] : n.payload)
                payload[k] = v;
            node["payload"] = payload;
        }
        j["nodes"].push_back(node);
    }
    j["edges"] = json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"label", e.label}});
    return j.dump();
}

StructureGraph graph_from_json(const std::string& text)
{
    const json j = json::parse(text);
    StructureGraph g;
    g.name = j.at("name").get<std::string>();
    g.directed = j.at("directed").get<bool>();
    for (const auto& n : j.at("nodes")) {
        GraphNode node{n.at("id").get<std::string>(), n.at("label").get<std::string>(), {}};
        if (n.contains("payload"))
            for (const auto& [k, v] : n["payload"].items())
                node.payload.emplace_back(k, v.get<std::string>());
        g.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges"))
        g.add_edge(e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                   e.at("label").get<std::string>());
    return g;
}

std::string to_dot(const StructureGraph& g)
{
    const std::string arrow = g.directed ? " -> " : " -- ";
    std::string out = (g.directed ? "digraph " : "graph ") + quoted(g.name) + " {\n";
    for (const auto& n : sorted_nodes(g))
        out += "  " + quoted(n.id) + " [label=" + quoted(n.label) + "];\n";
    for (const auto& e : g.edges) {
        out += "  " + quoted(e.source) + arrow + quoted(e.target);
        if (!e.label.empty())
            out += " [label=" + quoted(e.label) + "]";
        out += ";\n";
    }
    return out + "}\n";
}

}  // namespace matchkit
