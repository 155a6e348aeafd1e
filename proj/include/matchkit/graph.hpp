#pragma once

#include <string>
#include <utility>
#include <vector>

namespace matchkit {

struct GraphNode {
    std::string id;
    std::string label;
    /// Extra key/value data shown alongside the node.
    std::vector<std::pair<std::string, std::string>> payload;
    bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
    std::string source;
    std::string target;
    std::string label;
    bool operator==(const GraphEdge&) const = default;
};

struct StructureGraph {
    std::string name;
    bool directed = true;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;

    void add_node(std::string id, std::string label,
                  std::vector<std::pair<std::string, std::string>> payload = {});
    void add_edge(std::string source, std::string target, std::string label = "");
    /// Throws DomainError on duplicate ids or dangling edge endpoints.
    void check() const;
    bool operator==(const StructureGraph&) const = default;
};

/// Orders ids by their text prefix, then numerically by any trailing digits.
bool natural_less(const std::string& a, const std::string& b);

std::string to_graph_json(const StructureGraph& g);
StructureGraph graph_from_json(const std::string& text);
std::string to_dot(const StructureGraph& g);

}  // namespace matchkit
