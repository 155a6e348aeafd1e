#pragma once

#include <utility>
#include <vector>

namespace matchkit {

/// Min-cost flow whose arc costs are integer vectors compared
/// lexicographically. Successive shortest paths (Bellman-Ford with a queue)
/// keep the flow optimal for its value, so augmenting while the cheapest
/// path is negative yields a minimum-cost flow of unconstrained value.
class VectorCostFlow {
public:
    VectorCostFlow(int nodes, int dim);

    /// Returns an arc handle for flow().
    int add_arc(int from, int to, int capacity, std::vector<long> cost);
    /// Augments from s to t while the cheapest residual path has negative
    /// cost. Returns the total flow sent.
    int run(int s, int t);
    int flow(int arc) const;

private:
    struct Arc {
        int to;
        int cap;
        int rev;
    };

    const long* cost_of(int arc) const { return &costs_[static_cast<std::size_t>(arc) * dim_]; }

    int dim_;
    std::vector<std::vector<int>> out_;
    std::vector<Arc> arcs_;
    std::vector<long> costs_;
    std::vector<int> original_cap_;
};

/// Bipartite graph with capacities on the right-hand side.
struct BipartiteGraph {
    int left = 0;
    std::vector<std::vector<int>> adj;
    std::vector<int> capacity;
};

/// Maximum matching by repeated augmenting paths, extending `initial`
/// (left -> right, -1 when free). Neighbours are tried in adjacency order.
std::vector<int> max_bipartite_matching(const BipartiteGraph& g, std::vector<int> initial = {});

/// Maximum-weight closure: a subset S of nodes such that for every arc
/// (a, b), a in S implies b in S, maximising the total weight. Solved as a
/// minimum cut; ties resolve to the smallest optimal set.
std::vector<bool> max_weight_closure(const std::vector<long>& weight,
                                     const std::vector<std::pair<int, int>>& implies);

}  // namespace matchkit
