#ifndef GRAPHLIFT_STATE_GRAPH_HPP
#define GRAPHLIFT_STATE_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphlift/strips.hpp"

namespace graphlift {

struct LabeledEdge {
    int src = 0;    // node position (not raw id)
    int label = 0;  // index into LabeledStateGraph::labels
    int dst = 0;

    friend auto operator<=>(const LabeledEdge&, const LabeledEdge&) = default;
};

// Directed graph with schema-name edge labels. Nodes carry opaque external
// ids; everything else is positional. Parallel edges are allowed only with
// distinct labels (edges form a set).
struct LabeledStateGraph {
    std::vector<std::int64_t> node_ids;
    std::vector<std::string> labels;
    std::vector<LabeledEdge> edges;          // sorted, unique
    std::optional<int> root;                 // node position

    int num_nodes() const { return static_cast<int>(node_ids.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    int label_id(const std::string& name) const;
    int add_label(const std::string& name);

    // Sorts/dedups edges and checks invariants (endpoint range, label range,
    // no duplicate (src,label,dst), reachability from root when present).
    void canonicalize_and_validate();

    friend bool operator==(const LabeledStateGraph&, const LabeledStateGraph&) = default;
};

// Per-node out-edge index for traversals.
struct GraphAdjacency {
    explicit GraphAdjacency(const LabeledStateGraph& g);
    std::vector<int> offsets;  // size nodes+1
    std::vector<int> edge_ids; // indices into g.edges, grouped by src
};

struct ExpandResult {
    LabeledStateGraph graph;
    std::vector<State> states;  // state per node position
};

// Breadth-first expansion of the reachable state space, deduplicated by
// state value. Node ids are assigned in BFS order; root is node 0. Two ground
// actions of the same schema mapping s to the same s' collapse to one edge.
// Throws cap-exceeded when more than node_cap distinct states appear.
ExpandResult expand(const GroundedTask& task, int node_cap);

// Renumbers node ids by a seeded random permutation and drops any state
// information. The root is dropped unless keep_root is set.
LabeledStateGraph strip_to_blackbox(const LabeledStateGraph& g, std::uint64_t seed,
                                    bool keep_root = false);

// ---- serialization ----

std::string graph_to_json(const LabeledStateGraph& g);
LabeledStateGraph graph_from_json(const std::string& text);
std::string graph_to_dot(const LabeledStateGraph& g);

LabeledStateGraph load_graph_file(const std::string& path);
void save_graph_file(const LabeledStateGraph& g, const std::string& path);

}  // namespace graphlift

#endif
