#include "graphlift/state_graph.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace graphlift {

int LabeledStateGraph::label_id(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return static_cast<int>(i);
    return -1;
}

int LabeledStateGraph::add_label(const std::string& name) {
    int id = label_id(name);
    if (id >= 0) return id;
    labels.push_back(name);
    return static_cast<int>(labels.size()) - 1;
}

void LabeledStateGraph::canonicalize_and_validate() {
    const int n = num_nodes();
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw invalid_input("duplicate edge (same src, label, dst)");
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw invalid_input("edge endpoint out of range");
        if (e.label < 0 || e.label >= static_cast<int>(labels.size()))
            throw invalid_input("edge label out of range");
    }
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (labels[i] == labels[j]) throw invalid_input("duplicate label name");
    {
        std::vector<std::int64_t> ids = node_ids;
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw invalid_input("duplicate node id");
    }
    if (root) {
        if (*root < 0 || *root >= n) throw invalid_input("root out of range");
        // every node must be reachable from the root
        GraphAdjacency adj(*this);
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::deque<int> q{*root};
        seen[static_cast<std::size_t>(*root)] = true;
        int count = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int ei = adj.offsets[static_cast<std::size_t>(u)];
                 ei < adj.offsets[static_cast<std::size_t>(u) + 1]; ++ei) {
                int v = edges[static_cast<std::size_t>(adj.edge_ids[static_cast<std::size_t>(ei)])].dst;
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    ++count;
                    q.push_back(v);
                }
            }
        }
        if (count != n) throw invalid_input("node unreachable from root");
    }
}

GraphAdjacency::GraphAdjacency(const LabeledStateGraph& g) {
    const int n = g.num_nodes();
    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& e : g.edges) ++offsets[static_cast<std::size_t>(e.src) + 1];
    for (int i = 0; i < n; ++i) offsets[static_cast<std::size_t>(i) + 1] += offsets[static_cast<std::size_t>(i)];
    edge_ids.resize(g.edges.size());
    std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t ei = 0; ei < g.edges.size(); ++ei)
        edge_ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(g.edges[ei].src)]++)] =
            static_cast<int>(ei);
}

ExpandResult expand(const GroundedTask& task, int node_cap) {
    if (node_cap <= 0) throw invalid_input("node cap must be positive");
    ExpandResult res;
    auto& g = res.graph;
    for (const auto& s : task.domain().schemas) g.add_label(s.name);

    std::unordered_map<State, int, BitVecHash> index;
    std::deque<int> frontier;

    State init = task.initial_state();
    index.emplace(init, 0);
    res.states.push_back(init);
    g.node_ids.push_back(0);
    frontier.push_back(0);

    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop_front();
        State s = res.states[static_cast<std::size_t>(u)];
        for (const auto& a : task.actions()) {
            if (!task.applicable(s, a)) continue;
            State t = task.apply(s, a);
            auto [it, inserted] = index.emplace(t, static_cast<int>(res.states.size()));
            if (inserted) {
                if (static_cast<int>(res.states.size()) >= node_cap)
                    throw cap_exceeded("node cap " + std::to_string(node_cap) +
                                       " exceeded; frontier size " + std::to_string(frontier.size()));
                res.states.push_back(std::move(t));
                g.node_ids.push_back(static_cast<std::int64_t>(res.states.size()) - 1);
                frontier.push_back(it->second);
            }
            g.edges.push_back(LabeledEdge{u, a.schema, it->second});
        }
    }
    // Labels were added in schema order, so edge.label == schema id.
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    g.root = 0;
    g.canonicalize_and_validate();
    return res;
}

LabeledStateGraph strip_to_blackbox(const LabeledStateGraph& g, std::uint64_t seed, bool keep_root) {
    const int n = g.num_nodes();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);
    // perm[old] = new position
    LabeledStateGraph out;
    out.labels = g.labels;
    out.node_ids.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.node_ids[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = perm[static_cast<std::size_t>(i)];
    out.edges.reserve(g.edges.size());
    for (const auto& e : g.edges)
        out.edges.push_back(LabeledEdge{perm[static_cast<std::size_t>(e.src)], e.label,
                                        perm[static_cast<std::size_t>(e.dst)]});
    if (keep_root && g.root) out.root = perm[static_cast<std::size_t>(*g.root)];
    out.canonicalize_and_validate();
    return out;
}

std::string graph_to_json(const LabeledStateGraph& g) {
    nlohmann::json j;
    j["nodes"] = g.node_ids;
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges) {
        edges.push_back({{"src", g.node_ids[static_cast<std::size_t>(e.src)]},
                         {"label", g.labels[static_cast<std::size_t>(e.label)]},
                         {"dst", g.node_ids[static_cast<std::size_t>(e.dst)]}});
    }
    j["edges"] = std::move(edges);
    if (g.root) j["root"] = g.node_ids[static_cast<std::size_t>(*g.root)];
    return j.dump(2) + "\n";
}

LabeledStateGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed graph json: ") + e.what());
    }
    LabeledStateGraph g;
    try {
        g.node_ids = j.at("nodes").get<std::vector<std::int64_t>>();
        std::unordered_map<std::int64_t, int> pos;
        for (std::size_t i = 0; i < g.node_ids.size(); ++i) {
            if (!pos.emplace(g.node_ids[i], static_cast<int>(i)).second)
                throw invalid_input("duplicate node id in graph json");
        }
        auto node_pos = [&](std::int64_t id) {
            auto it = pos.find(id);
            if (it == pos.end())
                throw invalid_input("edge references unknown node " + std::to_string(id));
            return it->second;
        };
        for (const auto& e : j.at("edges")) {
            LabeledEdge le;
            le.src = node_pos(e.at("src").get<std::int64_t>());
            le.dst = node_pos(e.at("dst").get<std::int64_t>());
            le.label = g.add_label(e.at("label").get<std::string>());
            g.edges.push_back(le);
        }
        if (j.contains("root")) g.root = node_pos(j.at("root").get<std::int64_t>());
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed graph json: ") + e.what());
    }
    g.canonicalize_and_validate();
    return g;
}

std::string graph_to_dot(const LabeledStateGraph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    for (std::size_t i = 0; i < g.node_ids.size(); ++i) {
        os << "  n" << g.node_ids[i];
        if (g.root && static_cast<int>(i) == *g.root) os << " [shape=doublecircle]";
        os << ";\n";
    }
    for (const auto& e : g.edges)
        os << "  n" << g.node_ids[static_cast<std::size_t>(e.src)] << " -> n"
           << g.node_ids[static_cast<std::size_t>(e.dst)] << " [label=\""
           << g.labels[static_cast<std::size_t>(e.label)] << "\"];\n";
    os << "}\n";
    return os.str();
}

LabeledStateGraph load_graph_file(const std::string& path) {
    return graph_from_json(read_file(path));
}

void save_graph_file(const LabeledStateGraph& g, const std::string& path) {
    write_file(path, graph_to_json(g));
}

}  // namespace graphlift
