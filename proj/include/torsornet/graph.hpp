#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace torsornet {

/// Traversal direction of an oriented edge. An edge stores (tail, head);
/// traversing "reverse" means head -> tail.
enum class Dir { forward, reverse };

struct Edge {
    std::string id;
    std::string tail;
    std::string head;
};

/// Oriented multigraph. Self-loops and parallel edges are permitted.
/// Immutable after construction.
class Multigraph {
public:
    Multigraph(std::vector<std::string> vertices, std::vector<Edge> edges);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_vertex(const std::string& v) const { return vindex_.count(v) > 0; }
    bool has_edge(const std::string& e) const { return eindex_.count(e) > 0; }
    std::size_t vertex_index(const std::string& v) const;
    std::size_t edge_index(const std::string& e) const;
    const Edge& edge(const std::string& e) const { return edges_[edge_index(e)]; }

    /// Degree with self-loops counted twice.
    std::size_t degree(const std::string& v) const;
    std::size_t loop_count(const std::string& v) const;

    bool connected() const;
    bool is_tree() const;
    /// |E| - |V| + 1; requires a connected graph.
    std::size_t betti1() const;
    /// Degree-1 vertices in declaration order.
    std::vector<std::string> leaves() const;

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> vindex_;
    std::unordered_map<std::string, std::size_t> eindex_;
};

Multigraph build_graph(std::vector<std::string> vertices, std::vector<Edge> edges);

struct WalkStep {
    std::string edge;
    Dir dir;
};

/// A walk on a multigraph: a start vertex plus incident steps. The empty walk
/// is the constant walk at its start vertex.
struct Walk {
    std::string start;
    std::vector<WalkStep> steps;
};

/// Endpoint reached by a single step entered at `from`; throws if not incident.
std::string step_target(const Multigraph& g, const std::string& from, const WalkStep& step);
/// Validates incidences and returns the final vertex.
std::string walk_end(const Multigraph& g, const Walk& w);

struct TreeArc {
    std::string parent;
    std::string edge;
    Dir dir;  // direction of the edge as traversed parent -> child
};

struct SpanningTree {
    std::string root;
    std::vector<std::string> tree_edges;  // in declaration order
    std::unordered_map<std::string, TreeArc> parent;  // child vertex -> arc

    bool is_tree_edge(const std::string& e) const;
};

/// Deterministic BFS spanning tree: vertices in declaration order, edges in
/// declaration order. Throws on a disconnected graph or unknown root.
SpanningTree spanning_tree(const Multigraph& g, const std::string& root);

/// Walk root -> v along tree arcs.
Walk tree_path_from_root(const Multigraph& g, const SpanningTree& t, const std::string& v);
/// Unique tree walk between two vertices (common-prefix cancellation).
Walk tree_path(const Multigraph& g, const SpanningTree& t, const std::string& from,
               const std::string& to);

/// One closed walk per non-tree edge: tree path root->tail, the edge forward,
/// tree path head->root. These generate pi_1 at the root freely.
std::vector<Walk> fundamental_cycles(const Multigraph& g, const SpanningTree& t);

struct GraphAutomorphism {
    std::unordered_map<std::string, std::string> vertex_map;
    std::unordered_map<std::string, std::string> edge_map;
    std::unordered_map<std::string, bool> reversed;  // edge id -> orientation reversed
};

GraphAutomorphism identity_automorphism(const Multigraph& g);
GraphAutomorphism compose(const Multigraph& g, const GraphAutomorphism& a,
                          const GraphAutomorphism& b);  // apply a, then b

/// All automorphisms by backtracking with degree-partition pruning.
/// Brute force; requires |V| <= 12.
std::vector<GraphAutomorphism> enumerate_automorphisms(const Multigraph& g);

}  // namespace torsornet
