#include "torsornet/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace torsornet {

Multigraph::Multigraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (!vindex_.emplace(vertices_[i], i).second)
            throw std::invalid_argument("duplicate vertex id: " + vertices_[i]);
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (!eindex_.emplace(e.id, i).second)
            throw std::invalid_argument("duplicate edge id: " + e.id);
        if (!vindex_.count(e.tail))
            throw std::invalid_argument("edge " + e.id + " has undeclared tail: " + e.tail);
        if (!vindex_.count(e.head))
            throw std::invalid_argument("edge " + e.id + " has undeclared head: " + e.head);
    }
}

std::size_t Multigraph::vertex_index(const std::string& v) const {
    auto it = vindex_.find(v);
    if (it == vindex_.end()) throw std::invalid_argument("unknown vertex: " + v);
    return it->second;
}

std::size_t Multigraph::edge_index(const std::string& e) const {
    auto it = eindex_.find(e);
    if (it == eindex_.end()) throw std::invalid_argument("unknown edge: " + e);
    return it->second;
}

std::size_t Multigraph::degree(const std::string& v) const {
    vertex_index(v);
    std::size_t d = 0;
    for (const Edge& e : edges_) {
        if (e.tail == v) ++d;
        if (e.head == v) ++d;
    }
    return d;
}

std::size_t Multigraph::loop_count(const std::string& v) const {
    vertex_index(v);
    std::size_t d = 0;
    for (const Edge& e : edges_)
        if (e.tail == v && e.head == v) ++d;
    return d;
}

bool Multigraph::connected() const {
    if (vertices_.empty()) return true;
    std::set<std::string> seen{vertices_[0]};
    std::deque<std::string> queue{vertices_[0]};
    while (!queue.empty()) {
        std::string v = queue.front();
        queue.pop_front();
        for (const Edge& e : edges_) {
            std::string other;
            if (e.tail == v)
                other = e.head;
            else if (e.head == v)
                other = e.tail;
            else
                continue;
            if (seen.insert(other).second) queue.push_back(other);
        }
    }
    return seen.size() == vertices_.size();
}

bool Multigraph::is_tree() const {
    return connected() && edges_.size() + 1 == vertices_.size();
}

std::size_t Multigraph::betti1() const {
    if (!connected()) throw std::invalid_argument("betti1 requires a connected graph");
    return edges_.size() + 1 - vertices_.size();
}

std::vector<std::string> Multigraph::leaves() const {
    std::vector<std::string> out;
    for (const std::string& v : vertices_)
        if (degree(v) == 1) out.push_back(v);
    return out;
}

Multigraph build_graph(std::vector<std::string> vertices, std::vector<Edge> edges) {
    return Multigraph(std::move(vertices), std::move(edges));
}

std::string step_target(const Multigraph& g, const std::string& from, const WalkStep& step) {
    const Edge& e = g.edge(step.edge);
    const std::string& enter = step.dir == Dir::forward ? e.tail : e.head;
    const std::string& exit = step.dir == Dir::forward ? e.head : e.tail;
    if (enter != from)
        throw std::invalid_argument("walk step on edge " + step.edge + " does not start at " +
                                    from);
    return exit;
}

std::string walk_end(const Multigraph& g, const Walk& w) {
    g.vertex_index(w.start);
    std::string at = w.start;
    for (const WalkStep& s : w.steps) at = step_target(g, at, s);
    return at;
}

bool SpanningTree::is_tree_edge(const std::string& e) const {
    return std::find(tree_edges.begin(), tree_edges.end(), e) != tree_edges.end();
}

SpanningTree spanning_tree(const Multigraph& g, const std::string& root) {
    g.vertex_index(root);
    if (!g.connected()) throw std::invalid_argument("spanning_tree requires a connected graph");

    SpanningTree t;
    t.root = root;
    std::set<std::string> visited{root};
    std::deque<std::string> queue{root};
    while (!queue.empty()) {
        std::string v = queue.front();
        queue.pop_front();
        for (const Edge& e : g.edges()) {
            if (e.tail == v && !visited.count(e.head)) {
                visited.insert(e.head);
                t.tree_edges.push_back(e.id);
                t.parent[e.head] = TreeArc{v, e.id, Dir::forward};
                queue.push_back(e.head);
            } else if (e.head == v && !visited.count(e.tail)) {
                visited.insert(e.tail);
                t.tree_edges.push_back(e.id);
                t.parent[e.tail] = TreeArc{v, e.id, Dir::reverse};
                queue.push_back(e.tail);
            }
        }
    }
    // tree_edges in declaration order, independent of BFS discovery order
    std::sort(t.tree_edges.begin(), t.tree_edges.end(),
              [&](const std::string& a, const std::string& b) {
                  return g.edge_index(a) < g.edge_index(b);
              });
    return t;
}

Walk tree_path_from_root(const Multigraph& g, const SpanningTree& t, const std::string& v) {
    g.vertex_index(v);
    std::vector<WalkStep> rev;
    std::string cur = v;
    while (cur != t.root) {
        auto it = t.parent.find(cur);
        if (it == t.parent.end())
            throw std::invalid_argument("vertex " + v + " not covered by spanning tree");
        rev.push_back(WalkStep{it->second.edge, it->second.dir});
        cur = it->second.parent;
    }
    Walk w;
    w.start = t.root;
    w.steps.assign(rev.rbegin(), rev.rend());
    return w;
}

namespace {
Walk reverse_walk(const Multigraph& g, const Walk& w) {
    Walk r;
    r.start = walk_end(g, w);
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it)
        r.steps.push_back(WalkStep{it->edge, it->dir == Dir::forward ? Dir::reverse : Dir::forward});
    return r;
}
}  // namespace

Walk tree_path(const Multigraph& g, const SpanningTree& t, const std::string& from,
               const std::string& to) {
    Walk a = tree_path_from_root(g, t, from);
    Walk b = tree_path_from_root(g, t, to);
    std::size_t common = 0;
    while (common < a.steps.size() && common < b.steps.size() &&
           a.steps[common].edge == b.steps[common].edge &&
           a.steps[common].dir == b.steps[common].dir)
        ++common;
    Walk up;
    up.start = from;
    for (std::size_t i = a.steps.size(); i > common; --i) {
        const WalkStep& s = a.steps[i - 1];
        up.steps.push_back(WalkStep{s.edge, s.dir == Dir::forward ? Dir::reverse : Dir::forward});
    }
    for (std::size_t i = common; i < b.steps.size(); ++i) up.steps.push_back(b.steps[i]);
    return up;
}

std::vector<Walk> fundamental_cycles(const Multigraph& g, const SpanningTree& t) {
    std::vector<Walk> cycles;
    for (const Edge& e : g.edges()) {
        if (t.is_tree_edge(e.id)) continue;
        Walk w = tree_path_from_root(g, t, e.tail);
        w.steps.push_back(WalkStep{e.id, Dir::forward});
        Walk back = tree_path_from_root(g, t, e.head);
        Walk rb = reverse_walk(g, back);
        for (const WalkStep& s : rb.steps) w.steps.push_back(s);
        cycles.push_back(std::move(w));
    }
    return cycles;
}

GraphAutomorphism identity_automorphism(const Multigraph& g) {
    GraphAutomorphism a;
    for (const std::string& v : g.vertices()) a.vertex_map[v] = v;
    for (const Edge& e : g.edges()) {
        a.edge_map[e.id] = e.id;
        a.reversed[e.id] = false;
    }
    return a;
}

GraphAutomorphism compose(const Multigraph& g, const GraphAutomorphism& a,
                          const GraphAutomorphism& b) {
    GraphAutomorphism c;
    for (const std::string& v : g.vertices()) c.vertex_map[v] = b.vertex_map.at(a.vertex_map.at(v));
    for (const Edge& e : g.edges()) {
        const std::string& mid = a.edge_map.at(e.id);
        c.edge_map[e.id] = b.edge_map.at(mid);
        c.reversed[e.id] = a.reversed.at(e.id) != b.reversed.at(mid);
    }
    return c;
}

namespace {

struct AutSearch {
    const Multigraph& g;
    std::vector<std::size_t> vperm;   // vertex index -> image index
    std::vector<bool> used;
    std::vector<GraphAutomorphism> out;

    explicit AutSearch(const Multigraph& graph)
        : g(graph), vperm(graph.vertices().size()), used(graph.vertices().size(), false) {}

    bool compatible(std::size_t v, std::size_t img) const {
        const std::string& a = g.vertices()[v];
        const std::string& b = g.vertices()[img];
        return g.degree(a) == g.degree(b) && g.loop_count(a) == g.loop_count(b);
    }

    // Edge multiset consistency among already-assigned vertices.
    bool edges_consistent(std::size_t upto) const {
        for (std::size_t i = 0; i <= upto; ++i) {
            for (std::size_t j = 0; j <= upto; ++j) {
                std::size_t n = 0, m = 0;
                const std::string& vi = g.vertices()[i];
                const std::string& vj = g.vertices()[j];
                const std::string& wi = g.vertices()[vperm[i]];
                const std::string& wj = g.vertices()[vperm[j]];
                for (const Edge& e : g.edges()) {
                    if ((e.tail == vi && e.head == vj) || (e.tail == vj && e.head == vi)) ++n;
                    if ((e.tail == wi && e.head == wj) || (e.tail == wj && e.head == wi)) ++m;
                }
                if (n != m) return false;
            }
        }
        return true;
    }

    void emit_edge_maps() {
        // For the fixed vertex permutation, enumerate all bijections between
        // parallel-edge groups by backtracking in edge declaration order.
        std::vector<std::size_t> emap(g.edges().size());
        std::vector<bool> eused(g.edges().size(), false);
        assign_edge(0, emap, eused);
    }

    void assign_edge(std::size_t k, std::vector<std::size_t>& emap, std::vector<bool>& eused) {
        if (k == g.edges().size()) {
            GraphAutomorphism a;
            for (std::size_t i = 0; i < g.vertices().size(); ++i)
                a.vertex_map[g.vertices()[i]] = g.vertices()[vperm[i]];
            for (std::size_t i = 0; i < g.edges().size(); ++i) {
                const Edge& e = g.edges()[i];
                const Edge& f = g.edges()[emap[i]];
                a.edge_map[e.id] = f.id;
                const std::string& it = g.vertices()[vperm[g.vertex_index(e.tail)]];
                a.reversed[e.id] = !(f.tail == it);
            }
            out.push_back(std::move(a));
            return;
        }
        const Edge& e = g.edges()[k];
        const std::string& it = g.vertices()[vperm[g.vertex_index(e.tail)]];
        const std::string& ih = g.vertices()[vperm[g.vertex_index(e.head)]];
        for (std::size_t c = 0; c < g.edges().size(); ++c) {
            if (eused[c]) continue;
            const Edge& f = g.edges()[c];
            bool fwd = (f.tail == it && f.head == ih);
            bool rev = (f.tail == ih && f.head == it);
            if (!fwd && !rev) continue;
            eused[c] = true;
            emap[k] = c;
            assign_edge(k + 1, emap, eused);
            eused[c] = false;
        }
    }

    void assign_vertex(std::size_t v) {
        if (v == g.vertices().size()) {
            emit_edge_maps();
            return;
        }
        for (std::size_t img = 0; img < g.vertices().size(); ++img) {
            if (used[img] || !compatible(v, img)) continue;
            vperm[v] = img;
            used[img] = true;
            if (edges_consistent(v)) assign_vertex(v + 1);
            used[img] = false;
        }
    }
};

}  // namespace

std::vector<GraphAutomorphism> enumerate_automorphisms(const Multigraph& g) {
    if (g.vertices().size() > 12)
        throw std::invalid_argument("enumerate_automorphisms: graph exceeds 12-vertex bound");
    AutSearch s(g);
    s.assign_vertex(0);
    return s.out;
}

}  // namespace torsornet
