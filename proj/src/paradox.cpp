#include "torsornet/paradox.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace torsornet {

std::string iso_verdict_to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::isomorphic: return "isomorphic";
        case IsoVerdict::not_isomorphic: return "not_isomorphic";
        default: return "undecided";
    }
}

Paradox make_paradox(std::string name, NetworkSheaf sheaf, Cochain1 cocycle) {
    MaybeCochain0 r = is_coboundary(sheaf, cocycle);
    if (r.decision == Decision::yes)
        throw std::invalid_argument("paradox class is trivial: " + name);
    if (r.decision == Decision::undecided)
        throw std::invalid_argument("cannot certify paradox non-triviality: " + name);
    return Paradox{std::move(name), std::move(sheaf), std::move(cocycle)};
}

void check_graph_map(const Multigraph& src, const Multigraph& dst, const GraphMap& f) {
    for (const std::string& v : src.vertices()) {
        auto it = f.vertex_map.find(v);
        if (it == f.vertex_map.end()) throw std::invalid_argument("graph map misses vertex " + v);
        if (!dst.has_vertex(it->second))
            throw std::invalid_argument("graph map hits unknown vertex " + it->second);
    }
    for (const Edge& e : src.edges()) {
        auto it = f.edge_map.find(e.id);
        if (it == f.edge_map.end()) throw std::invalid_argument("graph map misses edge " + e.id);
        const Walk& w = it->second;
        if (w.start != f.vertex_map.at(e.tail))
            throw std::invalid_argument("image walk of " + e.id + " starts at the wrong vertex");
        if (walk_end(dst, w) != f.vertex_map.at(e.head))
            throw std::invalid_argument("image walk of " + e.id + " ends at the wrong vertex");
    }
}

GraphMap identity_graph_map(const Multigraph& g) {
    GraphMap f;
    for (const std::string& v : g.vertices()) f.vertex_map.emplace(v, v);
    for (const Edge& e : g.edges())
        f.edge_map.emplace(e.id, Walk{e.tail, {{e.id, Dir::forward}}});
    return f;
}

namespace {

Walk reverse_walk(const Multigraph& g, const Walk& w) {
    Walk r{walk_end(g, w), {}};
    for (std::size_t i = w.steps.size(); i-- > 0;)
        r.steps.push_back({w.steps[i].edge,
                           w.steps[i].dir == Dir::forward ? Dir::reverse : Dir::forward});
    return r;
}

// Image of a walk in x2 under a graph map g into x3.
Walk map_walk(const Multigraph& x3, const GraphMap& g, const Walk& w) {
    Walk out{g.vertex_map.at(w.start), {}};
    for (const WalkStep& step : w.steps) {
        Walk piece = g.edge_map.at(step.edge);
        if (step.dir == Dir::reverse) piece = reverse_walk(x3, piece);
        for (const WalkStep& s : piece.steps) out.steps.push_back(s);
    }
    return out;
}

}  // namespace

GraphMap compose_graph_maps(const Multigraph& x1, const Multigraph& x2, const Multigraph& x3,
                            const GraphMap& f, const GraphMap& g) {
    check_graph_map(x1, x2, f);
    check_graph_map(x2, x3, g);
    GraphMap out;
    for (const std::string& v : x1.vertices())
        out.vertex_map.emplace(v, g.vertex_map.at(f.vertex_map.at(v)));
    for (const Edge& e : x1.edges())
        out.edge_map.emplace(e.id, map_walk(x3, g, f.edge_map.at(e.id)));
    return out;
}

Cochain1 pullback_cocycle(const Multigraph& x1, const NetworkSheaf& s2, const GraphMap& f,
                          const Cochain1& eta2) {
    if (s2.kind != SheafKind::constant)
        throw std::invalid_argument("pullback requires a constant sheaf");
    check_graph_map(x1, s2.base, f);
    Cochain1 out;
    for (const Edge& e : x1.edges())
        out.emplace(e.id, walk_product(s2, eta2, f.edge_map.at(e.id)));
    return out;
}

namespace {

bool same_base(const Multigraph& a, const Multigraph& b) {
    if (a.vertices() != b.vertices() || a.edges().size() != b.edges().size()) return false;
    for (std::size_t i = 0; i < a.edges().size(); ++i)
        if (a.edges()[i].id != b.edges()[i].id || a.edges()[i].tail != b.edges()[i].tail ||
            a.edges()[i].head != b.edges()[i].head)
            return false;
    return true;
}

bool is_identity_graph_map(const Multigraph& g, const GraphMap& f) {
    for (const auto& [v, img] : f.vertex_map)
        if (v != img) return false;
    for (const Edge& e : g.edges()) {
        auto it = f.edge_map.find(e.id);
        if (it == f.edge_map.end() || it->second.steps.size() != 1 ||
            it->second.steps[0].edge != e.id || it->second.steps[0].dir != Dir::forward)
            return false;
    }
    return true;
}

}  // namespace

MaybeCochain0 check_morphism(const ParadoxMorphism& m, const Paradox& p1, const Paradox& p2) {
    if (!(m.phi.source == p2.sheaf.group) || !(m.phi.target == p1.sheaf.group))
        throw std::invalid_argument("morphism homomorphism does not match the structure groups");
    Cochain1 pulled;
    if (p1.sheaf.kind == SheafKind::constant && p2.sheaf.kind == SheafKind::constant) {
        pulled = pullback_cocycle(p1.sheaf.base, p2.sheaf, m.f, p2.cocycle);
    } else if (same_base(p1.sheaf.base, p2.sheaf.base) &&
               is_identity_graph_map(p1.sheaf.base, m.f)) {
        // non-constant sheaves support only identity base maps, where the
        // pullback is the cocycle itself
        pulled = p2.cocycle;
    } else {
        throw std::invalid_argument(
            "non-constant sheaf morphisms require the identity base map");
    }
    Cochain1 mapped;
    for (const Edge& e : p1.sheaf.base.edges())
        mapped.emplace(e.id, hom_apply(m.phi, pulled.at(e.id)));
    return cohomologous(p1.sheaf, mapped, p1.cocycle);
}

// --- isomorphism -------------------------------------------------------------

namespace {

i64 gcd_of(const std::vector<i64>& v) {
    i64 g = 0;
    for (i64 x : v) g = std::gcd(g, x);
    return g;
}

// Candidate isomorphisms between structure groups; complete for finite groups.
std::vector<Homomorphism> group_isos(const GroupDescriptor& g1, const GroupDescriptor& g2,
                                     bool& complete) {
    std::vector<Homomorphism> out;
    if (g1.order() && g2.order()) {
        complete = true;
        if (*g1.order() != *g2.order()) return out;
        for (Homomorphism& h : enumerate_homomorphisms(g1, g2))
            if (hom_is_bijective(h)) out.push_back(std::move(h));
        return out;
    }
    complete = false;
    if (g1 == g2) out.push_back(identity_hom(g1));
    if (g1.kind == GroupKind::free_abelian && g2.kind == GroupKind::free_abelian &&
        g1.rank == g2.rank) {
        IntegerMatrix neg(g1.rank, g1.rank);
        for (std::size_t i = 0; i < g1.rank; ++i) neg.at(i, i) = -1;
        out.push_back(hom_from_matrix(g1, g2, std::move(neg)));
    }
    return out;
}

std::vector<GroupElement> apply_hom_tuple(const Homomorphism& phi,
                                          const std::vector<GroupElement>& t) {
    std::vector<GroupElement> out;
    for (const GroupElement& x : t) out.push_back(hom_apply(phi, x));
    return out;
}

// Relative invariant of eta1 transported through a base automorphism and a
// group map, recomputed from scratch at the canonical root.
std::vector<GroupElement> transported_invariant(const NetworkSheaf& s1, const NetworkSheaf& s2,
                                                const Cochain1& eta1, const GraphAutomorphism& a,
                                                const Homomorphism& phi) {
    Cochain1 moved;
    for (const Edge& e : s1.base.edges()) {
        GroupElement x = eta1.at(a.edge_map.at(e.id));
        if (a.reversed.at(e.id)) x = inv(s1.group, x);
        moved.emplace(e.id, hom_apply(phi, x));
    }
    return tree_relative_invariant(s2, moved);
}

IsoResult tree_are_isomorphic(const Paradox& p1, const Paradox& p2) {
    if (!same_base(p1.sheaf.base, p2.sheaf.base))
        return IsoResult{IsoVerdict::undecided, "distinct tree bases are not compared"};
    std::vector<GroupElement> t2 = tree_relative_invariant(p2.sheaf, p2.cocycle);
    bool complete = false;
    std::vector<Homomorphism> isos = group_isos(p1.sheaf.group, p2.sheaf.group, complete);
    if (isos.empty() && complete)
        return IsoResult{IsoVerdict::not_isomorphic, "structure groups are not isomorphic"};
    const GroupDescriptor& g2 = p2.sheaf.group;
    for (const GraphAutomorphism& a : enumerate_automorphisms(p1.sheaf.base))
        for (const Homomorphism& phi : isos) {
            std::vector<GroupElement> moved =
                transported_invariant(p1.sheaf, p2.sheaf, p1.cocycle, a, phi);
            bool equal = moved.size() == t2.size();
            for (std::size_t i = 0; i < moved.size() && equal; ++i)
                equal = eq(g2, moved[i], t2[i]);
            if (equal)
                return IsoResult{IsoVerdict::isomorphic,
                                 "tree automorphism orbit match"};
        }
    if (complete)
        return IsoResult{IsoVerdict::not_isomorphic, "relative invariant orbits differ"};
    return IsoResult{IsoVerdict::undecided, "searched isomorphism family exhausted"};
}

std::string invariant_factor_string(const IntegerMatrix& m) {
    SmithNormalForm s = smith_normal_form(m);
    std::string out = "[";
    std::size_t n = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < n; ++i) out += (i ? "," : "") + std::to_string(s.d.at(i, i));
    return out + "]";
}

}  // namespace

IsoResult are_isomorphic(const Paradox& p1, const Paradox& p2) {
    if (p1.sheaf.kind == SheafKind::boundary_trivial &&
        p2.sheaf.kind == SheafKind::boundary_trivial && p1.sheaf.base.is_tree() &&
        p2.sheaf.base.is_tree())
        return tree_are_isomorphic(p1, p2);
    if (p1.sheaf.kind != SheafKind::constant || p2.sheaf.kind != SheafKind::constant)
        return IsoResult{IsoVerdict::undecided, "unsupported sheaf kinds"};
    if (!p1.sheaf.base.connected() || !p2.sheaf.base.connected())
        return IsoResult{IsoVerdict::undecided, "disconnected base"};

    const GroupDescriptor& g1 = p1.sheaf.group;
    const GroupDescriptor& g2 = p2.sheaf.group;
    // structure group gate
    if (static_cast<bool>(g1.order()) != static_cast<bool>(g2.order()))
        return IsoResult{IsoVerdict::not_isomorphic, "finite versus infinite structure group"};
    if (g1.order() && *g1.order() != *g2.order())
        return IsoResult{IsoVerdict::not_isomorphic, "structure group orders differ"};
    if (g1.kind == GroupKind::free_abelian && g2.kind == GroupKind::free_abelian &&
        g1.rank != g2.rank)
        return IsoResult{IsoVerdict::not_isomorphic, "free abelian ranks differ"};

    // homotopy equivalence gate for connected graphs
    std::size_t b1 = p1.sheaf.base.betti1(), b2 = p2.sheaf.base.betti1();
    if (b1 != b2)
        return IsoResult{IsoVerdict::not_isomorphic,
                         "first Betti numbers differ: " + std::to_string(b1) + " vs " +
                             std::to_string(b2)};

    HolonomyData h1 = holonomy(p1.sheaf, p1.cocycle, p1.sheaf.base.vertices().front());
    HolonomyData h2 = holonomy(p2.sheaf, p2.cocycle, p2.sheaf.base.vertices().front());

    if (b1 == 1 && g1.kind == GroupKind::free_abelian && g2.kind == GroupKind::free_abelian) {
        i64 d1 = gcd_of(h1.holonomies[0].vec);
        i64 d2 = gcd_of(h2.holonomies[0].vec);
        if (d1 == d2)
            return IsoResult{IsoVerdict::isomorphic, "equal holonomy gcd " + std::to_string(d1)};
        return IsoResult{IsoVerdict::not_isomorphic,
                         "holonomy gcds differ: " + std::to_string(d1) + " vs " +
                             std::to_string(d2)};
    }

    if (b1 == 1 && g1.order()) {
        for (Homomorphism& phi : enumerate_homomorphisms(g1, g2)) {
            if (!hom_is_bijective(phi)) continue;
            for (int exp : {1, -1}) {
                GroupElement img = hom_apply(phi, power(g1, h1.holonomies[0], exp));
                if (simultaneous_conjugacy(g2, {img}, {h2.holonomies[0]}).decision ==
                    Decision::yes)
                    return IsoResult{IsoVerdict::isomorphic,
                                     "circle holonomies match under an isomorphism"};
            }
        }
        return IsoResult{IsoVerdict::not_isomorphic,
                         "no structure group isomorphism matches the holonomies"};
    }

    // positive search when the bases coincide: an identity homotopy
    // equivalence plus a group isomorphism suffices
    if (same_base(p1.sheaf.base, p2.sheaf.base)) {
        bool complete = false;
        for (const Homomorphism& phi : group_isos(g1, g2, complete)) {
            ConjugacyResult c = simultaneous_conjugacy(g2, apply_hom_tuple(phi, h1.holonomies),
                                                       h2.holonomies);
            if (c.decision == Decision::yes)
                return IsoResult{IsoVerdict::isomorphic,
                                 "holonomy tuples conjugate under an isomorphism"};
        }
    }

    // invariant comparison for higher Betti number
    if (g1.kind == GroupKind::free_abelian && g2.kind == GroupKind::free_abelian) {
        auto matrix_of = [&](const HolonomyData& h, std::size_t rank) {
            IntegerMatrix m(rank, h.holonomies.size());
            for (std::size_t j = 0; j < h.holonomies.size(); ++j)
                for (std::size_t i = 0; i < rank; ++i) m.at(i, j) = h.holonomies[j].vec[i];
            return m;
        };
        std::string i1 = invariant_factor_string(matrix_of(h1, g1.rank));
        std::string i2 = invariant_factor_string(matrix_of(h2, g2.rank));
        if (i1 != i2)
            return IsoResult{IsoVerdict::not_isomorphic,
                             "holonomy lattice invariants differ: " + i1 + " vs " + i2};
    }
    return IsoResult{IsoVerdict::undecided, "computable invariants agree"};
}

// --- fiber equivalence -------------------------------------------------------

namespace {

Decision pushforward_matches(const Paradox& from, const Paradox& to, const Homomorphism& phi) {
    if (!same_base(from.sheaf.base, to.sheaf.base))
        throw std::invalid_argument("fiber equivalence requires a common base graph");
    if (!(phi.source == from.sheaf.group) || !(phi.target == to.sheaf.group))
        throw std::invalid_argument("homomorphism does not match the structure groups");
    Cochain1 mapped;
    for (const Edge& e : from.sheaf.base.edges())
        mapped.emplace(e.id, hom_apply(phi, from.cocycle.at(e.id)));
    return cohomologous(to.sheaf, mapped, to.cocycle).decision;
}

}  // namespace

Decision fiber_equivalent(const Paradox& p1, const Paradox& p2, const Homomorphism& phi,
                          const Homomorphism& psi) {
    Decision a = pushforward_matches(p1, p2, phi);
    Decision b = pushforward_matches(p2, p1, psi);
    if (a == Decision::no || b == Decision::no) return Decision::no;
    if (a == Decision::undecided || b == Decision::undecided) return Decision::undecided;
    return Decision::yes;
}

FiberSearchResult search_fiber_equivalence(const Paradox& p1, const Paradox& p2) {
    if (!p1.sheaf.group.order() || !p2.sheaf.group.order())
        return FiberSearchResult{Decision::undecided, std::nullopt};
    std::optional<Homomorphism> forward, backward;
    for (Homomorphism& phi : enumerate_homomorphisms(p1.sheaf.group, p2.sheaf.group))
        if (pushforward_matches(p1, p2, phi) == Decision::yes) {
            forward = std::move(phi);
            break;
        }
    for (Homomorphism& psi : enumerate_homomorphisms(p2.sheaf.group, p1.sheaf.group))
        if (pushforward_matches(p2, p1, psi) == Decision::yes) {
            backward = std::move(psi);
            break;
        }
    if (forward && backward)
        return FiberSearchResult{Decision::yes,
                                 std::make_pair(std::move(*forward), std::move(*backward))};
    return FiberSearchResult{Decision::no, std::nullopt};
}

// --- presentation representations --------------------------------------------

bool validate_presentation_rep(const GroupDescriptor& g, const std::vector<Word>& relators,
                               const std::unordered_map<std::string, GroupElement>& images) {
    for (const auto& [name, x] : images) check_element(g, x);
    for (const Word& w : relators) {
        GroupElement acc = identity(g);
        for (const auto& [gen, exp] : w) {
            auto it = images.find(gen);
            if (it == images.end()) throw std::invalid_argument("unknown generator: " + gen);
            acc = mul(g, acc, power(g, it->second, exp));
        }
        if (!is_identity(g, acc)) return false;
    }
    return true;
}

// --- tree boundary classification --------------------------------------------

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    std::size_t add() {
        parent.push_back(parent.size());
        return parent.size() - 1;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TreeBoundaryClasses classify_tree_boundary(const Multigraph& tree, const GroupDescriptor& g,
                                           const std::vector<GraphAutomorphism>& automorphisms) {
    if (!tree.is_tree()) throw std::invalid_argument("classification requires a tree");
    auto order = g.order();
    if (!order) throw std::invalid_argument("classification requires a finite group");
    std::vector<std::string> leaves = tree.leaves();
    std::size_t n = leaves.size();
    std::size_t gsize = static_cast<std::size_t>(*order);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total = checked_mul(static_cast<i64>(total), static_cast<i64>(gsize));
        if (total > 10000000) throw std::invalid_argument("boundary data space exceeds 10^7");
    }
    std::vector<GroupElement> elems = elements(g);
    NetworkSheaf sheaf = constant_sheaf(tree, g);
    SpanningTree span = spanning_tree(tree, leaves.front());

    auto beta_of = [&](std::size_t idx) {
        std::unordered_map<std::string, GroupElement> beta;
        for (std::size_t i = 0; i < n; ++i) {
            beta.emplace(leaves[i], elems[idx % gsize]);
            idx /= gsize;
        }
        return beta;
    };
    // relabel to the canonical root and recompute the invariant tuple
    auto tuple_key = [&](const std::unordered_map<std::string, GroupElement>& beta, bool& trivial) {
        Cochain0 filled;
        for (const std::string& v : tree.vertices())
            filled.emplace(v, beta.count(v) ? beta.at(v) : identity(g));
        Cochain1 eta = coboundary(sheaf, filled);
        trivial = true;
        std::string key;
        for (std::size_t i = 1; i < n; ++i) {
            GroupElement t = walk_product(sheaf, eta, tree_path_from_root(tree, span, leaves[i]));
            if (!is_identity(g, t)) trivial = false;
            key += element_to_string(g, t) + "|";
        }
        return key;
    };

    std::map<std::string, std::size_t> key_id;
    std::map<std::string, std::size_t> key_rep;  // key -> first beta index
    UnionFind uf;
    std::set<std::string> trivial_keys;
    auto intern = [&](const std::string& k, std::size_t beta_idx, bool trivial) {
        auto it = key_id.find(k);
        if (it != key_id.end()) return it->second;
        std::size_t id = uf.add();
        key_id.emplace(k, id);
        key_rep.emplace(k, beta_idx);
        if (trivial) trivial_keys.insert(k);
        return id;
    };

    for (std::size_t idx = 0; idx < total; ++idx) {
        auto beta = beta_of(idx);
        bool trivial = false;
        std::string base_key = tuple_key(beta, trivial);
        std::size_t base_id = intern(base_key, idx, trivial);
        for (const GraphAutomorphism& a : automorphisms) {
            std::unordered_map<std::string, GroupElement> moved;
            for (const std::string& l : leaves) moved.emplace(a.vertex_map.at(l), beta.at(l));
            bool mtriv = false;
            std::string mkey = tuple_key(moved, mtriv);
            uf.unite(base_id, intern(mkey, idx, mtriv));
        }
    }

    TreeBoundaryClasses out;
    std::set<std::size_t> seen;
    for (const auto& [key, id] : key_id) {
        if (trivial_keys.count(key)) continue;
        std::size_t root = uf.find(id);
        if (seen.insert(root).second) {
            ++out.count;
            out.representatives.push_back(beta_of(key_rep.at(key)));
        }
    }
    return out;
}

TreeBoundaryClasses classify_tree_boundary(const Multigraph& tree, const GroupDescriptor& g) {
    return classify_tree_boundary(tree, g, enumerate_automorphisms(tree));
}

}  // namespace torsornet
