#include "torsornet/sheaf.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace torsornet {

const GroupDescriptor& NetworkSheaf::vertex_stalk(const std::string& v) const {
    auto it = vertex_stalks.find(v);
    if (it == vertex_stalks.end()) throw std::invalid_argument("unknown vertex: " + v);
    return it->second;
}

const GroupDescriptor& NetworkSheaf::edge_stalk(const std::string& e) const {
    auto it = edge_stalks.find(e);
    if (it == edge_stalks.end()) throw std::invalid_argument("unknown edge: " + e);
    return it->second;
}

bool NetworkSheaf::all_stalks_abelian() const {
    for (const auto& [v, g] : vertex_stalks)
        if (!abelian_flattenable(g)) return false;
    for (const auto& [e, g] : edge_stalks)
        if (!abelian_flattenable(g)) return false;
    return true;
}

NetworkSheaf constant_sheaf(Multigraph base, GroupDescriptor g) {
    NetworkSheaf s{std::move(base), SheafKind::constant, g, {}, {}, {}, {}, {}};
    Homomorphism id = identity_hom(g);
    for (const std::string& v : s.base.vertices()) s.vertex_stalks.emplace(v, g);
    for (const Edge& e : s.base.edges()) {
        s.edge_stalks.emplace(e.id, g);
        s.tail_restriction.emplace(e.id, id);
        s.head_restriction.emplace(e.id, id);
    }
    return s;
}

NetworkSheaf boundary_trivialized_sheaf(Multigraph base, GroupDescriptor g,
                                        std::vector<std::string> boundary) {
    for (const std::string& v : boundary)
        if (!base.has_vertex(v)) throw std::invalid_argument("unknown boundary vertex: " + v);
    std::set<std::string> bset(boundary.begin(), boundary.end());
    if (bset.size() != boundary.size())
        throw std::invalid_argument("duplicate boundary vertex");
    for (const Edge& e : base.edges())
        if (bset.count(e.tail) && bset.count(e.head) && e.tail == e.head)
            throw std::invalid_argument("boundary vertex carries a self-loop");

    NetworkSheaf s{std::move(base), SheafKind::boundary_trivial, g, boundary, {}, {}, {}, {}};
    Homomorphism id = identity_hom(g);
    Homomorphism inc = trivial_hom(trivial_group(), g);
    for (const std::string& v : s.base.vertices())
        s.vertex_stalks.emplace(v, bset.count(v) ? trivial_group() : g);
    for (const Edge& e : s.base.edges()) {
        s.edge_stalks.emplace(e.id, g);
        s.tail_restriction.emplace(e.id, bset.count(e.tail) ? inc : id);
        s.head_restriction.emplace(e.id, bset.count(e.head) ? inc : id);
    }
    return s;
}

NetworkSheaf make_sheaf(Multigraph base,
                        std::unordered_map<std::string, GroupDescriptor> vertex_stalks,
                        std::unordered_map<std::string, GroupDescriptor> edge_stalks,
                        std::unordered_map<std::string, Homomorphism> tail_restriction,
                        std::unordered_map<std::string, Homomorphism> head_restriction) {
    NetworkSheaf s{std::move(base),      SheafKind::general,
                   {},                   {},
                   std::move(vertex_stalks), std::move(edge_stalks),
                   std::move(tail_restriction), std::move(head_restriction)};
    for (const std::string& v : s.base.vertices())
        if (!s.vertex_stalks.count(v)) throw std::invalid_argument("missing vertex stalk: " + v);
    if (s.vertex_stalks.size() != s.base.vertices().size())
        throw std::invalid_argument("vertex stalk for unknown vertex");
    if (s.edge_stalks.size() != s.base.edges().size())
        throw std::invalid_argument("edge stalk count mismatch");
    for (const Edge& e : s.base.edges()) {
        if (!s.edge_stalks.count(e.id)) throw std::invalid_argument("missing edge stalk: " + e.id);
        auto t = s.tail_restriction.find(e.id);
        auto h = s.head_restriction.find(e.id);
        if (t == s.tail_restriction.end() || h == s.head_restriction.end())
            throw std::invalid_argument("missing restriction for edge " + e.id);
        if (!(t->second.source == s.vertex_stalks.at(e.tail)) ||
            !(t->second.target == s.edge_stalks.at(e.id)) ||
            !(h->second.source == s.vertex_stalks.at(e.head)) ||
            !(h->second.target == s.edge_stalks.at(e.id)))
            throw std::invalid_argument("restriction stalk mismatch on edge " + e.id);
    }
    return s;
}

void check_cochain0(const NetworkSheaf& s, const Cochain0& xi) {
    if (xi.size() != s.base.vertices().size())
        throw std::invalid_argument("0-cochain must assign every vertex");
    for (const std::string& v : s.base.vertices()) {
        auto it = xi.find(v);
        if (it == xi.end()) throw std::invalid_argument("0-cochain misses vertex " + v);
        check_element(s.vertex_stalk(v), it->second);
    }
}

void check_cochain1(const NetworkSheaf& s, const Cochain1& eta) {
    if (eta.size() != s.base.edges().size())
        throw std::invalid_argument("1-cochain must assign every edge");
    for (const Edge& e : s.base.edges()) {
        auto it = eta.find(e.id);
        if (it == eta.end()) throw std::invalid_argument("1-cochain misses edge " + e.id);
        check_element(s.edge_stalk(e.id), it->second);
    }
}

Cochain0 identity_cochain0(const NetworkSheaf& s) {
    Cochain0 xi;
    for (const std::string& v : s.base.vertices()) xi.emplace(v, identity(s.vertex_stalk(v)));
    return xi;
}

Cochain1 identity_cochain1(const NetworkSheaf& s) {
    Cochain1 eta;
    for (const Edge& e : s.base.edges()) eta.emplace(e.id, identity(s.edge_stalk(e.id)));
    return eta;
}

bool cochain1_equal(const NetworkSheaf& s, const Cochain1& a, const Cochain1& b) {
    check_cochain1(s, a);
    check_cochain1(s, b);
    for (const Edge& e : s.base.edges())
        if (!eq(s.edge_stalk(e.id), a.at(e.id), b.at(e.id))) return false;
    return true;
}

Cochain1 coboundary(const NetworkSheaf& s, const Cochain0& xi) {
    check_cochain0(s, xi);
    Cochain1 eta;
    for (const Edge& e : s.base.edges()) {
        const GroupDescriptor& g = s.edge_stalk(e.id);
        GroupElement t = hom_apply(s.tail_restriction.at(e.id), xi.at(e.tail));
        GroupElement h = hom_apply(s.head_restriction.at(e.id), xi.at(e.head));
        eta.emplace(e.id, mul(g, inv(g, t), h));
    }
    return eta;
}

Cochain1 twist(const NetworkSheaf& s, const Cochain1& eta, const Cochain0& xi) {
    check_cochain1(s, eta);
    check_cochain0(s, xi);
    Cochain1 out;
    for (const Edge& e : s.base.edges()) {
        const GroupDescriptor& g = s.edge_stalk(e.id);
        GroupElement t = hom_apply(s.tail_restriction.at(e.id), xi.at(e.tail));
        GroupElement h = hom_apply(s.head_restriction.at(e.id), xi.at(e.head));
        out.emplace(e.id, mul(g, mul(g, inv(g, t), eta.at(e.id)), h));
    }
    return out;
}

// --- abelian pipeline --------------------------------------------------------

namespace {

// Matrix of a homomorphism between groups with abelian coordinates, column by
// column through basis vectors.
IntegerMatrix hom_matrix(const Homomorphism& phi) {
    std::vector<i64> sm = abelian_moduli(phi.source);
    std::vector<i64> tm = abelian_moduli(phi.target);
    IntegerMatrix m(tm.size(), sm.size());
    for (std::size_t j = 0; j < sm.size(); ++j) {
        std::vector<i64> basis(sm.size(), 0);
        basis[j] = sm[j] == 1 ? 0 : 1;
        std::vector<i64> img = abelian_coords(phi.target, hom_apply(phi, abelian_from_coords(phi.source, basis)));
        for (std::size_t i = 0; i < tm.size(); ++i) m.at(i, j) = img[i];
    }
    return m;
}

struct AbelianLayout {
    std::vector<std::size_t> vertex_offset, edge_offset;
    std::vector<i64> vertex_moduli, edge_moduli;  // flattened, in declaration order
    IntegerMatrix delta;       // edge coords x vertex coords
    IntegerMatrix h1_present;  // [delta | edge relation columns]
};

AbelianLayout abelian_layout(const NetworkSheaf& s) {
    if (!s.all_stalks_abelian())
        throw std::invalid_argument("sheaf has a stalk without abelian coordinates");
    AbelianLayout L;
    for (const std::string& v : s.base.vertices()) {
        L.vertex_offset.push_back(L.vertex_moduli.size());
        for (i64 m : abelian_moduli(s.vertex_stalk(v))) L.vertex_moduli.push_back(m);
    }
    for (const Edge& e : s.base.edges()) {
        L.edge_offset.push_back(L.edge_moduli.size());
        for (i64 m : abelian_moduli(s.edge_stalk(e.id))) L.edge_moduli.push_back(m);
    }
    std::size_t a = L.vertex_moduli.size(), b = L.edge_moduli.size();
    L.delta = IntegerMatrix(b, a);
    for (std::size_t ei = 0; ei < s.base.edges().size(); ++ei) {
        const Edge& e = s.base.edges()[ei];
        IntegerMatrix mt = hom_matrix(s.tail_restriction.at(e.id));
        IntegerMatrix mh = hom_matrix(s.head_restriction.at(e.id));
        std::size_t ro = L.edge_offset[ei];
        std::size_t ct = L.vertex_offset[s.base.vertex_index(e.tail)];
        std::size_t ch = L.vertex_offset[s.base.vertex_index(e.head)];
        for (std::size_t i = 0; i < mt.rows(); ++i)
            for (std::size_t j = 0; j < mt.cols(); ++j)
                L.delta.at(ro + i, ct + j) = checked_sub(L.delta.at(ro + i, ct + j), mt.at(i, j));
        for (std::size_t i = 0; i < mh.rows(); ++i)
            for (std::size_t j = 0; j < mh.cols(); ++j)
                L.delta.at(ro + i, ch + j) = checked_add(L.delta.at(ro + i, ch + j), mh.at(i, j));
    }
    std::vector<std::size_t> torsion;
    for (std::size_t i = 0; i < b; ++i)
        if (L.edge_moduli[i] > 0) torsion.push_back(i);
    L.h1_present = IntegerMatrix(b, a + torsion.size());
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < a; ++j) L.h1_present.at(i, j) = L.delta.at(i, j);
    for (std::size_t t = 0; t < torsion.size(); ++t)
        L.h1_present.at(torsion[t], a + t) = L.edge_moduli[torsion[t]];
    return L;
}

std::vector<i64> cochain1_coords(const NetworkSheaf& s, const AbelianLayout& L,
                                 const Cochain1& eta) {
    std::vector<i64> out(L.edge_moduli.size(), 0);
    for (std::size_t ei = 0; ei < s.base.edges().size(); ++ei) {
        const Edge& e = s.base.edges()[ei];
        std::vector<i64> c = abelian_coords(s.edge_stalk(e.id), eta.at(e.id));
        for (std::size_t i = 0; i < c.size(); ++i) out[L.edge_offset[ei] + i] = c[i];
    }
    return out;
}

Cochain0 cochain0_from_coords(const NetworkSheaf& s, const AbelianLayout& L,
                              const std::vector<i64>& x) {
    Cochain0 xi;
    for (std::size_t vi = 0; vi < s.base.vertices().size(); ++vi) {
        const std::string& v = s.base.vertices()[vi];
        const GroupDescriptor& g = s.vertex_stalk(v);
        std::vector<i64> moduli = abelian_moduli(g);
        std::vector<i64> c(moduli.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            i64 val = x[L.vertex_offset[vi] + i];
            if (moduli[i] > 0) val = ((val % moduli[i]) + moduli[i]) % moduli[i];
            c[i] = val;
        }
        xi.emplace(v, abelian_from_coords(g, c));
    }
    return xi;
}

}  // namespace

AbelianCohomology abelian_cohomology(const NetworkSheaf& s) {
    AbelianLayout L = abelian_layout(s);
    AbelianCohomology out;
    out.delta = L.delta;
    out.h1_snf = smith_normal_form(L.h1_present);
    out.h1 = cokernel_type(L.h1_present);

    // H0 = {x : delta x lies in the edge relation lattice} / vertex relations.
    IntegerMatrix ker = kernel_basis(L.h1_present);
    std::size_t a = L.vertex_moduli.size(), k = ker.cols();
    IntegerMatrix gen(a, k);  // generators of the kernel lattice in C0 coords
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < k; ++j) gen.at(i, j) = ker.at(i, j);
    IntegerMatrix rel = kernel_basis(gen);  // relations among the generators
    std::vector<std::vector<i64>> lifted;
    for (std::size_t j = 0; j < a; ++j) {
        if (L.vertex_moduli[j] <= 0) continue;
        std::vector<i64> r(a, 0);
        r[j] = L.vertex_moduli[j];
        auto w = solve_integer_linear(gen, r);
        if (!w) throw std::logic_error("vertex relation escapes the kernel lattice");
        lifted.push_back(std::move(*w));
    }
    IntegerMatrix present(k, rel.cols() + lifted.size());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < rel.cols(); ++j) present.at(i, j) = rel.at(i, j);
        for (std::size_t j = 0; j < lifted.size(); ++j)
            present.at(i, rel.cols() + j) = lifted[j][i];
    }
    out.h0 = cokernel_type(present);
    return out;
}

// --- holonomy ----------------------------------------------------------------

GroupElement walk_product(const NetworkSheaf& s, const Cochain1& eta, const Walk& w) {
    if (s.kind != SheafKind::constant && s.kind != SheafKind::boundary_trivial)
        throw std::invalid_argument("walk products require a single structure group");
    check_cochain1(s, eta);
    const GroupDescriptor& g = s.group;
    GroupElement p = identity(g);
    std::string at = w.start;
    for (const WalkStep& step : w.steps) {
        at = step_target(s.base, at, step);
        const GroupElement& v = eta.at(step.edge);
        p = mul(g, p, step.dir == Dir::forward ? v : inv(g, v));
    }
    return p;
}

HolonomyData holonomy(const NetworkSheaf& s, const Cochain1& eta, const std::string& basepoint) {
    if (s.kind != SheafKind::constant)
        throw std::invalid_argument("holonomy requires a constant sheaf");
    if (!s.base.connected()) throw std::invalid_argument("holonomy requires a connected graph");
    check_cochain1(s, eta);
    HolonomyData h{basepoint, spanning_tree(s.base, basepoint), {}};
    for (const Walk& c : fundamental_cycles(s.base, h.tree))
        h.holonomies.push_back(walk_product(s, eta, c));
    return h;
}

// --- coboundary decisions ----------------------------------------------------

namespace {

// Propagates xi over each component so tree edges are matched exactly, then
// verifies every edge. Constant sheaf only.
MaybeCochain0 constant_is_coboundary(const NetworkSheaf& s, const Cochain1& eta) {
    const GroupDescriptor& g = s.group;
    std::unordered_map<std::string, GroupElement> xi;
    std::vector<std::vector<std::size_t>> incident(s.base.vertices().size());
    for (std::size_t ei = 0; ei < s.base.edges().size(); ++ei) {
        const Edge& e = s.base.edges()[ei];
        incident[s.base.vertex_index(e.tail)].push_back(ei);
        if (e.head != e.tail) incident[s.base.vertex_index(e.head)].push_back(ei);
    }
    for (const std::string& root : s.base.vertices()) {
        if (xi.count(root)) continue;
        xi.emplace(root, identity(g));
        std::deque<std::string> queue{root};
        while (!queue.empty()) {
            std::string v = queue.front();
            queue.pop_front();
            for (std::size_t ei : incident[s.base.vertex_index(v)]) {
                const Edge& e = s.base.edges()[ei];
                const std::string& other = e.tail == v ? e.head : e.tail;
                if (xi.count(other)) continue;
                if (e.tail == v)
                    xi.emplace(other, mul(g, xi.at(v), eta.at(e.id)));
                else
                    xi.emplace(other, mul(g, xi.at(v), inv(g, eta.at(e.id))));
                queue.push_back(other);
            }
        }
    }
    for (const Edge& e : s.base.edges())
        if (!eq(g, mul(g, inv(g, xi.at(e.tail)), xi.at(e.head)), eta.at(e.id)))
            return MaybeCochain0{Decision::no, {}};
    return MaybeCochain0{Decision::yes, std::move(xi)};
}

MaybeCochain0 abelian_is_coboundary(const NetworkSheaf& s, const Cochain1& eta) {
    AbelianLayout L = abelian_layout(s);
    auto z = solve_integer_linear(L.h1_present, cochain1_coords(s, L, eta));
    if (!z) return MaybeCochain0{Decision::no, {}};
    std::vector<i64> x(z->begin(), z->begin() + L.vertex_moduli.size());
    Cochain0 xi = cochain0_from_coords(s, L, x);
    if (!cochain1_equal(s, coboundary(s, xi), eta))
        throw std::logic_error("abelian coboundary witness failed verification");
    return MaybeCochain0{Decision::yes, std::move(xi)};
}

// Boundary-trivialized sheaf on a tree: the witness is forced by propagation
// from the first boundary vertex; it exists iff every boundary vertex gets the
// identity.
MaybeCochain0 boundary_tree_is_coboundary(const NetworkSheaf& s, const Cochain1& eta) {
    const GroupDescriptor& g = s.group;
    std::set<std::string> bset(s.boundary.begin(), s.boundary.end());
    std::string root = s.boundary.empty() ? s.base.vertices().front() : s.boundary.front();
    SpanningTree t = spanning_tree(s.base, root);
    std::unordered_map<std::string, GroupElement> val;
    for (const std::string& v : s.base.vertices())
        val.emplace(v, walk_product(s, eta, tree_path_from_root(s.base, t, v)));
    for (const std::string& bv : s.boundary)
        if (!is_identity(g, val.at(bv))) return MaybeCochain0{Decision::no, {}};
    Cochain0 xi;
    for (const std::string& v : s.base.vertices())
        xi.emplace(v, bset.count(v) ? identity(trivial_group()) : val.at(v));
    if (!cochain1_equal(s, coboundary(s, xi), eta))
        throw std::logic_error("boundary-trivialized witness failed verification");
    return MaybeCochain0{Decision::yes, std::move(xi)};
}

}  // namespace

MaybeCochain0 is_coboundary(const NetworkSheaf& s, const Cochain1& eta) {
    check_cochain1(s, eta);
    if (s.kind == SheafKind::constant) return constant_is_coboundary(s, eta);
    if (s.kind == SheafKind::boundary_trivial && s.base.is_tree())
        return boundary_tree_is_coboundary(s, eta);
    if (s.all_stalks_abelian()) return abelian_is_coboundary(s, eta);
    return MaybeCochain0{Decision::undecided, {}};
}

namespace {

MaybeCochain0 constant_cohomologous(const NetworkSheaf& s, const Cochain1& eta,
                                    const Cochain1& eta2) {
    const GroupDescriptor& g = s.group;
    if (!s.base.connected()) return MaybeCochain0{Decision::undecided, {}};
    const std::string& root = s.base.vertices().front();
    HolonomyData h1 = holonomy(s, eta, root);
    HolonomyData h2 = holonomy(s, eta2, root);
    ConjugacyResult c = simultaneous_conjugacy(g, h1.holonomies, h2.holonomies);
    if (c.decision != Decision::yes) return MaybeCochain0{c.decision, {}};
    // Gauge both cocycles to the canonical tree form, bridge by the conjugator.
    Cochain0 xi;
    for (const std::string& v : s.base.vertices()) {
        Walk p = tree_path_from_root(s.base, h1.tree, v);
        GroupElement a = inv(g, walk_product(s, eta, p));
        GroupElement b = walk_product(s, eta2, p);
        xi.emplace(v, mul(g, mul(g, a, c.conjugator), b));
    }
    if (!cochain1_equal(s, twist(s, eta, xi), eta2))
        throw std::logic_error("gauge witness failed verification");
    return MaybeCochain0{Decision::yes, std::move(xi)};
}

MaybeCochain0 boundary_tree_cohomologous(const NetworkSheaf& s, const Cochain1& eta,
                                         const Cochain1& eta2) {
    const GroupDescriptor& g = s.group;
    std::set<std::string> bset(s.boundary.begin(), s.boundary.end());
    std::string root = s.boundary.empty() ? s.base.vertices().front() : s.boundary.front();
    SpanningTree t = spanning_tree(s.base, root);
    Cochain0 xi;
    for (const std::string& v : s.base.vertices()) {
        Walk p = tree_path_from_root(s.base, t, v);
        GroupElement bridge =
            mul(g, inv(g, walk_product(s, eta, p)), walk_product(s, eta2, p));
        if (bset.count(v)) {
            if (!is_identity(g, bridge)) return MaybeCochain0{Decision::no, {}};
            xi.emplace(v, identity(trivial_group()));
        } else {
            xi.emplace(v, bridge);
        }
    }
    if (!cochain1_equal(s, twist(s, eta, xi), eta2))
        throw std::logic_error("boundary gauge witness failed verification");
    return MaybeCochain0{Decision::yes, std::move(xi)};
}

}  // namespace

MaybeCochain0 cohomologous(const NetworkSheaf& s, const Cochain1& eta, const Cochain1& eta2) {
    check_cochain1(s, eta);
    check_cochain1(s, eta2);
    if (s.kind == SheafKind::constant && s.base.connected())
        return constant_cohomologous(s, eta, eta2);
    if (s.kind == SheafKind::boundary_trivial && s.base.is_tree())
        return boundary_tree_cohomologous(s, eta, eta2);
    if (s.all_stalks_abelian()) {
        Cochain1 diff;
        for (const Edge& e : s.base.edges()) {
            const GroupDescriptor& ge = s.edge_stalk(e.id);
            diff.emplace(e.id, mul(ge, inv(ge, eta.at(e.id)), eta2.at(e.id)));
        }
        return is_coboundary(s, diff);
    }
    return MaybeCochain0{Decision::undecided, {}};
}

// --- brute-force class enumeration -------------------------------------------

H1Classes enumerate_h1_classes(const Multigraph& g, const GroupDescriptor& group) {
    auto n = group.order();
    if (!n) throw std::invalid_argument("class enumeration requires a finite group");
    std::size_t gsize = static_cast<std::size_t>(*n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        total = checked_mul(static_cast<i64>(total), static_cast<i64>(gsize));
        if (total > 10000000) throw std::invalid_argument("cochain space exceeds 10^7");
    }
    std::vector<GroupElement> elems = elements(group);
    std::vector<GroupElement> gens = generators(group);

    auto decode = [&](std::size_t idx) {
        std::vector<std::size_t> v(g.edges().size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = idx % gsize;
            idx /= gsize;
        }
        return v;
    };
    auto encode = [&](const std::vector<std::size_t>& v) {
        std::size_t idx = 0;
        for (std::size_t i = v.size(); i-- > 0;) idx = idx * gsize + v[i];
        return idx;
    };

    H1Classes out;
    std::vector<char> visited(total, 0);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < total; ++start) {
        if (visited[start]) continue;
        ++out.count;
        Cochain1 rep;
        std::vector<std::size_t> first = decode(start);
        for (std::size_t i = 0; i < g.edges().size(); ++i)
            rep.emplace(g.edges()[i].id, elems[first[i]]);
        out.representatives.push_back(std::move(rep));
        visited[start] = 1;
        stack.assign(1, start);
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            std::vector<std::size_t> state = decode(cur);
            for (const std::string& v : g.vertices()) {
                for (const GroupElement& gen : gens) {
                    std::vector<std::size_t> next = state;
                    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
                        const Edge& e = g.edges()[ei];
                        GroupElement x = elems[next[ei]];
                        if (e.tail == v) x = mul(group, inv(group, gen), x);
                        if (e.head == v) x = mul(group, x, gen);
                        next[ei] = element_index(group, x);
                    }
                    std::size_t ni = encode(next);
                    if (!visited[ni]) {
                        visited[ni] = 1;
                        stack.push_back(ni);
                    }
                }
            }
        }
    }
    return out;
}

// --- tree boundary invariants ------------------------------------------------

std::vector<GroupElement> tree_relative_invariant(const NetworkSheaf& s, const Cochain1& eta) {
    if (s.kind != SheafKind::boundary_trivial)
        throw std::invalid_argument("relative invariant requires a boundary-trivialized sheaf");
    if (!s.base.is_tree()) throw std::invalid_argument("relative invariant requires a tree");
    std::vector<std::string> leaves = s.base.leaves();
    std::set<std::string> bset(s.boundary.begin(), s.boundary.end());
    if (bset != std::set<std::string>(leaves.begin(), leaves.end()))
        throw std::invalid_argument("boundary must be exactly the leaf set");
    check_cochain1(s, eta);
    const std::string& root = leaves.front();
    SpanningTree t = spanning_tree(s.base, root);
    std::vector<GroupElement> out;
    for (std::size_t i = 1; i < leaves.size(); ++i)
        out.push_back(walk_product(s, eta, tree_path_from_root(s.base, t, leaves[i])));
    return out;
}

BoundaryObstruction boundary_obstruction(
    const Multigraph& g, const GroupDescriptor& group,
    const std::unordered_map<std::string, GroupElement>& beta) {
    if (!g.connected()) throw std::invalid_argument("boundary extension requires a connected graph");
    std::vector<std::string> leaves = g.leaves();
    if (beta.size() != leaves.size()) throw std::invalid_argument("beta must assign every leaf");
    for (const std::string& l : leaves) {
        auto it = beta.find(l);
        if (it == beta.end()) throw std::invalid_argument("beta misses leaf " + l);
        check_element(group, it->second);
    }
    bool constant = true;
    for (const std::string& l : leaves)
        if (!eq(group, beta.at(l), beta.at(leaves.front()))) constant = false;
    BoundaryObstruction out;
    if (constant) {
        Cochain0 sec;
        GroupElement v0 = leaves.empty() ? identity(group) : beta.at(leaves.front());
        for (const std::string& v : g.vertices()) sec.emplace(v, v0);
        out.section = std::move(sec);
        return out;
    }
    // Extend beta by the identity on interior vertices; the relative invariant
    // of its coboundary is the obstruction tuple.
    NetworkSheaf s = constant_sheaf(g, group);
    Cochain0 filled;
    for (const std::string& v : g.vertices())
        filled.emplace(v, beta.count(v) ? beta.at(v) : identity(group));
    Cochain1 induced = coboundary(s, filled);
    const std::string& root = leaves.front();
    SpanningTree t = spanning_tree(g, root);
    for (std::size_t i = 1; i < leaves.size(); ++i)
        out.obstruction.push_back(walk_product(s, induced, tree_path_from_root(g, t, leaves[i])));
    return out;
}

}  // namespace torsornet
