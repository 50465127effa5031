#include "torsornet/torsor.hpp"

#include <stdexcept>

namespace torsornet {

Torsor torsor_from_cocycle(const NetworkSheaf& sheaf, const Cochain1& eta) {
    check_cochain1(sheaf, eta);
    return Torsor{sheaf, eta};
}

GroupElement head_restrict(const Torsor& t, const std::string& edge, const GroupElement& p) {
    const GroupDescriptor& g = t.sheaf.edge_stalk(edge);
    GroupElement q = hom_apply(t.sheaf.head_restriction.at(edge), p);
    return mul(g, q, inv(g, t.cocycle.at(edge)));
}

GroupElement transport(const Torsor& t, const Walk& w, const GroupElement& p) {
    if (t.sheaf.kind != SheafKind::constant)
        throw std::invalid_argument("transport requires a constant sheaf");
    const GroupDescriptor& g = t.sheaf.group;
    check_element(g, p);
    GroupElement cur = p;
    std::string at = w.start;
    for (const WalkStep& step : w.steps) {
        at = step_target(t.sheaf.base, at, step);
        const GroupElement& v = t.cocycle.at(step.edge);
        cur = mul(g, cur, step.dir == Dir::forward ? v : inv(g, v));
    }
    return cur;
}

SectionResult global_sections(const Torsor& t) {
    MaybeCochain0 r = is_coboundary(t.sheaf, t.cocycle);
    if (r.decision != Decision::yes) return SectionResult{r.decision, {}};
    // Edge compatibility: the two restrictions of the section into each edge
    // stalk must pick out the same torsor element.
    for (const Edge& e : t.sheaf.base.edges()) {
        const GroupDescriptor& g = t.sheaf.edge_stalk(e.id);
        GroupElement tail = hom_apply(t.sheaf.tail_restriction.at(e.id), r.witness.at(e.tail));
        if (!eq(g, tail, head_restrict(t, e.id, r.witness.at(e.head))))
            throw std::logic_error("global section failed edge compatibility");
    }
    return SectionResult{Decision::yes, std::move(r.witness)};
}

GroupElement morphism_apply(const Torsor& t, const TorsorMorphism& m, const std::string& vertex,
                            const GroupElement& p) {
    const GroupDescriptor& g = t.sheaf.vertex_stalk(vertex);
    return mul(g, p, m.xi.at(vertex));
}

namespace {

bool same_sheaf(const NetworkSheaf& a, const NetworkSheaf& b) {
    if (a.kind != b.kind) return false;
    if (a.base.vertices() != b.base.vertices()) return false;
    const auto& ae = a.base.edges();
    const auto& be = b.base.edges();
    if (ae.size() != be.size()) return false;
    for (std::size_t i = 0; i < ae.size(); ++i)
        if (ae[i].id != be[i].id || ae[i].tail != be[i].tail || ae[i].head != be[i].head)
            return false;
    for (const std::string& v : a.base.vertices())
        if (!(a.vertex_stalk(v) == b.vertex_stalk(v))) return false;
    for (const Edge& e : ae)
        if (!(a.edge_stalk(e.id) == b.edge_stalk(e.id))) return false;
    return true;
}

}  // namespace

TorsorIsoResult torsors_isomorphic(const Torsor& a, const Torsor& b) {
    if (!same_sheaf(a.sheaf, b.sheaf))
        throw std::invalid_argument("torsors live over different sheaves");
    MaybeCochain0 r = cohomologous(a.sheaf, a.cocycle, b.cocycle);
    if (r.decision != Decision::yes) return TorsorIsoResult{r.decision, {}};
    // Morphism laws: the tail law holds since restrictions are homomorphisms;
    // the head law per edge is eta^-1 * F_t(xi_tail) = F_h(xi_head) * eta'^-1.
    for (const Edge& e : a.sheaf.base.edges()) {
        const GroupDescriptor& g = a.sheaf.edge_stalk(e.id);
        GroupElement lhs = mul(g, inv(g, a.cocycle.at(e.id)),
                               hom_apply(a.sheaf.tail_restriction.at(e.id), r.witness.at(e.tail)));
        GroupElement rhs = mul(g, hom_apply(a.sheaf.head_restriction.at(e.id), r.witness.at(e.head)),
                               inv(g, b.cocycle.at(e.id)));
        if (!eq(g, lhs, rhs)) throw std::logic_error("torsor morphism failed the head law");
    }
    return TorsorIsoResult{Decision::yes, TorsorMorphism{std::move(r.witness)}};
}

}  // namespace torsornet
