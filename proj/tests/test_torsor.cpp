#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "torsornet/torsor.hpp"

using namespace torsornet;

namespace {

Multigraph cycle_graph(int n) {
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        es.push_back({"e" + std::to_string(i), vs[i], vs[(i + 1) % n]});
    return build_graph(vs, es);
}

Cochain1 int_cocycle(const Multigraph& g, const std::vector<i64>& vals) {
    Cochain1 eta;
    for (std::size_t i = 0; i < g.edges().size(); ++i)
        eta.emplace(g.edges()[i].id, fa_element({vals[i]}));
    return eta;
}

Walk full_cycle(const Multigraph& g) {
    Walk w{g.vertices().front(), {}};
    for (const Edge& e : g.edges()) w.steps.push_back({e.id, Dir::forward});
    return w;
}

}  // namespace

TEST_CASE("trivial torsor has an identity global section") {
    NetworkSheaf s = constant_sheaf(cycle_graph(3), symmetric_group(3));
    Torsor t = torsor_from_cocycle(s, identity_cochain1(s));
    SectionResult r = global_sections(t);
    REQUIRE(r.decision == Decision::yes);
    for (const std::string& v : s.base.vertices()) CHECK(is_identity(s.group, r.section.at(v)));
}

TEST_CASE("the staircase torsor has no global section") {
    Multigraph c4 = cycle_graph(4);
    NetworkSheaf s = constant_sheaf(c4, free_abelian(1));
    Torsor t = torsor_from_cocycle(s, int_cocycle(c4, {1, 1, 1, 1}));
    CHECK(global_sections(t).decision == Decision::no);
    // head restriction subtracts the step
    CHECK(head_restrict(t, "e0", fa_element({5})).vec[0] == 4);
}

TEST_CASE("a nullhomologous cocycle yields a section from its witness") {
    Multigraph c3 = cycle_graph(3);
    NetworkSheaf s = constant_sheaf(c3, free_abelian(1));
    Torsor t = torsor_from_cocycle(s, int_cocycle(c3, {1, 2, -3}));
    SectionResult r = global_sections(t);
    REQUIRE(r.decision == Decision::yes);
    for (const Edge& e : c3.edges()) {
        GroupElement lhs = r.section.at(e.tail);
        GroupElement rhs = head_restrict(t, e.id, r.section.at(e.head));
        CHECK(eq(s.group, lhs, rhs));
    }
}

TEST_CASE("transport realizes the loop walks of the worked examples") {
    // Moebius band: walking the triangle twice returns the start element
    GroupDescriptor d = infinite_dihedral();
    Multigraph c3 = cycle_graph(3);
    NetworkSheaf s = constant_sheaf(c3, d);
    Cochain1 eta{{"e0", dihedral_element(0, 1)},
                 {"e1", dihedral_element(1, 1)},
                 {"e2", dihedral_element(0, -1)}};
    Torsor t = torsor_from_cocycle(s, eta);
    Walk once = full_cycle(c3);
    Walk twice = once;
    for (const WalkStep& st : once.steps) twice.steps.push_back(st);
    GroupElement p = dihedral_element(4, -1);
    GroupElement after1 = transport(t, once, p);
    CHECK(eq(d, after1, mul(d, p, dihedral_element(1, -1))));
    CHECK(eq(d, transport(t, twice, p), p));
    CHECK(eq(d, transport(t, Walk{"v1", {}}, p), p));

    // Klein bottle: ab and ba transports differ
    Multigraph rose = build_graph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}});
    NetworkSheaf ks = constant_sheaf(rose, d);
    i64 delta = 1;
    Cochain1 keta{{"a", dihedral_element(delta, -1)}, {"b", dihedral_element(delta, 1)}};
    Torsor kt = torsor_from_cocycle(ks, keta);
    Walk ab{"v", {{"a", Dir::forward}, {"b", Dir::forward}}};
    Walk ba{"v", {{"b", Dir::forward}, {"a", Dir::forward}}};
    GroupElement pab = transport(kt, ab, identity(d));
    GroupElement pba = transport(kt, ba, identity(d));
    CHECK(pab.dih_h == 0);
    CHECK(pab.dih_eps == -1);
    CHECK(pba.dih_h == 2 * delta);
    CHECK(pba.dih_eps == -1);
}

TEST_CASE("transport equivariance and holonomy agreement") {
    std::mt19937 rng(2024);
    GroupDescriptor g = symmetric_group(3);
    Multigraph c4 = cycle_graph(4);
    NetworkSheaf s = constant_sheaf(c4, g);
    std::vector<GroupElement> all = elements(g);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        Cochain1 eta;
        for (const Edge& e : c4.edges()) eta.emplace(e.id, all[pick(rng)]);
        Torsor t = torsor_from_cocycle(s, eta);
        Walk w = full_cycle(c4);
        GroupElement p = all[pick(rng)], x = all[pick(rng)];
        // the group acts by left multiplication on each stalk
        CHECK(eq(g, transport(t, w, mul(g, x, p)), mul(g, x, transport(t, w, p))));
        // full-cycle transport is right multiplication by the holonomy
        HolonomyData h = holonomy(s, eta, "v0");
        CHECK(eq(g, transport(t, w, p), mul(g, p, h.holonomies[0])));
        // restriction equivariance
        CHECK(eq(g, head_restrict(t, "e0", mul(g, x, p)),
                 mul(g, x, head_restrict(t, "e0", p))));
    }
}

TEST_CASE("global section decision matches exhaustive search for finite groups") {
    std::mt19937 rng(31337);
    GroupDescriptor g = cyclic(3);
    Multigraph c3 = cycle_graph(3);
    NetworkSheaf s = constant_sheaf(c3, g);
    std::vector<GroupElement> all = elements(g);
    for (int mask = 0; mask < 27; ++mask) {
        Cochain1 eta{{"e0", all[mask % 3]}, {"e1", all[(mask / 3) % 3]}, {"e2", all[mask / 9]}};
        Torsor t = torsor_from_cocycle(s, eta);
        SectionResult r = global_sections(t);
        bool found = false;
        for (int sm = 0; sm < 27 && !found; ++sm) {
            Cochain0 cand{{"v0", all[sm % 3]}, {"v1", all[(sm / 3) % 3]}, {"v2", all[sm / 9]}};
            bool ok = true;
            for (const Edge& e : c3.edges())
                ok = ok && eq(g, hom_apply(s.tail_restriction.at(e.id), cand.at(e.tail)),
                              head_restrict(t, e.id, cand.at(e.head)));
            found = ok;
        }
        CHECK((r.decision == Decision::yes) == found);
    }
}

TEST_CASE("torsor isomorphism follows cohomology classes") {
    Multigraph c4 = cycle_graph(4);
    NetworkSheaf s = constant_sheaf(c4, free_abelian(1));
    Torsor t1 = torsor_from_cocycle(s, int_cocycle(c4, {1, 1, 1, 1}));
    Torsor t2 = torsor_from_cocycle(s, int_cocycle(c4, {4, 0, 0, 0}));
    Torsor t0 = torsor_from_cocycle(s, int_cocycle(c4, {0, 0, 0, 0}));
    TorsorIsoResult r = torsors_isomorphic(t1, t2);
    CHECK(r.decision == Decision::yes);
    CHECK(torsors_isomorphic(t1, t0).decision == Decision::no);
    TorsorIsoResult self = torsors_isomorphic(t1, t1);
    REQUIRE(self.decision == Decision::yes);
    for (const std::string& v : c4.vertices())
        CHECK(is_identity(s.group, self.morphism.xi.at(v)));
    CHECK(morphism_apply(t1, r.morphism, "v0",
                         mul(s.group, fa_element({2}), r.morphism.xi.at("v0")))
              .vec[0] == 2 + 2 * r.morphism.xi.at("v0").vec[0]);
}

TEST_CASE("cocycle extraction from base elements lands in the same class") {
    std::mt19937 rng(77);
    GroupDescriptor g = symmetric_group(3);
    Multigraph c3 = cycle_graph(3);
    NetworkSheaf s = constant_sheaf(c3, g);
    std::vector<GroupElement> all = elements(g);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
        Cochain1 eta;
        for (const Edge& e : c3.edges()) eta.emplace(e.id, all[pick(rng)]);
        // choose a base element in each stalk; the transported coordinates
        // give a new cocycle p_tail * eta_e * p_head^-1
        Cochain0 base;
        for (const std::string& v : c3.vertices()) base.emplace(v, all[pick(rng)]);
        Cochain1 extracted;
        for (const Edge& e : c3.edges())
            extracted.emplace(
                e.id, mul(g, mul(g, base.at(e.tail), eta.at(e.id)), inv(g, base.at(e.head))));
        CHECK(cohomologous(s, eta, extracted).decision == Decision::yes);
    }
}

TEST_CASE("torsors over different sheaves are rejected") {
    NetworkSheaf a = constant_sheaf(cycle_graph(3), cyclic(2));
    NetworkSheaf b = constant_sheaf(cycle_graph(3), cyclic(3));
    Torsor ta = torsor_from_cocycle(a, identity_cochain1(a));
    Torsor tb = torsor_from_cocycle(b, identity_cochain1(b));
    CHECK_THROWS(torsors_isomorphic(ta, tb));
}
