#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>
#include <set>

#include "torsornet/paradox.hpp"

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

Multigraph rose_graph(int petals) {
    std::vector<Edge> es;
    for (int i = 0; i < petals; ++i)
        es.push_back({std::string(1, static_cast<char>('a' + i)), "v", "v"});
    return build_graph({"v"}, es);
}

Multigraph star_graph(int leaves) {
    std::vector<std::string> vs{"c"};
    std::vector<Edge> es;
    for (int i = 0; i < leaves; ++i) {
        vs.push_back("l" + std::to_string(i));
        es.push_back({"s" + std::to_string(i), "c", vs.back()});
    }
    return build_graph(vs, es);
}

// circle paradox over Z^n with the given holonomy vector on one edge
Paradox circle_paradox(const std::string& name, const Multigraph& base,
                       const std::vector<i64>& h) {
    NetworkSheaf s = constant_sheaf(base, free_abelian(h.size()));
    Cochain1 eta = identity_cochain1(s);
    eta.at(base.edges().front().id) = fa_element(h);
    return make_paradox(name, std::move(s), std::move(eta));
}

Paradox cyclic_circle_paradox(const Multigraph& base, i64 modulus, i64 value) {
    GroupDescriptor g = cyclic(modulus);
    NetworkSheaf s = constant_sheaf(base, g);
    Cochain1 eta = identity_cochain1(s);
    eta.at(base.edges().front().id) = cyclic_element(g, value);
    return make_paradox("cyclic", std::move(s), std::move(eta));
}

// star paradox with boundary data beta on the leaves, eta on spoke i = beta_i
Paradox star_paradox(const GroupDescriptor& g, const std::vector<GroupElement>& beta) {
    Multigraph base = star_graph(static_cast<int>(beta.size()));
    std::vector<std::string> boundary;
    for (const std::string& v : base.leaves()) boundary.push_back(v);
    NetworkSheaf s = boundary_trivialized_sheaf(base, g, boundary);
    Cochain1 eta;
    for (std::size_t i = 0; i < beta.size(); ++i)
        eta.emplace("s" + std::to_string(i), beta[i]);
    return make_paradox("star", std::move(s), std::move(eta));
}

}  // namespace

TEST_CASE("paradox construction rejects trivial classes") {
    std::mt19937 rng(11);
    GroupDescriptor g = symmetric_group(3);
    Multigraph c3 = cycle_graph(3);
    NetworkSheaf s = constant_sheaf(c3, g);
    std::vector<GroupElement> all = elements(g);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        Cochain0 xi;
        for (const std::string& v : c3.vertices()) xi.emplace(v, all[pick(rng)]);
        CHECK_THROWS_AS(make_paradox("trivial", s, coboundary(s, xi)), std::invalid_argument);
    }
    Cochain1 eta = identity_cochain1(s);
    eta.at("e0") = table_element(g, "102");
    CHECK_NOTHROW(make_paradox("swap", s, eta));
}

TEST_CASE("graph map validation and identity") {
    Multigraph c3 = cycle_graph(3);
    GraphMap id = identity_graph_map(c3);
    CHECK_NOTHROW(check_graph_map(c3, c3, id));
    GraphMap bad = id;
    bad.edge_map.at("e0") = Walk{"v0", {}};  // ends at v0, not v1
    CHECK_THROWS(check_graph_map(c3, c3, bad));
    bad = id;
    bad.vertex_map.erase("v2");
    CHECK_THROWS(check_graph_map(c3, c3, bad));
}

TEST_CASE("pullback along the first-petal inclusion and a degree-2 wrap") {
    Multigraph circle = rose_graph(1);
    Multigraph rose = rose_graph(2);
    NetworkSheaf s2 = constant_sheaf(rose, free_abelian(1));
    Cochain1 eta2{{"a", fa_element({1})}, {"b", fa_element({0})}};

    GraphMap incl{{{"v", "v"}}, {{"a", Walk{"v", {{"a", Dir::forward}}}}}};
    Cochain1 pulled = pullback_cocycle(circle, s2, incl, eta2);
    CHECK(pulled.at("a").vec[0] == 1);

    GraphMap id = identity_graph_map(rose);
    Cochain1 same = pullback_cocycle(rose, s2, id, eta2);
    CHECK(cochain1_equal(s2, same, eta2));

    // both edges of a 2-cycle wrap onto the petal carrying k
    Multigraph c2 = cycle_graph(2);
    NetworkSheaf petal = constant_sheaf(circle, free_abelian(1));
    Cochain1 k{{"a", fa_element({7})}};
    GraphMap wrap{{{"v0", "v"}, {"v1", "v"}},
                  {{"e0", Walk{"v", {{"a", Dir::forward}}}},
                   {"e1", Walk{"v", {{"a", Dir::forward}}}}}};
    Cochain1 wrapped = pullback_cocycle(c2, petal, wrap, k);
    NetworkSheaf sc2 = constant_sheaf(c2, free_abelian(1));
    HolonomyData h = holonomy(sc2, wrapped, "v0");
    CHECK(h.holonomies[0].vec[0] == 14);
}

TEST_CASE("pullback is functorial under composition") {
    std::mt19937 rng(23);
    Multigraph c2 = cycle_graph(2);
    Multigraph c4 = cycle_graph(4);
    Multigraph circle = rose_graph(1);
    GraphMap f{{{"v0", "v0"}, {"v1", "v2"}},
               {{"e0", Walk{"v0", {{"e0", Dir::forward}, {"e1", Dir::forward}}}},
                {"e1", Walk{"v2", {{"e2", Dir::forward}, {"e3", Dir::forward}}}}}};
    GraphMap g;
    for (const std::string& v : c4.vertices()) g.vertex_map.emplace(v, "v");
    for (const Edge& e : c4.edges())
        g.edge_map.emplace(e.id, Walk{"v", {{"a", Dir::forward}}});
    GroupDescriptor grp = symmetric_group(3);
    NetworkSheaf s3 = constant_sheaf(circle, grp);
    NetworkSheaf s2 = constant_sheaf(c4, grp);
    std::vector<GroupElement> all = elements(grp);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        Cochain1 eta{{"a", all[pick(rng)]}};
        GraphMap gf = compose_graph_maps(c2, c4, circle, f, g);
        Cochain1 lhs = pullback_cocycle(c2, s3, gf, eta);
        Cochain1 rhs = pullback_cocycle(c2, s2, f, pullback_cocycle(c4, s3, g, eta));
        NetworkSheaf sc2 = constant_sheaf(c2, grp);
        CHECK(cochain1_equal(sc2, lhs, rhs));
    }
}

TEST_CASE("morphism coherence for the circle interpretation pair") {
    Multigraph c4 = cycle_graph(4);
    Paradox p_z3 = circle_paradox("triple", c4, {2, 4, 6});
    Paradox p_z = circle_paradox("height", c4, {2});

    IntegerMatrix phi_m(1, 3);
    phi_m.at(0, 0) = -1;
    phi_m.at(0, 1) = 1;
    ParadoxMorphism into_z{identity_graph_map(c4),
                           hom_from_matrix(free_abelian(3), free_abelian(1), phi_m)};
    MaybeCochain0 r = check_morphism(into_z, p_z, p_z3);
    CHECK(r.decision == Decision::yes);

    IntegerMatrix psi_m(3, 1);
    psi_m.at(0, 0) = 1;
    psi_m.at(1, 0) = 2;
    psi_m.at(2, 0) = 3;
    ParadoxMorphism into_z3{identity_graph_map(c4),
                            hom_from_matrix(free_abelian(1), free_abelian(3), psi_m)};
    CHECK(check_morphism(into_z3, p_z3, p_z).decision == Decision::yes);

    // the trivial homomorphism cannot hit a non-trivial class
    ParadoxMorphism crush{identity_graph_map(c4),
                          trivial_hom(free_abelian(3), free_abelian(1))};
    CHECK(check_morphism(crush, p_z, p_z3).decision == Decision::no);
}

TEST_CASE("coherence composes along paradox morphisms") {
    std::mt19937 rng(41);
    Multigraph c4 = cycle_graph(4);
    GroupDescriptor g = cyclic(5);
    std::uniform_int_distribution<i64> pick(1, 4);
    int composed = 0;
    for (int trial = 0; trial < 10; ++trial) {
        i64 a = pick(rng);
        Paradox p3 = cyclic_circle_paradox(c4, 5, a);
        // times-3 then times-2 are unit multiplications composing to times-6 = id
        i64 b = (3 * a) % 5, c = (2 * b) % 5;
        Paradox p2 = cyclic_circle_paradox(c4, 5, b);
        Paradox p1 = cyclic_circle_paradox(c4, 5, c);
        ParadoxMorphism m1{identity_graph_map(c4), hom_from_generator(g, g, cyclic_element(g, 2))};
        ParadoxMorphism m2{identity_graph_map(c4), hom_from_generator(g, g, cyclic_element(g, 3))};
        REQUIRE(check_morphism(m1, p1, p2).decision == Decision::yes);
        REQUIRE(check_morphism(m2, p2, p3).decision == Decision::yes);
        GraphMap gf = compose_graph_maps(c4, c4, c4, m1.f, m2.f);
        Homomorphism comp = hom_from_generator(
            g, g, hom_apply(m1.phi, hom_apply(m2.phi, cyclic_element(g, 1))));
        CHECK(check_morphism(ParadoxMorphism{gf, comp}, p1, p3).decision == Decision::yes);
        ++composed;
    }
    CHECK(composed > 0);
}

TEST_CASE("isomorphism ladder on circle paradoxes over Z^3") {
    Multigraph c4 = cycle_graph(4);
    Paradox up = circle_paradox("up", c4, {2, 2, 1});
    Paradox down = circle_paradox("down", c4, {-2, -2, -1});
    IsoResult r = are_isomorphic(up, down);
    CHECK(r.verdict == IsoVerdict::isomorphic);

    Paradox two = circle_paradox("two", c4, {2, 2, 2});
    Paradox four = circle_paradox("four", c4, {4, 4, 4});
    IsoResult nr = are_isomorphic(two, four);
    CHECK(nr.verdict == IsoVerdict::not_isomorphic);
    CHECK(nr.detail.find("2") != std::string::npos);
    CHECK(nr.detail.find("4") != std::string::npos);

    CHECK(are_isomorphic(up, up).verdict == IsoVerdict::isomorphic);

    // bases of different Betti number are never isomorphic
    NetworkSheaf rs = constant_sheaf(rose_graph(2), free_abelian(1));
    Cochain1 re{{"a", fa_element({1})}, {"b", fa_element({0})}};
    Paradox rose_p = make_paradox("rose", rs, re);
    CHECK(are_isomorphic(up, rose_p).verdict == IsoVerdict::not_isomorphic);
}

TEST_CASE("gcd is a GL(3,Z)-orbit invariant and the ladder respects it") {
    std::mt19937 rng(57);
    std::uniform_int_distribution<int> coord(-6, 6), slot(0, 2), coef(-2, 2);
    Multigraph c4 = cycle_graph(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<i64> h{coord(rng), coord(rng), coord(rng)};
        if (h[0] == 0 && h[1] == 0 && h[2] == 0) continue;
        // random product of elementary integer matrices applied to h
        std::vector<i64> m = h;
        for (int step = 0; step < 8; ++step) {
            int i = slot(rng), j = slot(rng);
            if (i == j) {
                m[i] = -m[i];
            } else {
                m[i] += coef(rng) * m[j];
            }
        }
        i64 g1 = std::gcd(std::gcd(h[0], h[1]), h[2]);
        i64 g2 = std::gcd(std::gcd(m[0], m[1]), m[2]);
        CHECK(g1 == g2);
        if (m[0] == 0 && m[1] == 0 && m[2] == 0) continue;
        CHECK(are_isomorphic(circle_paradox("h", c4, h), circle_paradox("m", c4, m)).verdict ==
              IsoVerdict::isomorphic);
    }
}

TEST_CASE("isomorphism of circle paradoxes over finite groups") {
    Multigraph c4 = cycle_graph(4);
    Paradox one = cyclic_circle_paradox(c4, 4, 1);
    Paradox three = cyclic_circle_paradox(c4, 4, 3);
    Paradox two = cyclic_circle_paradox(c4, 4, 2);
    CHECK(are_isomorphic(one, three).verdict == IsoVerdict::isomorphic);
    CHECK(are_isomorphic(one, two).verdict == IsoVerdict::not_isomorphic);
    // different orders are separated immediately
    Paradox mod3 = cyclic_circle_paradox(c4, 3, 1);
    CHECK(are_isomorphic(one, mod3).verdict == IsoVerdict::not_isomorphic);
}

TEST_CASE("isomorphism of star paradoxes follows leaf orbit structure") {
    GroupDescriptor z2 = cyclic(2);
    GroupElement plus = cyclic_element(z2, 0), minus = cyclic_element(z2, 1);
    Paradox flip0 = star_paradox(z2, {minus, plus, plus, plus});
    Paradox flip2 = star_paradox(z2, {plus, plus, minus, plus});
    Paradox flip02 = star_paradox(z2, {minus, plus, minus, plus});
    CHECK(are_isomorphic(flip0, flip2).verdict == IsoVerdict::isomorphic);
    CHECK(are_isomorphic(flip0, flip02).verdict == IsoVerdict::not_isomorphic);
    CHECK(are_isomorphic(flip02, flip02).verdict == IsoVerdict::isomorphic);
}

TEST_CASE("fiber equivalence of the height and triple-axis circle paradoxes") {
    Multigraph c4 = cycle_graph(4);
    Paradox p_z3 = circle_paradox("triple", c4, {2, 4, 6});
    Paradox p_z = circle_paradox("height", c4, {2});
    IntegerMatrix phi_m(1, 3);
    phi_m.at(0, 0) = -1;
    phi_m.at(0, 1) = 1;
    IntegerMatrix psi_m(3, 1);
    psi_m.at(0, 0) = 1;
    psi_m.at(1, 0) = 2;
    psi_m.at(2, 0) = 3;
    Homomorphism phi = hom_from_matrix(free_abelian(3), free_abelian(1), phi_m);
    Homomorphism psi = hom_from_matrix(free_abelian(1), free_abelian(3), psi_m);
    CHECK(fiber_equivalent(p_z3, p_z, phi, psi) == Decision::yes);
    CHECK(fiber_equivalent(p_z3, p_z, trivial_hom(free_abelian(3), free_abelian(1)), psi) ==
          Decision::no);
}

TEST_CASE("fiber equivalence of star paradoxes across binary and graded states") {
    GroupDescriptor z2 = cyclic(2), z6 = cyclic(6);
    GroupElement plus = cyclic_element(z2, 0), minus = cyclic_element(z2, 1);
    Paradox p2 = star_paradox(z2, {plus, minus, plus});
    Multigraph base = star_graph(3);
    std::vector<std::string> boundary = base.leaves();
    NetworkSheaf s6 = boundary_trivialized_sheaf(base, z6, boundary);
    Cochain1 eta6{{"s0", cyclic_element(z6, 0)},
                  {"s1", cyclic_element(z6, 3)},
                  {"s2", cyclic_element(z6, 0)}};
    Paradox p6 = make_paradox("star6", s6, eta6);
    // the order-2 state 3 maps back to -1 under reduction mod 2, so both
    // directions land on the original classes
    Homomorphism phi = hom_from_generator(z2, z6, cyclic_element(z6, 3));
    Homomorphism psi = hom_from_generator(z6, z2, cyclic_element(z2, 1));  // parity
    CHECK(fiber_equivalent(p2, p6, phi, psi) == Decision::yes);

    // a Z4 companion never works: every homomorphism to Z2 kills the square 2,
    // so the binary class cannot be recovered
    NetworkSheaf s4 = boundary_trivialized_sheaf(base, cyclic(4), boundary);
    Cochain1 eta4{{"s0", cyclic_element(cyclic(4), 0)},
                  {"s1", cyclic_element(cyclic(4), 2)},
                  {"s2", cyclic_element(cyclic(4), 0)}};
    Paradox p4 = make_paradox("star4", s4, eta4);
    Homomorphism phi4 = hom_from_generator(z2, cyclic(4), cyclic_element(cyclic(4), 2));
    Homomorphism psi4 = hom_from_generator(cyclic(4), z2, cyclic_element(z2, 1));
    CHECK(fiber_equivalent(p2, p4, phi4, psi4) == Decision::no);
    CHECK(search_fiber_equivalence(p2, p4).decision == Decision::no);
    // one direction alone does hold: doubling interprets the binary class
    ParadoxMorphism into_graded{identity_graph_map(base), phi4};
    CHECK(check_morphism(into_graded, p4, p2).decision == Decision::yes);
}

TEST_CASE("fiber equivalence search over finite groups") {
    Multigraph c4 = cycle_graph(4);
    Paradox p2 = cyclic_circle_paradox(c4, 2, 1);
    Paradox p6 = cyclic_circle_paradox(c4, 6, 3);
    Paradox p4 = cyclic_circle_paradox(c4, 4, 2);
    Paradox p3 = cyclic_circle_paradox(c4, 3, 1);
    FiberSearchResult found = search_fiber_equivalence(p2, p6);
    REQUIRE(found.decision == Decision::yes);
    REQUIRE(found.witness.has_value());
    CHECK(fiber_equivalent(p2, p6, found.witness->first, found.witness->second) ==
          Decision::yes);
    // holonomy 2 in Z4 is a square, so no map to Z2 recovers the generator
    CHECK(search_fiber_equivalence(p2, p4).decision == Decision::no);
    CHECK(search_fiber_equivalence(p2, p3).decision == Decision::no);
    FiberSearchResult self = search_fiber_equivalence(p2, p2);
    CHECK(self.decision == Decision::yes);
    // infinite groups are out of search range
    Paradox pz = circle_paradox("z", c4, {1});
    CHECK(search_fiber_equivalence(pz, pz).decision == Decision::undecided);
}

TEST_CASE("presentation relators separate the Klein bottle from the torus") {
    GroupDescriptor d = infinite_dihedral();
    Word klein{{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}};
    Word torus{{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}};
    for (i64 delta = -5; delta <= 5; ++delta) {
        std::unordered_map<std::string, GroupElement> rho{
            {"a", dihedral_element(delta, -1)}, {"b", dihedral_element(delta, 1)}};
        CHECK(validate_presentation_rep(d, {klein}, rho));
        CHECK(validate_presentation_rep(d, {torus}, rho) == (delta == 0));
    }
    CHECK(validate_presentation_rep(d, {}, {}));
    CHECK_THROWS(validate_presentation_rep(d, {Word{{"c", 1}}},
                                           {{"a", dihedral_element(0, 1)}}));
}

TEST_CASE("star tree boundary classification counts") {
    GroupDescriptor z2 = cyclic(2);
    std::vector<std::size_t> expected{1, 1, 2, 2, 3};
    for (int n = 2; n <= 6; ++n) {
        TreeBoundaryClasses c = classify_tree_boundary(star_graph(n), z2);
        CHECK(c.count == expected[n - 2]);
        CHECK(c.representatives.size() == c.count);
    }
    // path with two leaves: a single non-trivial class
    Multigraph p3 = build_graph({"a", "b", "c"}, {{"e0", "a", "b"}, {"e1", "b", "c"}});
    CHECK(classify_tree_boundary(p3, z2).count == 1);
}

namespace {

// brute-force oracle: classes of non-constant boundary data under
// beta ~ g * (beta relabeled by an automorphism)
std::size_t brute_force_classes(const Multigraph& tree, const GroupDescriptor& g) {
    std::vector<std::string> leaves = tree.leaves();
    std::vector<GroupElement> elems = elements(g);
    std::size_t gsize = elems.size(), n = leaves.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= gsize;
    auto beta_of = [&](std::size_t idx) {
        std::vector<GroupElement> b;
        for (std::size_t i = 0; i < n; ++i) {
            b.push_back(elems[idx % gsize]);
            idx /= gsize;
        }
        return b;
    };
    auto index_of = [&](const std::vector<GroupElement>& b) {
        std::size_t idx = 0;
        for (std::size_t i = n; i-- > 0;) idx = idx * gsize + element_index(g, b[i]);
        return idx;
    };
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<GraphAutomorphism> autos = enumerate_automorphisms(tree);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<GroupElement> beta = beta_of(idx);
        for (const GraphAutomorphism& a : autos)
            for (const GroupElement& x : elems) {
                std::vector<GroupElement> moved(n, identity(g));
                for (std::size_t i = 0; i < n; ++i) {
                    const std::string& img = a.vertex_map.at(leaves[i]);
                    std::size_t j =
                        std::find(leaves.begin(), leaves.end(), img) - leaves.begin();
                    moved[j] = mul(g, x, beta[i]);
                }
                parent[find(idx)] = find(index_of(moved));
            }
    }
    std::set<std::size_t> roots;
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<GroupElement> beta = beta_of(idx);
        bool constant = true;
        for (std::size_t i = 1; i < n; ++i)
            constant = constant && eq(g, beta[i], beta[0]);
        if (!constant) roots.insert(find(idx));
    }
    return roots.size();
}

Multigraph random_tree(std::mt19937& rng, int vertices) {
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i < vertices; ++i) {
        vs.push_back("t" + std::to_string(i));
        if (i > 0) {
            std::uniform_int_distribution<int> pick(0, i - 1);
            es.push_back({"e" + std::to_string(i), vs[pick(rng)], vs.back()});
        }
    }
    return build_graph(vs, es);
}

}  // namespace

TEST_CASE("tree boundary classification matches the brute-force oracle") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> size(3, 7);
    for (int trial = 0; trial < 15; ++trial) {
        Multigraph tree = random_tree(rng, size(rng));
        CHECK(classify_tree_boundary(tree, cyclic(2)).count ==
              brute_force_classes(tree, cyclic(2)));
    }
    for (int trial = 0; trial < 5; ++trial) {
        Multigraph tree = random_tree(rng, 5);
        CHECK(classify_tree_boundary(tree, cyclic(3)).count ==
              brute_force_classes(tree, cyclic(3)));
        CHECK(classify_tree_boundary(tree, symmetric_group(3)).count ==
              brute_force_classes(tree, symmetric_group(3)));
    }
}

TEST_CASE("classification representatives are pairwise non-isomorphic paradoxes") {
    GroupDescriptor z2 = cyclic(2);
    Multigraph base = star_graph(5);
    TreeBoundaryClasses c = classify_tree_boundary(base, z2);
    REQUIRE(c.count == 2);
    std::vector<Paradox> reps;
    for (const auto& beta : c.representatives) {
        std::vector<GroupElement> b;
        for (const std::string& l : base.leaves()) b.push_back(beta.at(l));
        reps.push_back(star_paradox(z2, b));
    }
    CHECK(are_isomorphic(reps[0], reps[1]).verdict == IsoVerdict::not_isomorphic);
    CHECK(are_isomorphic(reps[0], reps[0]).verdict == IsoVerdict::isomorphic);
}
