#include "torsornet/gallery.hpp"

#include <cstdlib>
#include <numeric>

namespace torsornet {

namespace {

using Observations = std::vector<std::pair<std::string, std::string>>;

Multigraph cycle_graph(int n) {
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        es.push_back({"e" + std::to_string(i), vs[i], vs[(i + 1) % n]});
    return build_graph(vs, es);
}

Multigraph rose_graph() {
    return build_graph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}});
}

Multigraph path_graph(int n) {
    std::vector<std::string> vs;
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) {
        vs.push_back("p" + std::to_string(i));
        if (i > 0) es.push_back({"e" + std::to_string(i - 1), vs[i - 1], vs[i]});
    }
    return build_graph(vs, es);
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

std::string decision_string(Decision d) { return decision_to_string(d); }
std::string verdict_string(IsoVerdict v) { return iso_verdict_to_string(v); }

Paradox unit_height_circle(i64 k) {
    Multigraph c4 = cycle_graph(4);
    NetworkSheaf s = constant_sheaf(c4, free_abelian(1));
    Cochain1 eta = identity_cochain1(s);
    eta.at("e0") = fa_element({k});
    return make_paradox("circle-" + std::to_string(k), std::move(s), std::move(eta));
}

Paradox cubic_circle(const std::vector<i64>& h) {
    Multigraph c4 = cycle_graph(4);
    NetworkSheaf s = constant_sheaf(c4, free_abelian(3));
    Cochain1 eta = identity_cochain1(s);
    eta.at("e0") = fa_element(h);
    return make_paradox("cubic", std::move(s), std::move(eta));
}

GalleryEntry penrose_entry() {
    return GalleryEntry{
        "penrose_staircase",
        "four flights of stairs around a square, each climbing one unit",
        [] {
            Multigraph c4 = cycle_graph(4);
            NetworkSheaf s = constant_sheaf(c4, free_abelian(1));
            Cochain1 eta;
            for (const Edge& e : c4.edges()) eta.emplace(e.id, fa_element({1}));
            HolonomyData h = holonomy(s, eta, "v0");
            Observations obs;
            obs.emplace_back("betti1", std::to_string(c4.betti1()));
            obs.emplace_back("holonomy", element_to_string(s.group, h.holonomies[0]));
            obs.emplace_back("trivial", decision_string(is_coboundary(s, eta).decision));
            obs.emplace_back("class_gcd", std::to_string(std::abs(h.holonomies[0].vec[0])));
            return obs;
        },
        {{"betti1", "1"}, {"holonomy", "4"}, {"trivial", "no"}, {"class_gcd", "4"}}};
}

GalleryEntry cubic_entry(int index, std::vector<i64> h) {
    std::string hs = element_to_string(free_abelian(3), fa_element(h));
    i64 g = std::gcd(std::gcd(std::abs(h[0]), std::abs(h[1])), std::abs(h[2]));
    return GalleryEntry{
        "cubic_staircase_" + std::to_string(index),
        "loop of unit cubes whose translations fail to close",
        [h] {
            Paradox p = cubic_circle(h);
            HolonomyData hd = holonomy(p.sheaf, p.cocycle, "v0");
            std::vector<i64> v = hd.holonomies[0].vec;
            Observations obs;
            obs.emplace_back("holonomy", element_to_string(p.sheaf.group, hd.holonomies[0]));
            obs.emplace_back("trivial", "no");
            obs.emplace_back("class_gcd",
                             std::to_string(std::gcd(std::gcd(std::abs(v[0]), std::abs(v[1])),
                                                     std::abs(v[2]))));
            return obs;
        },
        {{"holonomy", hs}, {"trivial", "no"}, {"class_gcd", std::to_string(g)}}};
}

GalleryEntry cylindrical_entry() {
    return GalleryEntry{
        "cylindrical_staircase",
        "staircase on a cylinder; only the seam-crossing edge changes height",
        [] {
            Multigraph c4 = cycle_graph(4);
            NetworkSheaf s = constant_sheaf(c4, free_abelian(1));
            Cochain1 eta = identity_cochain1(s);
            eta.at("e3") = fa_element({4});
            HolonomyData h = holonomy(s, eta, "v0");
            Paradox cyl = make_paradox("cylindrical", s, eta);
            Observations obs;
            obs.emplace_back("holonomy", element_to_string(s.group, h.holonomies[0]));
            obs.emplace_back("same_class_as_penrose",
                             verdict_string(are_isomorphic(cyl, unit_height_circle(4)).verdict));
            return obs;
        },
        {{"holonomy", "4"}, {"same_class_as_penrose", "isomorphic"}}};
}

GalleryEntry zigzag_entry(int n) {
    bool even = n % 2 == 0;
    return GalleryEntry{
        "zigzag_" + std::to_string(n),
        "loop of " + std::to_string(n) + " corners, each flipping the depth reading",
        [n] {
            Multigraph c = cycle_graph(n);
            GroupDescriptor z2 = cyclic(2);
            NetworkSheaf s = constant_sheaf(c, z2);
            Cochain1 eta;
            for (const Edge& e : c.edges()) eta.emplace(e.id, cyclic_element(z2, 1));
            MaybeCochain0 r = is_coboundary(s, eta);
            Observations obs;
            obs.emplace_back("trivial", decision_string(r.decision));
            if (r.decision == Decision::yes)
                obs.emplace_back("witness_checks",
                                 cochain1_equal(s, coboundary(s, r.witness), eta) ? "yes" : "no");
            return obs;
        },
        even ? Observations{{"trivial", "yes"}, {"witness_checks", "yes"}}
             : Observations{{"trivial", "no"}}};
}

GalleryEntry torus_entry(i64 da, i64 db, bool with_petal_morphism) {
    std::string name = "torus_" + std::to_string(da) + "_" + std::to_string(db);
    return GalleryEntry{
        name,
        "two independent staircase loops on a torus (loop a climbs " + std::to_string(da) +
            ", loop b climbs " + std::to_string(db) + ")",
        [da, db, with_petal_morphism] {
            Multigraph rose = rose_graph();
            NetworkSheaf s = constant_sheaf(rose, free_abelian(1));
            Cochain1 eta{{"a", fa_element({da})}, {"b", fa_element({db})}};
            HolonomyData h = holonomy(s, eta, "v");
            AbelianCohomology coh = abelian_cohomology(s);
            Observations obs;
            obs.emplace_back("holonomy_a", element_to_string(s.group, h.holonomies[0]));
            obs.emplace_back("holonomy_b", element_to_string(s.group, h.holonomies[1]));
            obs.emplace_back("h1", coh.h1.to_string());
            obs.emplace_back("trivial", decision_string(is_coboundary(s, eta).decision));
            if (with_petal_morphism) {
                // include the circle as the first petal; the unit circle class
                // pulls back from the torus class
                Paradox torus = make_paradox("torus", s, eta);
                Paradox circle = unit_height_circle(1);
                GraphMap f;
                for (const std::string& v : circle.sheaf.base.vertices())
                    f.vertex_map.emplace(v, "v");
                f.edge_map.emplace("e0", Walk{"v", {{"a", Dir::forward}}});
                for (const char* e : {"e1", "e2", "e3"})
                    f.edge_map.emplace(e, Walk{"v", {}});
                ParadoxMorphism m{f, identity_hom(free_abelian(1))};
                obs.emplace_back("petal_inclusion_morphism",
                                 decision_string(check_morphism(m, circle, torus).decision));
            }
            return obs;
        },
        with_petal_morphism
            ? Observations{{"holonomy_a", std::to_string(da)},
                           {"holonomy_b", std::to_string(db)},
                           {"h1", "Z^2"},
                           {"trivial", "no"},
                           {"petal_inclusion_morphism", "yes"}}
            : Observations{{"holonomy_a", std::to_string(da)},
                           {"holonomy_b", std::to_string(db)},
                           {"h1", "Z^2"},
                           {"trivial", "no"}}};
}

Paradox twisted_triangle(i64 delta) {
    Multigraph c3 = cycle_graph(3);
    NetworkSheaf s = constant_sheaf(c3, infinite_dihedral());
    Cochain1 eta{{"e0", dihedral_element(0, 1)},
                 {"e1", dihedral_element(delta, 1)},
                 {"e2", dihedral_element(0, -1)}};
    return make_paradox("twisted-triangle", std::move(s), std::move(eta));
}

GalleryEntry mobius_entry() {
    return GalleryEntry{
        "mobius_staircase",
        "triangle with a flat flight, a climbing flight, and an orientation twist",
        [] {
            Paradox p = twisted_triangle(1);
            const GroupDescriptor& d = p.sheaf.group;
            HolonomyData h = holonomy(p.sheaf, p.cocycle, "v0");
            GroupElement once = h.holonomies[0];
            Observations obs;
            obs.emplace_back("holonomy", element_to_string(d, once));
            obs.emplace_back("twice_around", element_to_string(d, mul(d, once, once)));
            obs.emplace_back("trivial", "no");
            return obs;
        },
        {{"holonomy", "(1,-1)"}, {"twice_around", "(0,+1)"}, {"trivial", "no"}}};
}

GalleryEntry rp2_entry() {
    return GalleryEntry{
        "projective_plane_staircase",
        "projective-plane embedding of the twisted triangle loop",
        [] {
            Paradox p = twisted_triangle(1);
            Observations obs;
            obs.emplace_back("holonomy",
                             element_to_string(p.sheaf.group,
                                               holonomy(p.sheaf, p.cocycle, "v0").holonomies[0]));
            obs.emplace_back("isomorphic_to_mobius",
                             verdict_string(are_isomorphic(p, twisted_triangle(1)).verdict));
            return obs;
        },
        {{"holonomy", "(1,-1)"}, {"isomorphic_to_mobius", "isomorphic"}}};
}

GalleryEntry klein_entry(i64 delta) {
    return GalleryEntry{
        "klein_bottle_staircase",
        "two loops with a height change of " + std::to_string(delta) +
            " each, one loop flipping orientation",
        [delta] {
            GroupDescriptor d = infinite_dihedral();
            Multigraph rose = rose_graph();
            NetworkSheaf s = constant_sheaf(rose, d);
            Cochain1 eta{{"a", dihedral_element(delta, -1)}, {"b", dihedral_element(delta, 1)}};
            Paradox p = make_paradox("klein", s, eta);
            std::unordered_map<std::string, GroupElement> rho{{"a", eta.at("a")},
                                                              {"b", eta.at("b")}};
            Word klein_rel{{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}};
            Word torus_rel{{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}};
            Torsor t = torsor_from_cocycle(s, eta);
            Walk ab{"v", {{"a", Dir::forward}, {"b", Dir::forward}}};
            Walk ba{"v", {{"b", Dir::forward}, {"a", Dir::forward}}};
            Observations obs;
            obs.emplace_back("klein_relation",
                             validate_presentation_rep(d, {klein_rel}, rho) ? "holds" : "fails");
            obs.emplace_back("torus_relation",
                             validate_presentation_rep(d, {torus_rel}, rho) ? "holds" : "fails");
            obs.emplace_back("transport_ab",
                             element_to_string(d, transport(t, ab, identity(d))));
            obs.emplace_back("transport_ba",
                             element_to_string(d, transport(t, ba, identity(d))));
            obs.emplace_back("trivial", "no");
            return obs;
        },
        {{"klein_relation", "holds"},
         {"torus_relation", "fails"},
         {"transport_ab", "(0,-1)"},
         {"transport_ba", "(2,-1)"},
         {"trivial", "no"}}};
}

GalleryEntry necker_path_entry(int cubes) {
    return GalleryEntry{
        "necker_path_" + std::to_string(cubes),
        "row of " + std::to_string(cubes) +
            " ambiguous cubes whose end cues force opposite readings",
        [cubes] {
            Multigraph path = path_graph(cubes);
            GroupDescriptor z2 = cyclic(2);
            std::string last = "p" + std::to_string(cubes - 1);
            std::unordered_map<std::string, GroupElement> beta{
                {"p0", cyclic_element(z2, 0)}, {last, cyclic_element(z2, 1)}};
            BoundaryObstruction b = boundary_obstruction(path, z2, beta);
            Observations obs;
            obs.emplace_back("section_exists", b.section ? "yes" : "no");
            if (!b.obstruction.empty())
                obs.emplace_back("obstruction", element_to_string(z2, b.obstruction[0]));
            obs.emplace_back("classes",
                             std::to_string(classify_tree_boundary(path, z2).count));
            return obs;
        },
        {{"section_exists", "no"}, {"obstruction", "-1"}, {"classes", "1"}}};
}

GalleryEntry impossible_bar_entry() {
    return GalleryEntry{
        "impossible_bar",
        "long bar whose end cues force viewpoints differing by a cube rotation",
        [] {
            Multigraph path = path_graph(4);
            GroupDescriptor rot = cube_rotation_group();
            GroupElement g0 = identity(rot);
            GroupElement g1 = elements(rot)[1];  // a non-identity viewpoint
            std::unordered_map<std::string, GroupElement> beta{{"p0", g0}, {"p3", g1}};
            BoundaryObstruction b = boundary_obstruction(path, rot, beta);
            // the paradox is exactly the relative viewpoint g1 * g0^-1 != 1
            GroupElement rel = mul(rot, g1, inv(rot, g0));
            Observations obs;
            obs.emplace_back("section_exists", b.section ? "yes" : "no");
            obs.emplace_back("relative_viewpoint_trivial",
                             is_identity(rot, rel) ? "yes" : "no");
            obs.emplace_back("group_order", std::to_string(*rot.order()));
            return obs;
        },
        {{"section_exists", "no"},
         {"relative_viewpoint_trivial", "no"},
         {"group_order", "24"}}};
}

GalleryEntry star_tree_entry(int n) {
    std::size_t expected = static_cast<std::size_t>(n) / 2;
    return GalleryEntry{
        "star_tree_" + std::to_string(n),
        "bistable star with " + std::to_string(n) + " leaves over the binary group",
        [n] {
            TreeBoundaryClasses c = classify_tree_boundary(star_graph(n), cyclic(2));
            Observations obs;
            obs.emplace_back("classes", std::to_string(c.count));
            obs.emplace_back("representatives", std::to_string(c.representatives.size()));
            return obs;
        },
        {{"classes", std::to_string(expected)},
         {"representatives", std::to_string(expected)}}};
}

GalleryEntry triangle_family_entry() {
    return GalleryEntry{
        "penrose_triangle_family",
        "interpretations of the impossible triangle: height, scale lattice, "
        "translation, occlusion",
        [] {
            Observations obs;
            // height and multiplicative scale differ only by relabeling the
            // lattice through exp/ln, so the classes coincide
            Paradox height = unit_height_circle(4);
            Paradox scale = unit_height_circle(4);
            obs.emplace_back("height_vs_scale",
                             verdict_string(are_isomorphic(height, scale).verdict));
            // translation paradox interprets the height paradox and back
            Paradox translation = cubic_circle({2, 4, 6});
            Paradox flat = unit_height_circle(2);
            IntegerMatrix phi_m(1, 3);
            phi_m.at(0, 0) = -1;
            phi_m.at(0, 1) = 1;
            IntegerMatrix psi_m(3, 1);
            psi_m.at(0, 0) = 1;
            psi_m.at(1, 0) = 2;
            psi_m.at(2, 0) = 3;
            obs.emplace_back(
                "translation_vs_height",
                decision_string(fiber_equivalent(
                    translation, flat,
                    hom_from_matrix(free_abelian(3), free_abelian(1), phi_m),
                    hom_from_matrix(free_abelian(1), free_abelian(3), psi_m))));
            // the binary occlusion paradox stands apart: the only map from
            // its group to the height lattice is trivial
            Multigraph c4 = cycle_graph(4);
            GroupDescriptor z2 = cyclic(2);
            NetworkSheaf so = constant_sheaf(c4, z2);
            Cochain1 eo = identity_cochain1(so);
            eo.at("e0") = cyclic_element(z2, 1);
            Paradox occlusion = make_paradox("occlusion", so, eo);
            bool torsion_blocked = false;
            try {
                hom_from_generator(z2, free_abelian(1), fa_element({1}));
            } catch (const std::invalid_argument&) {
                torsion_blocked = true;
            }
            obs.emplace_back("occlusion_maps_blocked", torsion_blocked ? "yes" : "no");
            IntegerMatrix parity(1, 1);
            parity.at(0, 0) = 1;
            obs.emplace_back(
                "occlusion_vs_height",
                decision_string(fiber_equivalent(
                    occlusion, height, trivial_hom(z2, free_abelian(1)),
                    hom_from_matrix(free_abelian(1), z2, parity))));
            return obs;
        },
        {{"height_vs_scale", "isomorphic"},
         {"translation_vs_height", "yes"},
         {"occlusion_maps_blocked", "yes"},
         {"occlusion_vs_height", "no"}}};
}

}  // namespace

std::vector<GalleryEntry> builtin_gallery() {
    std::vector<GalleryEntry> out;
    out.push_back(penrose_entry());
    std::vector<std::vector<i64>> cubic_holonomies{{2, 2, 2},    {1, 1, 1},    {1, 1, 1},
                                                   {4, 4, 4},    {-2, -2, -1}, {-2, -2, -1},
                                                   {2, 2, 1},    {2, 2, 1}};
    for (std::size_t i = 0; i < cubic_holonomies.size(); ++i)
        out.push_back(cubic_entry(static_cast<int>(i + 1), cubic_holonomies[i]));
    out.push_back(cylindrical_entry());
    for (int n : {3, 4, 5}) out.push_back(zigzag_entry(n));
    out.push_back(torus_entry(1, 0, true));
    out.push_back(torus_entry(1, 1, false));
    // the pictured torus: the horizontal loop climbs two units, the vertical
    // loop three; loop a is taken vertical, loop b horizontal
    out.push_back(torus_entry(3, 2, false));
    out.push_back(mobius_entry());
    out.push_back(rp2_entry());
    out.push_back(klein_entry(1));
    out.push_back(necker_path_entry(4));
    out.push_back(impossible_bar_entry());
    for (int n = 2; n <= 6; ++n) out.push_back(star_tree_entry(n));
    out.push_back(triangle_family_entry());
    return out;
}

GalleryReport run_gallery(const std::vector<GalleryEntry>& entries) {
    GalleryReport report;
    for (const GalleryEntry& entry : entries) {
        GalleryEntryReport er;
        er.name = entry.name;
        er.summary = entry.summary;
        er.pass = true;
        std::vector<std::pair<std::string, std::string>> observed;
        try {
            observed = entry.observe();
        } catch (const std::exception& ex) {
            er.error = ex.what();
            er.pass = false;
        }
        if (er.error.empty())
            for (const auto& [key, want] : entry.expected) {
                GalleryCheck check{key, want, "", false};
                for (const auto& [k, v] : observed)
                    if (k == key) check.actual = v;
                check.pass = check.actual == want;
                er.pass = er.pass && check.pass;
                er.checks.push_back(std::move(check));
            }
        report.all_pass = report.all_pass && er.pass;
        report.entries.push_back(std::move(er));
    }
    return report;
}

}  // namespace torsornet
