#include "torsornet/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace torsornet {

using nlohmann::json;

namespace {

CommandResult input_error(const std::string& message) {
    CommandResult r;
    r.exit_code = 2;
    r.human = "error: " + message + "\n";
    r.machine = json{{"error", message}};
    return r;
}

bool leaves_match_boundary(const NetworkSheaf& s) {
    std::vector<std::string> leaves = s.base.leaves();
    std::vector<std::string> boundary = s.boundary;
    std::sort(leaves.begin(), leaves.end());
    std::sort(boundary.begin(), boundary.end());
    return leaves == boundary;
}

i64 gcd_of_element(const GroupElement& a) {
    i64 g = 0;
    for (i64 x : a.vec) g = std::gcd(g, std::abs(x));
    return g;
}

json witness_json(const NetworkSheaf& s, const Cochain0& xi) {
    json w = json::object();
    for (const std::string& v : s.base.vertices())
        w[v] = element_to_string(s.vertex_stalk(v), xi.at(v));
    return w;
}

// Builds the non-triviality report shared by analyze and compare.
struct Triviality {
    MaybeCochain0 result;
    std::string algorithm;
};

Triviality decide_triviality(const NetworkSheaf& s, const Cochain1& eta) {
    Triviality t;
    t.result = is_coboundary(s, eta);
    if (s.kind == SheafKind::constant)
        t.algorithm = "holonomy propagation over a spanning tree";
    else if (s.kind == SheafKind::boundary_trivial && s.base.is_tree())
        t.algorithm = "relative invariant from the boundary";
    else if (s.all_stalks_abelian())
        t.algorithm = "integer linear solve on the coboundary matrix";
    else
        t.algorithm = "no exact decision procedure for this sheaf";
    return t;
}

Paradox paradox_from_spec(const ParadoxSpec& spec) {
    if (!spec.cocycle) throw SpecError("spec has no cocycle");
    std::string name = spec.name.empty() ? "paradox" : spec.name;
    return make_paradox(name, spec.sheaf, *spec.cocycle);
}

}  // namespace

CommandResult cmd_analyze(const std::string& spec_path, const CommandOptions& opt) {
    std::optional<ParadoxSpec> loaded;
    try {
        loaded.emplace(load_spec(spec_path));
    } catch (const std::exception& ex) {
        return input_error(ex.what());
    }
    const ParadoxSpec& spec = *loaded;
    if (!spec.cocycle) return input_error("analyze requires a cocycle");
    const NetworkSheaf& s = spec.sheaf;
    const Cochain1& eta = *spec.cocycle;

    CommandResult r;
    std::ostringstream out;
    json m;
    m["name"] = spec.name;
    m["group"] = s.group.to_string();
    m["betti1"] = s.base.betti1();
    out << "name: " << (spec.name.empty() ? "(unnamed)" : spec.name) << "\n";
    out << "group: " << s.group.to_string() << "\n";
    out << "betti1: " << s.base.betti1() << "\n";

    if (s.kind == SheafKind::constant && s.base.connected()) {
        std::string basepoint = opt.basepoint.empty() ? s.base.vertices().front()
                                                      : opt.basepoint;
        if (!s.base.has_vertex(basepoint))
            return input_error("unknown basepoint: " + basepoint);
        HolonomyData h = holonomy(s, eta, basepoint);
        m["basepoint"] = basepoint;
        json hol = json::array();
        out << "basepoint: " << basepoint << "\n";
        for (const GroupElement& g : h.holonomies) {
            hol.push_back(element_to_string(s.group, g));
            out << "holonomy: " << element_to_string(s.group, g) << "\n";
        }
        m["holonomies"] = hol;
        if (s.group.kind == GroupKind::free_abelian) {
            i64 g = 0;
            for (const GroupElement& x : h.holonomies) g = std::gcd(g, gcd_of_element(x));
            m["gcd"] = g;
            out << "gcd: " << g << "\n";
        }
        if (s.group.kind == GroupKind::cyclic && s.group.modulus == 2) {
            json par = json::array();
            for (const GroupElement& x : h.holonomies)
                par.push_back(x.residue == 0 ? "+1" : "-1");
            m["parity"] = par;
        }
        if (s.group.kind == GroupKind::infinite_dihedral) {
            json dec = json::array();
            for (const GroupElement& x : h.holonomies) {
                dec.push_back(json{{"height", x.dih_h}, {"orientation", x.dih_eps}});
                out << "decomposition: height " << x.dih_h << ", orientation "
                    << (x.dih_eps > 0 ? "+1" : "-1") << "\n";
            }
            m["dihedral_decomposition"] = dec;
        }
    }
    if (s.kind == SheafKind::boundary_trivial && s.base.is_tree() && leaves_match_boundary(s)) {
        json rel = json::array();
        out << "relative invariant:";
        for (const GroupElement& g : tree_relative_invariant(s, eta)) {
            rel.push_back(element_to_string(s.group, g));
            out << " " << element_to_string(s.group, g);
        }
        out << "\n";
        m["relative_invariant"] = rel;
    }

    Triviality t = decide_triviality(s, eta);
    m["trivial"] = decision_to_string(t.result.decision);
    m["algorithm"] = t.algorithm;
    out << "trivial: " << decision_to_string(t.result.decision) << "\n";
    out << "algorithm: " << t.algorithm << "\n";
    if (t.result.decision == Decision::yes) {
        m["witness"] = witness_json(s, t.result.witness);
        out << "global section:";
        for (const std::string& v : s.base.vertices())
            out << " " << v << "=" << element_to_string(s.vertex_stalk(v),
                                                        t.result.witness.at(v));
        out << "\n";
    }
    r.human = out.str();
    r.machine = std::move(m);
    return r;
}

CommandResult cmd_cohomology(const std::string& spec_path, const CommandOptions&) {
    std::optional<ParadoxSpec> loaded;
    try {
        loaded.emplace(load_spec(spec_path));
    } catch (const std::exception& ex) {
        return input_error(ex.what());
    }
    const ParadoxSpec& spec = *loaded;
    if (!spec.sheaf.all_stalks_abelian())
        return input_error(
            "cohomology requires abelian stalks; use analyze for holonomy analysis "
            "of nonabelian sheaves");
    AbelianCohomology c = abelian_cohomology(spec.sheaf);
    CommandResult r;
    std::ostringstream out;
    out << "H0: " << c.h0.to_string() << "\n";
    out << "H1: " << c.h1.to_string() << "\n";
    out << "coboundary matrix: " << c.delta.rows() << " x " << c.delta.cols() << "\n";
    r.human = out.str();
    r.machine = json{{"h0", c.h0.to_string()},
                     {"h1", c.h1.to_string()},
                     {"delta_rows", c.delta.rows()},
                     {"delta_cols", c.delta.cols()}};
    return r;
}

CommandResult cmd_classify_tree(const std::string& spec_path, const CommandOptions& opt) {
    std::optional<ParadoxSpec> loaded;
    try {
        loaded.emplace(load_spec(spec_path));
    } catch (const std::exception& ex) {
        return input_error(ex.what());
    }
    const NetworkSheaf& s = loaded->sheaf;
    if (!s.base.is_tree()) return input_error("classify-tree requires a tree");
    auto order = s.group.order();
    if (!order) return input_error("classify-tree requires a finite group");
    std::vector<std::string> leaves = s.base.leaves();
    double states = 1;
    for (std::size_t i = 0; i < leaves.size(); ++i)
        states *= static_cast<double>(*order);
    if (states > static_cast<double>(opt.max_search))
        return input_error("boundary state space exceeds --max-search");

    TreeBoundaryClasses c = classify_tree_boundary(s.base, s.group);
    CommandResult r;
    std::ostringstream out;
    out << "non-trivial classes: " << c.count << "\n";
    json reps = json::array();
    for (const auto& beta : c.representatives) {
        json rep = json::object();
        out << "representative:";
        for (const std::string& l : leaves) {
            rep[l] = element_to_string(s.group, beta.at(l));
            out << " " << l << "=" << element_to_string(s.group, beta.at(l));
        }
        out << "\n";
        reps.push_back(std::move(rep));
    }
    r.human = out.str();
    r.machine = json{{"classes", c.count}, {"representatives", reps}};
    return r;
}

CommandResult cmd_compare(const std::string& spec_path_a, const std::string& spec_path_b,
                          const std::optional<std::string>& morphism_path,
                          const CommandOptions& opt) {
    std::optional<Paradox> loaded_a, loaded_b;
    try {
        loaded_a.emplace(paradox_from_spec(load_spec(spec_path_a)));
        loaded_b.emplace(paradox_from_spec(load_spec(spec_path_b)));
    } catch (const std::exception& ex) {
        return input_error(ex.what());
    }
    const Paradox& pa = *loaded_a;
    const Paradox& pb = *loaded_b;

    CommandResult r;
    std::ostringstream out;
    json m;

    if (morphism_path) {
        MorphismSpec ms;
        Homomorphism phi, psi;
        try {
            ms = load_morphism_spec(*morphism_path);
            phi = parse_hom(pa.sheaf.group, pb.sheaf.group, ms.forward);
            psi = parse_hom(pb.sheaf.group, pa.sheaf.group, ms.backward);
        } catch (const std::exception& ex) {
            return input_error(ex.what());
        }
        Decision d;
        try {
            d = fiber_equivalent(pa, pb, phi, psi);
        } catch (const std::invalid_argument& ex) {
            return input_error(ex.what());
        }
        std::string verdict = d == Decision::yes      ? "fiber_equivalent"
                              : d == Decision::no     ? "not_fiber_equivalent"
                                                      : "undecided";
        m["verdict"] = verdict;
        m["invariant"] = "supplied morphism pair, both directions checked";
        out << "verdict: " << verdict << "\n";
        r.exit_code = d == Decision::undecided ? 3 : 0;
        r.human = out.str();
        r.machine = std::move(m);
        return r;
    }

    IsoResult iso = are_isomorphic(pa, pb);
    out << "isomorphism: " << iso_verdict_to_string(iso.verdict) << " (" << iso.detail
        << ")\n";
    m["isomorphism"] = iso_verdict_to_string(iso.verdict);
    m["invariant"] = iso.detail;

    Decision fiber = Decision::undecided;
    auto oa = pa.sheaf.group.order(), ob = pb.sheaf.group.order();
    bool searchable = oa && ob &&
                      static_cast<double>(*oa) * static_cast<double>(*ob) <=
                          static_cast<double>(opt.max_search);
    if (searchable) {
        try {
            fiber = search_fiber_equivalence(pa, pb).decision;
            out << "fiber equivalence search: " << decision_to_string(fiber) << "\n";
            m["fiber_equivalent"] = decision_to_string(fiber);
        } catch (const std::invalid_argument&) {
            searchable = false;
        }
    }
    if (!searchable) out << "fiber equivalence search: skipped (group out of range)\n";

    std::string verdict;
    if (iso.verdict == IsoVerdict::isomorphic)
        verdict = "isomorphic";
    else if (fiber == Decision::yes)
        verdict = "fiber_equivalent";
    else if (iso.verdict == IsoVerdict::not_isomorphic && fiber == Decision::no)
        verdict = "not_fiber_equivalent";
    else if (iso.verdict == IsoVerdict::not_isomorphic)
        verdict = "not_isomorphic";
    else
        verdict = "undecided";
    m["verdict"] = verdict;
    out << "verdict: " << verdict << "\n";
    r.exit_code = verdict == "undecided" ? 3 : 0;
    r.human = out.str();
    r.machine = std::move(m);
    return r;
}

CommandResult cmd_gallery(const CommandOptions& opt) {
    std::vector<GalleryEntry> entries = builtin_gallery();
    if (!opt.only.empty()) {
        std::vector<GalleryEntry> filtered;
        for (GalleryEntry& e : entries)
            if (e.name == opt.only) filtered.push_back(std::move(e));
        if (filtered.empty()) return input_error("unknown gallery entry: " + opt.only);
        entries = std::move(filtered);
    }
    GalleryReport report = run_gallery(entries);
    CommandResult r;
    std::ostringstream out;
    json records = json::array();
    for (const GalleryEntryReport& er : report.entries) {
        out << (er.pass ? "PASS" : "FAIL") << "  " << er.name << "\n";
        json checks = json::array();
        for (const GalleryCheck& c : er.checks) {
            if (!c.pass)
                out << "      " << c.key << ": expected " << c.expected << ", got "
                    << (c.actual.empty() ? "(missing)" : c.actual) << "\n";
            checks.push_back(json{{"key", c.key},
                                  {"expected", c.expected},
                                  {"actual", c.actual},
                                  {"pass", c.pass}});
        }
        if (!er.error.empty()) out << "      error: " << er.error << "\n";
        records.push_back(json{{"name", er.name},
                               {"summary", er.summary},
                               {"pass", er.pass},
                               {"error", er.error},
                               {"checks", checks}});
    }
    out << (report.all_pass ? "all entries pass" : "some entries failed") << "\n";
    r.exit_code = report.all_pass ? 0 : 1;
    r.human = out.str();
    r.machine = json{{"all_pass", report.all_pass}, {"entries", records}};
    return r;
}

}  // namespace torsornet
