#include "torsornet/specfile.hpp"

#include <fstream>
#include <set>

namespace torsornet {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw SpecError(where + ": expected an object");
}

void check_keys(const json& j, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& where) {
    require_object(j, where);
    for (const auto& [key, value] : j.items())
        if (!required.count(key) && !optional.count(key))
            throw SpecError(where + ": unknown key \"" + key + "\"");
    for (const std::string& key : required)
        if (!j.contains(key)) throw SpecError(where + ": missing key \"" + key + "\"");
}

i64 parse_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw SpecError(where + ": expected an integer");
    return j.get<i64>();
}

std::string parse_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw SpecError(where + ": expected a string");
    return j.get<std::string>();
}

}  // namespace

GroupDescriptor parse_group(const json& j) {
    require_object(j, "group");
    std::string kind = parse_string(j.value("kind", json()), "group.kind");
    if (kind == "free_abelian") {
        check_keys(j, {"kind", "rank"}, {}, "group");
        i64 rank = parse_int(j.at("rank"), "group.rank");
        if (rank < 0) throw SpecError("group.rank: must be non-negative");
        return free_abelian(static_cast<std::size_t>(rank));
    }
    if (kind == "cyclic") {
        check_keys(j, {"kind", "modulus"}, {}, "group");
        return cyclic(parse_int(j.at("modulus"), "group.modulus"));
    }
    if (kind == "infinite_dihedral") {
        check_keys(j, {"kind"}, {}, "group");
        return infinite_dihedral();
    }
    if (kind == "symmetric") {
        check_keys(j, {"kind", "n"}, {}, "group");
        i64 n = parse_int(j.at("n"), "group.n");
        if (n < 1) throw SpecError("group.n: must be positive");
        return symmetric_group(static_cast<std::size_t>(n));
    }
    if (kind == "cube_rotations") {
        check_keys(j, {"kind"}, {}, "group");
        return cube_rotation_group();
    }
    if (kind == "finite_table") {
        check_keys(j, {"kind", "names", "table"}, {}, "group");
        if (!j.at("names").is_array() || !j.at("table").is_array())
            throw SpecError("group: names and table must be arrays");
        std::vector<std::string> names;
        for (const json& n : j.at("names")) names.push_back(parse_string(n, "group.names"));
        std::vector<std::vector<int>> table;
        for (const json& row : j.at("table")) {
            if (!row.is_array()) throw SpecError("group.table: expected rows of indices");
            std::vector<int> r;
            for (const json& c : row) r.push_back(static_cast<int>(parse_int(c, "group.table")));
            table.push_back(std::move(r));
        }
        return finite_table_group(std::move(names), std::move(table));
    }
    if (kind == "direct_product") {
        check_keys(j, {"kind", "factors"}, {}, "group");
        if (!j.at("factors").is_array()) throw SpecError("group.factors: expected an array");
        std::vector<GroupDescriptor> factors;
        for (const json& f : j.at("factors")) factors.push_back(parse_group(f));
        return direct_product(std::move(factors));
    }
    throw SpecError("group.kind: unknown kind \"" + kind + "\"");
}

json group_to_json(const GroupDescriptor& g) {
    switch (g.kind) {
        case GroupKind::free_abelian:
            return json{{"kind", "free_abelian"}, {"rank", g.rank}};
        case GroupKind::cyclic: return json{{"kind", "cyclic"}, {"modulus", g.modulus}};
        case GroupKind::infinite_dihedral: return json{{"kind", "infinite_dihedral"}};
        case GroupKind::finite_table: {
            json names = json::array(), table = json::array();
            for (const std::string& n : g.table->names) names.push_back(n);
            for (const std::vector<int>& row : g.table->table) table.push_back(row);
            return json{{"kind", "finite_table"}, {"names", names}, {"table", table}};
        }
        case GroupKind::direct_product: {
            json factors = json::array();
            for (const GroupDescriptor& f : g.factors) factors.push_back(group_to_json(f));
            return json{{"kind", "direct_product"}, {"factors", factors}};
        }
    }
    throw SpecError("group: unrepresentable descriptor");
}

GroupElement parse_element(const GroupDescriptor& g, const json& j) {
    switch (g.kind) {
        case GroupKind::free_abelian: {
            if (!j.is_array() || j.size() != g.rank)
                throw SpecError("element: expected an integer array of length " +
                                std::to_string(g.rank));
            std::vector<i64> coords;
            for (const json& c : j) coords.push_back(parse_int(c, "element"));
            return fa_element(std::move(coords));
        }
        case GroupKind::cyclic: return cyclic_element(g, parse_int(j, "element"));
        case GroupKind::infinite_dihedral: {
            check_keys(j, {"h", "eps"}, {}, "element");
            i64 eps = parse_int(j.at("eps"), "element.eps");
            if (eps != 1 && eps != -1) throw SpecError("element.eps: must be 1 or -1");
            return dihedral_element(parse_int(j.at("h"), "element.h"),
                                    static_cast<int>(eps));
        }
        case GroupKind::finite_table:
            return table_element(g, parse_string(j, "element"));
        case GroupKind::direct_product: {
            if (!j.is_array() || j.size() != g.factors.size())
                throw SpecError("element: expected one encoding per product factor");
            std::vector<GroupElement> parts;
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                parts.push_back(parse_element(g.factors[i], j[i]));
            return product_element(std::move(parts));
        }
    }
    throw SpecError("element: unrepresentable kind");
}

json element_to_json(const GroupDescriptor& g, const GroupElement& a) {
    check_element(g, a);
    switch (g.kind) {
        case GroupKind::free_abelian: return json(a.vec);
        case GroupKind::cyclic: return json(a.residue);
        case GroupKind::infinite_dihedral: return json{{"h", a.dih_h}, {"eps", a.dih_eps}};
        case GroupKind::finite_table: return json(g.table->names[a.index]);
        case GroupKind::direct_product: {
            json parts = json::array();
            for (std::size_t i = 0; i < g.factors.size(); ++i)
                parts.push_back(element_to_json(g.factors[i], a.parts[i]));
            return parts;
        }
    }
    throw SpecError("element: unrepresentable kind");
}

ParadoxSpec parse_spec(const json& j) {
    check_keys(j, {"graph", "group", "sheaf"}, {"name", "cocycle"}, "spec");
    std::string name;
    if (j.contains("name")) name = parse_string(j.at("name"), "name");

    const json& jg = j.at("graph");
    check_keys(jg, {"vertices", "edges"}, {}, "graph");
    if (!jg.at("vertices").is_array() || !jg.at("edges").is_array())
        throw SpecError("graph: vertices and edges must be arrays");
    std::vector<std::string> vertices;
    for (const json& v : jg.at("vertices"))
        vertices.push_back(parse_string(v, "graph.vertices"));
    std::vector<Edge> edges;
    for (const json& e : jg.at("edges")) {
        check_keys(e, {"id", "tail", "head"}, {}, "graph.edges");
        edges.push_back({parse_string(e.at("id"), "edge.id"),
                         parse_string(e.at("tail"), "edge.tail"),
                         parse_string(e.at("head"), "edge.head")});
    }
    std::optional<Multigraph> base;
    try {
        base.emplace(build_graph(vertices, edges));
    } catch (const std::invalid_argument& ex) {
        throw SpecError(std::string("graph: ") + ex.what());
    }

    GroupDescriptor group = parse_group(j.at("group"));

    const json& js = j.at("sheaf");
    std::optional<NetworkSheaf> sheaf;
    try {
        if (js.is_string()) {
            if (js.get<std::string>() != "constant")
                throw SpecError("sheaf: unknown sheaf \"" + js.get<std::string>() + "\"");
            sheaf.emplace(constant_sheaf(std::move(*base), std::move(group)));
        } else {
            check_keys(js, {"kind", "boundary"}, {}, "sheaf");
            if (parse_string(js.at("kind"), "sheaf.kind") != "boundary_trivial")
                throw SpecError("sheaf.kind: expected \"boundary_trivial\"");
            if (!js.at("boundary").is_array())
                throw SpecError("sheaf.boundary: expected an array of vertex ids");
            std::vector<std::string> boundary;
            for (const json& v : js.at("boundary"))
                boundary.push_back(parse_string(v, "sheaf.boundary"));
            sheaf.emplace(boundary_trivialized_sheaf(std::move(*base), std::move(group),
                                                     std::move(boundary)));
        }
    } catch (const std::invalid_argument& ex) {
        throw SpecError(std::string("sheaf: ") + ex.what());
    }

    ParadoxSpec spec{std::move(name), std::move(*sheaf), std::nullopt};
    if (j.contains("cocycle")) {
        require_object(j.at("cocycle"), "cocycle");
        Cochain1 eta;
        for (const auto& [edge_id, enc] : j.at("cocycle").items()) {
            if (!spec.sheaf.base.has_edge(edge_id))
                throw SpecError("cocycle: unknown edge \"" + edge_id + "\"");
            eta.emplace(edge_id, parse_element(spec.sheaf.edge_stalk(edge_id), enc));
        }
        try {
            check_cochain1(spec.sheaf, eta);
        } catch (const std::invalid_argument& ex) {
            throw SpecError(std::string("cocycle: ") + ex.what());
        }
        spec.cocycle = std::move(eta);
    }
    return spec;
}

json spec_to_json(const ParadoxSpec& spec) {
    json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    json vertices = json::array(), edges = json::array();
    for (const std::string& v : spec.sheaf.base.vertices()) vertices.push_back(v);
    for (const Edge& e : spec.sheaf.base.edges())
        edges.push_back(json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    j["graph"] = json{{"vertices", vertices}, {"edges", edges}};
    j["group"] = group_to_json(spec.sheaf.group);
    if (spec.sheaf.kind == SheafKind::constant) {
        j["sheaf"] = "constant";
    } else {
        json boundary = json::array();
        for (const std::string& v : spec.sheaf.boundary) boundary.push_back(v);
        j["sheaf"] = json{{"kind", "boundary_trivial"}, {"boundary", boundary}};
    }
    if (spec.cocycle) {
        json eta = json::object();
        for (const Edge& e : spec.sheaf.base.edges())
            eta[e.id] = element_to_json(spec.sheaf.edge_stalk(e.id), spec.cocycle->at(e.id));
        j["cocycle"] = eta;
    }
    return j;
}

ParadoxSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& ex) {
        throw SpecError(path + ": " + ex.what());
    }
    return parse_spec(j);
}

Homomorphism parse_hom(const GroupDescriptor& src, const GroupDescriptor& tgt, const json& j) {
    require_object(j, "hom");
    std::string kind = parse_string(j.value("kind", json()), "hom.kind");
    try {
        if (kind == "identity") {
            check_keys(j, {"kind"}, {}, "hom");
            if (!(src == tgt)) throw SpecError("hom: identity requires equal groups");
            return identity_hom(src);
        }
        if (kind == "trivial") {
            check_keys(j, {"kind"}, {}, "hom");
            return trivial_hom(src, tgt);
        }
        if (kind == "matrix") {
            check_keys(j, {"kind", "entries"}, {}, "hom");
            const json& rows = j.at("entries");
            if (!rows.is_array() || rows.empty())
                throw SpecError("hom.entries: expected a non-empty array of rows");
            IntegerMatrix m(rows.size(), rows[0].size());
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (!rows[r].is_array() || rows[r].size() != m.cols())
                    throw SpecError("hom.entries: ragged rows");
                for (std::size_t c = 0; c < m.cols(); ++c)
                    m.at(r, c) = parse_int(rows[r][c], "hom.entries");
            }
            return hom_from_matrix(src, tgt, std::move(m));
        }
        if (kind == "generator") {
            check_keys(j, {"kind", "image"}, {}, "hom");
            return hom_from_generator(src, tgt, parse_element(tgt, j.at("image")));
        }
        if (kind == "table") {
            check_keys(j, {"kind", "images"}, {}, "hom");
            require_object(j.at("images"), "hom.images");
            std::vector<GroupElement> images;
            for (const GroupElement& a : elements(src)) {
                std::string name = element_to_string(src, a);
                if (!j.at("images").contains(name))
                    throw SpecError("hom.images: missing image for \"" + name + "\"");
                images.push_back(parse_element(tgt, j.at("images").at(name)));
            }
            if (j.at("images").size() != images.size())
                throw SpecError("hom.images: extra entries");
            return hom_from_table(src, tgt, std::move(images));
        }
        if (kind == "dihedral") {
            check_keys(j, {"kind", "t", "s"}, {}, "hom");
            if (src.kind != GroupKind::infinite_dihedral)
                throw SpecError("hom: dihedral rule requires a dihedral source");
            return hom_from_dihedral_gens(tgt, parse_element(tgt, j.at("t")),
                                          parse_element(tgt, j.at("s")));
        }
    } catch (const std::invalid_argument& ex) {
        throw SpecError(std::string("hom: ") + ex.what());
    }
    throw SpecError("hom.kind: unknown kind \"" + kind + "\"");
}

MorphismSpec load_morphism_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open morphism file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& ex) {
        throw SpecError(path + ": " + ex.what());
    }
    check_keys(j, {"forward", "backward"}, {}, "morphism");
    return MorphismSpec{j.at("forward"), j.at("backward")};
}

}  // namespace torsornet
