#pragma once

#include "json.hpp"
#include "torsornet/sheaf.hpp"

namespace torsornet {

/// Parse or validation failure; the message names the offending key or value.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// In-memory model of a paradox spec file: a named sheaf of groups over a
/// graph plus an optional cocycle.
struct ParadoxSpec {
    std::string name;
    NetworkSheaf sheaf;
    std::optional<Cochain1> cocycle;
};

GroupDescriptor parse_group(const nlohmann::json& j);
nlohmann::json group_to_json(const GroupDescriptor& g);

GroupElement parse_element(const GroupDescriptor& g, const nlohmann::json& j);
nlohmann::json element_to_json(const GroupDescriptor& g, const GroupElement& a);

/// Strict parsing: unknown keys, dangling ids, and malformed encodings all
/// raise SpecError.
ParadoxSpec parse_spec(const nlohmann::json& j);
nlohmann::json spec_to_json(const ParadoxSpec& spec);
ParadoxSpec load_spec(const std::string& path);

/// Homomorphism block: {"kind": "matrix"|"generator"|"table"|"dihedral"|
/// "trivial"|"identity", ...rule fields...}.
Homomorphism parse_hom(const GroupDescriptor& src, const GroupDescriptor& tgt,
                       const nlohmann::json& j);

/// Morphism spec file for compare: {"forward": hom block, "backward": hom block}.
struct MorphismSpec {
    nlohmann::json forward;
    nlohmann::json backward;
};
MorphismSpec load_morphism_spec(const std::string& path);

}  // namespace torsornet
