#pragma once

#include "torsornet/sheaf.hpp"

namespace torsornet {

/// Network torsor represented intensionally by its defining cocycle. Stalks
/// are the underlying sets of the structure groups, with the group acting by
/// left multiplication; the tail-side restriction is the identity on elements
/// and the head-side restriction is g -> g * eta_e^-1.
struct Torsor {
    NetworkSheaf sheaf;
    Cochain1 cocycle;
};

Torsor torsor_from_cocycle(const NetworkSheaf& sheaf, const Cochain1& eta);

/// Head-side restriction of a stalk element across an edge.
GroupElement head_restrict(const Torsor& t, const std::string& edge, const GroupElement& p);

/// Composes the edge identifications along a walk: forward crossings multiply
/// by eta_e on the right, reverse crossings by eta_e^-1. Transport around a
/// fundamental cycle from the basepoint is right multiplication by the
/// holonomy. Constant sheaves only.
GroupElement transport(const Torsor& t, const Walk& w, const GroupElement& p);

/// A global section, built from a coboundary witness; Decision::no when the
/// torsor class is non-trivial, undecided when the configuration is
/// unsupported.
struct SectionResult {
    Decision decision = Decision::undecided;
    Cochain0 section;  // valid when decision == yes
};

SectionResult global_sections(const Torsor& t);

/// Stalk maps of a torsor morphism: p -> p * xi_v on the vertex stalk at v
/// (edge stalks inherit the tail-side multiplier).
struct TorsorMorphism {
    Cochain0 xi;
};

GroupElement morphism_apply(const Torsor& t, const TorsorMorphism& m, const std::string& vertex,
                            const GroupElement& p);

struct TorsorIsoResult {
    Decision decision = Decision::undecided;
    TorsorMorphism morphism;  // valid when decision == yes
};

/// Delegates to cohomologous on the defining cocycles; verifies the morphism
/// laws on the reconstructed witness. Requires the same base and sheaf.
TorsorIsoResult torsors_isomorphic(const Torsor& a, const Torsor& b);

}  // namespace torsornet
