#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "torsornet/graph.hpp"
#include "torsornet/group.hpp"

namespace torsornet {

enum class SheafKind { constant, boundary_trivial, general };

/// A network sheaf of groups: stalks on vertices and edges, one restriction
/// homomorphism per incidence. A self-loop has distinct tail-side and
/// head-side incidences on its single endpoint.
struct NetworkSheaf {
    Multigraph base;
    SheafKind kind = SheafKind::general;
    GroupDescriptor group;  // the common stalk for constant / boundary_trivial
    std::vector<std::string> boundary;  // boundary_trivial only

    std::unordered_map<std::string, GroupDescriptor> vertex_stalks;
    std::unordered_map<std::string, GroupDescriptor> edge_stalks;
    std::unordered_map<std::string, Homomorphism> tail_restriction;  // edge id -> hom
    std::unordered_map<std::string, Homomorphism> head_restriction;

    const GroupDescriptor& vertex_stalk(const std::string& v) const;
    const GroupDescriptor& edge_stalk(const std::string& e) const;
    bool all_stalks_abelian() const;
};

NetworkSheaf constant_sheaf(Multigraph base, GroupDescriptor g);
/// Stalks at the boundary vertices are trivial, all others are G; restrictions
/// out of boundary vertices are the unique map into G, all others identity.
NetworkSheaf boundary_trivialized_sheaf(Multigraph base, GroupDescriptor g,
                                        std::vector<std::string> boundary);
/// Fully general sheaf; validates that every incidence has a restriction with
/// matching source and target stalks.
NetworkSheaf make_sheaf(Multigraph base,
                        std::unordered_map<std::string, GroupDescriptor> vertex_stalks,
                        std::unordered_map<std::string, GroupDescriptor> edge_stalks,
                        std::unordered_map<std::string, Homomorphism> tail_restriction,
                        std::unordered_map<std::string, Homomorphism> head_restriction);

using Cochain0 = std::unordered_map<std::string, GroupElement>;
using Cochain1 = std::unordered_map<std::string, GroupElement>;

void check_cochain0(const NetworkSheaf& s, const Cochain0& xi);
void check_cochain1(const NetworkSheaf& s, const Cochain1& eta);
Cochain0 identity_cochain0(const NetworkSheaf& s);
Cochain1 identity_cochain1(const NetworkSheaf& s);
bool cochain1_equal(const NetworkSheaf& s, const Cochain1& a, const Cochain1& b);

/// (delta xi)_e = F_tail(xi_tail)^-1 * F_head(xi_head); for abelian stalks this
/// is the usual head-minus-tail difference.
Cochain1 coboundary(const NetworkSheaf& s, const Cochain0& xi);

/// Gauge action on cocycles: eta'_e = F_tail(xi_tail)^-1 * eta_e * F_head(xi_head).
Cochain1 twist(const NetworkSheaf& s, const Cochain1& eta, const Cochain0& xi);

struct AbelianCohomology {
    AbelianGroupType h0, h1;
    IntegerMatrix delta;        // edge coordinates x vertex coordinates
    SmithNormalForm h1_snf;     // SNF of the H1 presentation matrix
};

/// H0 = ker delta, H1 = coker delta over the integers; finite cyclic stalk
/// factors enter as presentation relation columns.
AbelianCohomology abelian_cohomology(const NetworkSheaf& s);

struct HolonomyData {
    std::string basepoint;
    SpanningTree tree;
    std::vector<GroupElement> holonomies;  // aligned with fundamental_cycles
};

/// Ordered product of a constant-sheaf cocycle along a walk, inverting on
/// reverse steps.
GroupElement walk_product(const NetworkSheaf& s, const Cochain1& eta, const Walk& w);

/// One holonomy per fundamental cycle of the deterministic spanning tree.
/// Requires a constant sheaf on a connected graph.
HolonomyData holonomy(const NetworkSheaf& s, const Cochain1& eta,
                      const std::string& basepoint);

struct MaybeCochain0 {
    Decision decision = Decision::undecided;
    Cochain0 witness;  // valid when decision == yes
};

/// Searches for xi with delta(xi) = eta. Exact for constant sheaves, abelian
/// sheaves with matrix restrictions, and boundary-trivialized sheaves on
/// trees; "undecided" otherwise.
MaybeCochain0 is_coboundary(const NetworkSheaf& s, const Cochain1& eta);

/// Searches for xi with twist(eta, xi) = eta_prime.
MaybeCochain0 cohomologous(const NetworkSheaf& s, const Cochain1& eta,
                           const Cochain1& eta_prime);

struct H1Classes {
    std::size_t count = 0;
    std::vector<Cochain1> representatives;  // one per class, first cochain found
};

/// Brute-force partition of all of C^1 into gauge orbits for a finite constant
/// sheaf. Requires |G|^|E| <= 10^7.
H1Classes enumerate_h1_classes(const Multigraph& g, const GroupDescriptor& group);

/// For a boundary-trivialized sheaf on a tree whose boundary is the leaf set:
/// the products of eta along the walks from the first leaf to every other
/// leaf, in leaf declaration order. A complete cohomology invariant.
std::vector<GroupElement> tree_relative_invariant(const NetworkSheaf& s, const Cochain1& eta);

struct BoundaryObstruction {
    std::optional<Cochain0> section;       // extension of beta, when one exists
    std::vector<GroupElement> obstruction; // relative invariant tuple otherwise
};

/// Extends prescribed leaf values beta to a global section of the constant
/// sheaf G on a connected graph, or reports the obstruction tuple.
BoundaryObstruction boundary_obstruction(const Multigraph& g, const GroupDescriptor& group,
                                         const std::unordered_map<std::string, GroupElement>& beta);

}  // namespace torsornet
