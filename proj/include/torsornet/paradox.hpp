#pragma once

#include <utility>

#include "torsornet/torsor.hpp"

namespace torsornet {

/// A paradox: a base graph, a sheaf of groups, and a certified non-trivial
/// cohomology class represented by a cocycle.
struct Paradox {
    std::string name;
    NetworkSheaf sheaf;
    Cochain1 cocycle;
};

/// Validates non-triviality via is_coboundary; constructing a paradox from a
/// trivial or undecidable class is an error.
Paradox make_paradox(std::string name, NetworkSheaf sheaf, Cochain1 cocycle);

/// Cellular map between multigraphs: vertices to vertices, edges to walks.
struct GraphMap {
    std::unordered_map<std::string, std::string> vertex_map;
    std::unordered_map<std::string, Walk> edge_map;
};

void check_graph_map(const Multigraph& src, const Multigraph& dst, const GraphMap& f);
GraphMap identity_graph_map(const Multigraph& g);
/// Apply f, then g.
GraphMap compose_graph_maps(const Multigraph& x1, const Multigraph& x2, const Multigraph& x3,
                            const GraphMap& f, const GraphMap& g);

/// (f^* eta2)_e = product of eta2 along the image walk of e. Constant target
/// sheaf; the result lives over the same group on the source graph.
Cochain1 pullback_cocycle(const Multigraph& x1, const NetworkSheaf& s2, const GraphMap& f,
                          const Cochain1& eta2);

/// Morphism P1 -> P2: a graph map X1 -> X2 and a group homomorphism G2 -> G1.
struct ParadoxMorphism {
    GraphMap f;
    Homomorphism phi;  // structure group of P2 -> structure group of P1
};

/// Coherence check: phi applied edgewise to f^* eta2 must be cohomologous to
/// eta1. Returns the gauge witness on success.
MaybeCochain0 check_morphism(const ParadoxMorphism& m, const Paradox& p1, const Paradox& p2);

enum class IsoVerdict { isomorphic, not_isomorphic, undecided };

std::string iso_verdict_to_string(IsoVerdict v);

struct IsoResult {
    IsoVerdict verdict = IsoVerdict::undecided;
    std::string detail;  // separating invariant, witness description, or reason
};

/// Paradox isomorphism decision ladder: b1 gate, gcd invariant for circles
/// over Z^n, automorphism search for circles over finite groups, Aut-orbit
/// comparison for boundary-trivialized trees; otherwise invariants are
/// compared and agreement yields "undecided", never a guess.
IsoResult are_isomorphic(const Paradox& p1, const Paradox& p2);

/// Both directional pushforward checks over the identity graph map:
/// phi_*[eta1] = [eta2] and psi_*[eta2] = [eta1].
Decision fiber_equivalent(const Paradox& p1, const Paradox& p2, const Homomorphism& phi,
                          const Homomorphism& psi);

struct FiberSearchResult {
    Decision decision = Decision::undecided;
    std::optional<std::pair<Homomorphism, Homomorphism>> witness;
};

/// Exhaustive search over homomorphism pairs for finite structure groups; a
/// negative answer is definitive in the finite case.
FiberSearchResult search_fiber_equivalence(const Paradox& p1, const Paradox& p2);

/// A word in named generators: (generator, exponent) letters.
using Word = std::vector<std::pair<std::string, int>>;

/// Every relator must evaluate to the identity under the generator images.
bool validate_presentation_rep(const GroupDescriptor& g, const std::vector<Word>& relators,
                               const std::unordered_map<std::string, GroupElement>& images);

struct TreeBoundaryClasses {
    std::size_t count = 0;  // non-trivial Aut(X)-orbits
    std::vector<std::unordered_map<std::string, GroupElement>> representatives;  // one beta each
};

/// Counts non-trivial boundary-data classes on a tree: beta in G^leaves up to
/// the relative-invariant identification and the Aut(X) action, implemented
/// by relabeling leaves and recomputing the invariant tuple.
TreeBoundaryClasses classify_tree_boundary(const Multigraph& tree, const GroupDescriptor& g,
                                           const std::vector<GraphAutomorphism>& automorphisms);
TreeBoundaryClasses classify_tree_boundary(const Multigraph& tree, const GroupDescriptor& g);

}  // namespace torsornet
