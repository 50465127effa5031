#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torsornet/intmat.hpp"

namespace torsornet {

enum class GroupKind { free_abelian, cyclic, finite_table, infinite_dihedral, direct_product };

/// Multiplication table of a finite group, with verified identity, inverses
/// and (for |G| <= 256) associativity.
struct FiniteTable {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table;  // table[i][j] = index of g_i * g_j
    int identity = -1;
    std::vector<int> inverse;
};

struct GroupDescriptor {
    GroupKind kind = GroupKind::free_abelian;
    std::size_t rank = 0;                         // free_abelian
    i64 modulus = 0;                              // cyclic
    std::shared_ptr<const FiniteTable> table;     // finite_table
    std::vector<GroupDescriptor> factors;         // direct_product

    bool operator==(const GroupDescriptor& o) const;
    bool is_abelian() const;
    bool is_trivial() const;
    std::optional<i64> order() const;  // nullopt when infinite
    std::string to_string() const;
};

GroupDescriptor free_abelian(std::size_t rank);
GroupDescriptor cyclic(i64 order);
GroupDescriptor infinite_dihedral();
GroupDescriptor trivial_group();  // free_abelian of rank 0
GroupDescriptor finite_table_group(std::vector<std::string> names,
                                   std::vector<std::vector<int>> table);
GroupDescriptor direct_product(std::vector<GroupDescriptor> factors);
/// Symmetric group S_n as a finite table; elements named by one-line notation.
GroupDescriptor symmetric_group(std::size_t n);
/// The rotation group of the cube (order 24), as permutations of the four
/// long diagonals.
GroupDescriptor cube_rotation_group();

/// Tagged payload; which fields are meaningful depends on the descriptor kind.
struct GroupElement {
    std::vector<i64> vec;              // free_abelian
    i64 residue = 0;                   // cyclic, in [0, m)
    int index = 0;                     // finite_table
    i64 dih_h = 0;                     // infinite_dihedral
    int dih_eps = 1;                   // infinite_dihedral, +1 or -1
    std::vector<GroupElement> parts;   // direct_product
};

void check_element(const GroupDescriptor& g, const GroupElement& a);  // throws on mismatch

GroupElement identity(const GroupDescriptor& g);
GroupElement mul(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupDescriptor& g, const GroupElement& a);
bool eq(const GroupDescriptor& g, const GroupElement& a, const GroupElement& b);
GroupElement power(const GroupDescriptor& g, const GroupElement& a, i64 n);
bool is_identity(const GroupDescriptor& g, const GroupElement& a);
std::string element_to_string(const GroupDescriptor& g, const GroupElement& a);

// Element constructors for the built-in kinds.
GroupElement fa_element(std::vector<i64> coords);
GroupElement cyclic_element(const GroupDescriptor& g, i64 value);
GroupElement dihedral_element(i64 h, int eps);
GroupElement table_element(const GroupDescriptor& g, const std::string& name);
GroupElement product_element(std::vector<GroupElement> parts);

/// All elements of a finite group, in a fixed enumeration order.
std::vector<GroupElement> elements(const GroupDescriptor& g);
std::size_t element_index(const GroupDescriptor& g, const GroupElement& a);

/// Small generating set (all of G for finite_table kinds, canonical
/// generators otherwise).
std::vector<GroupElement> generators(const GroupDescriptor& g);

// --- abelian coordinates -----------------------------------------------------
// A f.g. abelian descriptor flattens to a list of factor moduli (0 for Z).

bool abelian_flattenable(const GroupDescriptor& g);
std::vector<i64> abelian_moduli(const GroupDescriptor& g);
std::vector<i64> abelian_coords(const GroupDescriptor& g, const GroupElement& a);
GroupElement abelian_from_coords(const GroupDescriptor& g, const std::vector<i64>& coords);

// --- homomorphisms -----------------------------------------------------------

enum class HomRule { abelian_matrix, cyclic_gen, element_table, dihedral_gens, product };

/// Verified group homomorphism. The rule representation depends on the source
/// kind; validity (respecting relations) is checked at construction.
struct Homomorphism {
    GroupDescriptor source, target;
    HomRule rule = HomRule::abelian_matrix;

    IntegerMatrix matrix;                 // abelian source: target coords x source coords
    GroupElement gen_image;               // cyclic source
    std::vector<GroupElement> images;     // element_table: aligned with elements(source)
    GroupElement t_image, s_image;        // infinite_dihedral source
    std::vector<Homomorphism> components; // direct_product source
};

Homomorphism hom_from_matrix(const GroupDescriptor& src, const GroupDescriptor& tgt,
                             IntegerMatrix m);
Homomorphism hom_from_generator(const GroupDescriptor& src, const GroupDescriptor& tgt,
                                GroupElement gen_image);
Homomorphism hom_from_table(const GroupDescriptor& src, const GroupDescriptor& tgt,
                            std::vector<GroupElement> images);
Homomorphism hom_from_dihedral_gens(const GroupDescriptor& tgt, GroupElement t_image,
                                    GroupElement s_image);
Homomorphism hom_from_components(const GroupDescriptor& src, const GroupDescriptor& tgt,
                                 std::vector<Homomorphism> components);
Homomorphism identity_hom(const GroupDescriptor& g);
Homomorphism trivial_hom(const GroupDescriptor& src, const GroupDescriptor& tgt);
/// (h, eps) -> (h mod 2, eps) in Z_2 x Z_2; the abelianization of the
/// infinite dihedral group.
Homomorphism dihedral_abelianization();

GroupElement hom_apply(const Homomorphism& phi, const GroupElement& a);
bool hom_is_bijective(const Homomorphism& phi);  // finite groups only

// --- conjugacy ---------------------------------------------------------------

enum class Decision { yes, no, undecided };

std::string decision_to_string(Decision d);

struct ConjugacyResult {
    Decision decision = Decision::undecided;
    GroupElement conjugator;  // valid when decision == yes
};

/// Searches for x with x^-1 * t1[i] * x = t2[i] for all i. Exact for abelian
/// kinds, finite tables, the infinite dihedral group, and direct products of
/// these; "undecided" otherwise, never a wrong answer.
ConjugacyResult simultaneous_conjugacy(const GroupDescriptor& g,
                                       const std::vector<GroupElement>& t1,
                                       const std::vector<GroupElement>& t2);

// --- homomorphism enumeration ------------------------------------------------

/// All homomorphisms between finite groups by generator-image search.
/// Requires |src| * |tgt| <= 10^6; throws on infinite groups.
std::vector<Homomorphism> enumerate_homomorphisms(const GroupDescriptor& src,
                                                  const GroupDescriptor& tgt);
std::vector<Homomorphism> enumerate_automorphisms(const GroupDescriptor& g);

}  // namespace torsornet
