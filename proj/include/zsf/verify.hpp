#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsf/atoms.hpp"

namespace zsf {

/// Closed-form families of maximal and reflection-supported atoms over
/// dihedral and dicyclic groups.
enum class FamilyTag { thm41a, thm41b, thm42, thm43, prop32a, prop32b, prop33a, prop33b };

std::string to_string(FamilyTag tag);
std::optional<FamilyTag> parse_family_tag(std::string_view s);

struct FamilySpec {
    FamilyTag tag = FamilyTag::thm41a;
    /// Pins named parameters (i, j, x, y, v, w) in canonical coordinates;
    /// unnamed parameters range over every admissible value.
    std::map<std::string, int> fixed;
};

/// Admissibility of a (x, y, v, w) tuple for the n >= 6 reflection family over D_2n.
bool prop32b_admissible(int n, int x, int y, int v, int w);

/// Every sequence of the family, over all generating pairs (alpha, tau)
/// satisfying the group's presentation: the canonical-coordinate forms
/// pushed through every automorphism (for the reflection families, every
/// automorphism fixing <alpha> setwise). Sorted, without duplicates.
/// Throws DomainError on a group kind or parity the family does not cover.
std::vector<Sequence> generate_family(const GroupPtr& g, const FamilySpec& spec);

/// Characterization statements checked against censuses.
enum class Statement { thm41, thm42, thm43, prop32, prop33, prop32_in_particular, prop33_in_particular };

std::string to_string(Statement s);
std::optional<Statement> parse_statement(std::string_view s);

struct CharacterizationReport {
    std::string statement;
    std::string group;
    std::size_t family_size = 0;
    std::size_t census_size = 0;
    bool equal = false;
    std::vector<Sequence> missing;  // atoms found by the census but absent from the family
    std::vector<Sequence> extra;    // family members the census did not produce
    /// Atoms contradicting the non-existence clause (reflection part too long).
    std::vector<Sequence> in_particular_counterexamples;
};

CharacterizationReport verify_characterization(const GroupPtr& g, Statement statement, int jobs = 1);

/// Reflection coset G \ <alpha> of a presented dihedral or dicyclic group.
ElementSet reflections(const FiniteGroup& g);
/// Rotation subgroup <alpha>.
ElementSet rotations(const FiniteGroup& g);

struct DgmReport {
    int lhs = 0;  // |Sigma_n(S)|
    int rhs = 0;
    bool holds = false;
    ElementSet stabilizer;
};

/// Lower bound on |Sigma_n(S)| over an abelian group via multiplicities
/// modulo the stabilizer H of Sigma_n(S):
///   |Sigma_n(S)| >= (sum over cosets of min(n, v_coset) - n + 1) * |H|.
DgmReport check_dgm_bound(const Sequence& s, int n);

int group_exponent(const FiniteGroup& g);

/// Erdos-Ginzburg-Ziv constant by exhaustive search over canonical
/// sequences. Groups above order 9 need allow_large.
int egz_constant(const GroupPtr& g, bool allow_large = false, std::size_t budget = default_budget());

}  // namespace zsf
