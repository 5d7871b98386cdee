#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zsf/sequence.hpp"

namespace zsf {

struct AtomVerdict {
    bool is_product_one = false;
    bool is_atom = false;
    /// Lexicographically least proper product-one T with S*T^[-1] product-one.
    std::optional<std::pair<Sequence, Sequence>> split;
};

/// Minimal product-one test with a splitting witness on failure.
AtomVerdict is_atom(const Sequence& s, std::size_t budget = default_budget());

enum class AtomStatus { not_product_one, splits, atom };

/// Allocation-free variant for search loops; `scratch` is reused.
AtomStatus atom_status(const FiniteGroup& g, std::span<const int> counts, ProductTable& scratch,
                       std::size_t budget = default_budget());

/// A group of element permutations (all of Aut(G), or a subgroup) used to
/// pick lexicographically least orbit representatives of count vectors.
class Symmetry {
public:
    explicit Symmetry(std::vector<Permutation> perms);
    static Symmetry automorphisms(const FiniteGroup& g);
    static Symmetry trivial(const FiniteGroup& g);

    /// Members mapping each of `preserved` onto itself.
    Symmetry stabilizing(std::span<const ElementSet> preserved) const;

    const std::vector<Permutation>& perms() const { return perms_; }
    std::size_t size() const { return perms_.size(); }

    bool is_canonical(std::span<const int> counts) const;
    std::vector<int> canonical(std::span<const int> counts) const;
    /// Distinct images, sorted.
    std::vector<std::vector<int>> orbit(std::span<const int> counts) const;

private:
    std::vector<Permutation> perms_;
    std::vector<Permutation> inverses_;
};

/// Lexicographically least count vector in the Aut(G)-orbit of S.
Sequence canonicalize(const Sequence& s);

struct CensusOptions {
    /// Terms restricted to this set (default: whole group).
    std::optional<ElementSet> allowed;
    /// Require at least `min_counted` terms from `counted`.
    ElementSet counted;
    int min_counted = 0;
    /// false selects the reference enumerator: every multiset, no symmetry,
    /// no identity exclusion, no abelianization filter.
    bool prune = true;
    int jobs = 1;
    std::size_t budget = default_budget();
};

struct CensusEntry {
    Sequence representative;
    std::size_t orbit_size = 1;
    std::vector<Sequence> orbit;  // sorted images of the representative
    double verdict_time_ms = 0.0;
};

struct CensusResult {
    GroupPtr group;
    int length = 0;
    std::size_t symmetry_size = 1;
    std::vector<CensusEntry> entries;  // sorted by representative counts

    std::size_t atom_count() const;
    /// Every atom of the census, orbits expanded, sorted.
    std::vector<Sequence> literal_atoms() const;
};

/// All atoms of a fixed length, one entry per orbit under the automorphisms
/// preserving `allowed` and `counted`.
CensusResult atom_census(const GroupPtr& g, int length, const CensusOptions& options = {});

/// Census at length D(G) (known formula value, otherwise searched).
CensusResult max_atom_census(const GroupPtr& g, std::optional<int> length = std::nullopt,
                             const CensusOptions& options = {});

struct DavenportResult {
    int value = 0;
    Sequence witness;
};

/// d(G) by depth-first search over product-one free multisets.
DavenportResult small_davenport(const GroupPtr& g, std::size_t budget = default_budget());
/// D(G): longest atom, searching lengths |G|, |G|-1, ... and stopping at the first non-empty census.
DavenportResult large_davenport(const GroupPtr& g, const CensusOptions& options = {});

/// D(G) for cyclic, odd/even dihedral (n >= 3) and dicyclic groups, from the closed forms.
std::optional<int> known_large_davenport(const FiniteGroup& g);

/// Every product-one free sequence over G of length >= min_length, in DFS order.
std::vector<Sequence> product_one_free_sequences(const GroupPtr& g, int min_length = 0,
                                                 std::size_t budget = default_budget());

}  // namespace zsf
