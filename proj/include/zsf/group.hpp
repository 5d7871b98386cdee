#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zsf/element_set.hpp"
#include "zsf/errors.hpp"

namespace zsf {

inline constexpr int kMaxGroupOrder = 64;

enum class GroupKindTag { cyclic, dihedral, dicyclic, generic };

struct GroupKind {
    GroupKindTag tag = GroupKindTag::generic;
    int n = 0;  // presentation parameter; unused for generic

    friend bool operator==(const GroupKind&, const GroupKind&) = default;
};

std::string to_string(const GroupKind& kind);

/// Finite group given by a validated Cayley table.
///
/// Presented kinds use a fixed element encoding:
///   cyclic(n):   i -> i (additive model, names "0".."n-1")
///   dihedral(n): i in [0,n) -> a^i, i in [n,2n) -> a^(i-n) t
///   dicyclic(n): i in [0,2n) -> a^i, i in [2n,4n) -> a^(i-2n) t
/// Instances are immutable once constructed.
class FiniteGroup {
public:
    static FiniteGroup cyclic(int n);
    static FiniteGroup dihedral(int n);
    static FiniteGroup dicyclic(int n);

    /// Validates `table` (row-major, order*order entries). Identity is located
    /// when not supplied; names default to "g0", "g1", ...
    static FiniteGroup from_table(int order, std::vector<int> table,
                                  std::optional<Element> identity = std::nullopt,
                                  std::vector<std::string> names = {});

    int order() const { return order_; }
    Element identity() const { return identity_; }
    const GroupKind& kind() const { return kind_; }

    Element multiply(Element a, Element b) const {
        check(a);
        check(b);
        return table_[static_cast<std::size_t>(a * order_ + b)];
    }
    Element inverse(Element a) const {
        check(a);
        return inverses_[static_cast<std::size_t>(a)];
    }
    Element power(Element a, int k) const;
    int element_order(Element a) const;

    const std::string& name(Element a) const {
        check(a);
        return names_[static_cast<std::size_t>(a)];
    }
    const std::vector<std::string>& names() const { return names_; }
    /// Index of the element with display name `name`, if any.
    std::optional<Element> find(std::string_view name) const;

    /// {x*g : x in s}, via precomputed byte tables.
    ElementSet right_multiply(ElementSet s, Element g) const {
        ElementSet out;
        const auto* tab = &rmul_[static_cast<std::size_t>(g) * chunks_ * 256];
        std::uint64_t bits = s.bits();
        for (int c = 0; c < chunks_ && bits != 0; ++c, bits >>= 8)
            out |= ElementSet(tab[static_cast<std::size_t>(c) * 256 + (bits & 0xFF)]);
        return out;
    }
    /// {g*x : x in s}
    ElementSet left_multiply(Element g, ElementSet s) const;

    ElementSet all() const { return ElementSet::first_n(order_); }
    bool is_abelian() const;
    bool contains(Element a) const { return a >= 0 && a < order_; }

    /// Generators of the rotation subgroup and the reflection for presented
    /// dihedral/dicyclic kinds (canonical alpha, tau).
    Element alpha() const;
    Element tau() const;
    /// Index of alpha^i * tau^s in the canonical encoding.
    Element presented(int i, int s) const;

    const std::vector<int>& table() const { return table_; }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.order_ == b.order_ && a.identity_ == b.identity_ && a.table_ == b.table_;
    }

private:
    FiniteGroup() = default;
    void check(Element a) const {
        if (a < 0 || a >= order_) throw ValidationError("element index out of range: " + std::to_string(a));
    }
    void finalize();

    int order_ = 0;
    Element identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverses_;
    std::vector<std::string> names_;
    GroupKind kind_;
    int chunks_ = 0;
    std::vector<std::uint64_t> rmul_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Direct product with pair names "(x,y)"; element (i,j) has index i*|H|+j.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Parses "cyclic:5", "dihedral:3", "dicyclic:2", "abelian:2x4".
FiniteGroup build_group(std::string_view spec);

ElementSet generated_subgroup(const FiniteGroup& g, ElementSet seed);
/// {g : g*subset = subset}. Throws DomainError on an empty subset.
ElementSet left_stabilizer(const FiniteGroup& g, ElementSet subset);
ElementSet commutator_subgroup(const FiniteGroup& g);
bool is_subgroup(const FiniteGroup& g, ElementSet h);
bool is_normal_subgroup(const FiniteGroup& g, ElementSet n);
bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const std::vector<Element>& map);

struct Quotient {
    FiniteGroup group;
    std::vector<Element> projection;  // element of G -> coset index in the quotient
};

/// G/N with cosets indexed by their least member. Throws DomainError when N is not normal.
Quotient quotient(const FiniteGroup& g, ElementSet normal);

using Permutation = std::vector<Element>;

/// Small generating set chosen greedily (largest orders first).
std::vector<Element> generating_set(const FiniteGroup& g);

/// All automorphisms as element permutations, found by backtracking over
/// generator images and sorted lexicographically (identity first). Throws
/// CapacityError above `max_count` automorphisms.
std::vector<Permutation> automorphism_group(const FiniteGroup& g, std::size_t max_count = 1'000'000);

}  // namespace zsf
