#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsf/group.hpp"

namespace zsf {

/// Finite unordered sequence (multiset) over a group, stored as a
/// multiplicity vector indexed by element.
class Sequence {
public:
    explicit Sequence(GroupPtr group);
    Sequence(GroupPtr group, std::vector<int> counts);
    static Sequence from_terms(GroupPtr group, std::span<const Element> terms);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& group_ptr() const { return group_; }
    const std::vector<int>& counts() const { return counts_; }

    int count(Element g) const;
    int length() const;
    ElementSet support() const;
    int max_multiplicity() const;
    bool empty() const { return length() == 0; }

    bool divides(const Sequence& other) const;
    /// Terms in increasing element order, repeated by multiplicity.
    std::vector<Element> terms() const;

    Sequence& add(Element g, int k = 1);
    /// S * T
    Sequence operator*(const Sequence& other) const;
    /// S * T^[-1]; throws DomainError unless T | S.
    Sequence without(const Sequence& other) const;
    /// g_1^-1 * ... * g_l^-1
    Sequence inverse() const;
    /// Image under an element permutation (an automorphism).
    Sequence permuted(const Permutation& perm) const;

    /// Terms as "name" or "(name)" when the name has a space or a caret,
    /// multiplicities as "^[k]", e.g. "(a^2)^[4] t^[2]".
    std::string to_string() const;

    friend bool operator==(const Sequence& a, const Sequence& b) { return a.counts_ == b.counts_; }
    friend std::strong_ordering operator<=>(const Sequence& a, const Sequence& b) { return a.counts_ <=> b.counts_; }

private:
    GroupPtr group_;
    std::vector<int> counts_;
};

/// Default cap on the number of sub-multisets a ProductTable may allocate:
/// 2^24, overridable by the ZSF_BUDGET environment variable.
std::size_t default_budget();

/// Product sets of every sub-multiset of a base sequence.
///
/// Sub-multisets are keyed by a mixed-radix rank over the support (radix
/// count+1, first support element most significant), so rank order is the
/// lexicographic order of count vectors and every T\g precedes T.
class ProductTable {
public:
    ProductTable() = default;
    ProductTable(const FiniteGroup& group, std::span<const int> counts, std::size_t budget = default_budget());

    /// Rebuilds for new counts, reusing storage.
    void assign(const FiniteGroup& group, std::span<const int> counts, std::size_t budget = default_budget());

    std::size_t size() const { return products_.size(); }
    std::size_t full_rank() const { return products_.size() - 1; }
    std::size_t complement(std::size_t rank) const { return full_rank() - rank; }

    ElementSet products(std::size_t rank) const { return products_[rank]; }
    int length(std::size_t rank) const { return lengths_[rank]; }
    /// Pi(S): products over all non-empty sub-multisets.
    ElementSet all_products() const { return all_; }
    /// Pi_n(S); empty for n outside [1, |S|].
    ElementSet products_of_length(int n) const;

    const std::vector<Element>& support() const { return support_; }
    const std::vector<std::size_t>& weights() const { return weights_; }
    /// Digit of support position p in `rank`.
    int digit(std::size_t rank, std::size_t p) const {
        return static_cast<int>((rank / weights_[p]) % static_cast<std::size_t>(radix_[p]));
    }
    /// Full-group multiplicity vector of the sub-multiset with this rank.
    std::vector<int> counts_of(std::size_t rank) const;
    std::size_t rank_of(std::span<const int> counts) const;

    /// Visits every divisor rank of `rank` (including 0 and itself) in increasing order.
    template <typename F>
    void for_each_divisor(std::size_t rank, F&& f) const {
        const std::size_t k = support_.size();
        std::size_t limit_digits[kMaxGroupOrder];
        std::size_t cur[kMaxGroupOrder] = {};
        for (std::size_t p = 0; p < k; ++p) limit_digits[p] = static_cast<std::size_t>(digit(rank, p));
        std::size_t r = 0;
        while (true) {
            f(r);
            bool done = true;
            for (std::size_t p = k; p-- > 0;) {
                if (cur[p] < limit_digits[p]) {
                    ++cur[p];
                    r += weights_[p];
                    done = false;
                    break;
                }
                r -= cur[p] * weights_[p];
                cur[p] = 0;
            }
            if (done) return;
        }
    }

    /// An ordering of the sub-multiset `rank` whose product is `target`, if any.
    std::optional<std::vector<Element>> ordering(const FiniteGroup& group, std::size_t rank, Element target) const;

private:
    int order_ = 0;
    std::vector<Element> support_;
    std::vector<int> radix_;
    std::vector<std::size_t> weights_;
    std::vector<ElementSet> products_;
    std::vector<std::uint16_t> lengths_;
    std::vector<ElementSet> by_length_;
    ElementSet all_;
};

/// pi(S)
ElementSet product_set(const Sequence& s, std::size_t budget = default_budget());
/// Pi_n(S) when n is given, otherwise Pi(S). Throws DomainError for n outside [1, |S|].
ElementSet subsequence_products(const Sequence& s, std::optional<int> n = std::nullopt,
                                std::size_t budget = default_budget());
/// Sigma_n(S) or Sigma(S) over an abelian group; DomainError otherwise.
ElementSet sigma_variants(const Sequence& s, std::optional<int> n = std::nullopt,
                          std::size_t budget = default_budget());

struct Classification {
    bool product_one = false;
    bool product_one_free = false;
    bool squarefree = false;
};
Classification classify(const Sequence& s, std::size_t budget = default_budget());

/// An explicit ordering of S multiplying to `target` (identity by default).
std::optional<std::vector<Element>> product_ordering(const Sequence& s, std::optional<Element> target = std::nullopt,
                                                     std::size_t budget = default_budget());

struct SmoothCertificate {
    Element g = 0;
    std::vector<int> coefficients;  // n_1 <= ... <= n_l, n_1 = 1
    int m = 0;                      // sum of coefficients

    friend bool operator==(const SmoothCertificate&, const SmoothCertificate&) = default;
};

/// g-smoothness over a cyclic group. With g given, checks that definition;
/// otherwise tries every generator in index order and returns the first hit.
std::optional<SmoothCertificate> smoothness(const Sequence& s, std::optional<Element> g = std::nullopt);

/// Termwise image under a homomorphism into `target`; DomainError when `map`
/// is not a homomorphism.
Sequence transform(const Sequence& s, GroupPtr target, const std::vector<Element>& map);

}  // namespace zsf
