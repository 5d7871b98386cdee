#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsf/atoms.hpp"

namespace zsf {

/// Finite set of naturals below LengthSet::capacity.
class LengthSet {
public:
    static constexpr int capacity = 128;

    LengthSet() = default;
    static LengthSet single(int k);

    bool empty() const { return bits_ == 0; }
    bool contains(int k) const { return k >= 0 && k < capacity && ((bits_ >> k) & 1) != 0; }
    void insert(int k);
    int size() const;
    /// Throws DomainError when empty.
    int min() const;
    int max() const;
    std::vector<int> elements() const;

    /// {x + k : x in this}; throws CapacityError on overflow.
    LengthSet shifted(int k) const;
    /// Sumset {a + b}.
    LengthSet operator+(const LengthSet& other) const;
    LengthSet& operator|=(const LengthSet& other) {
        bits_ |= other.bits_;
        return *this;
    }
    friend LengthSet operator|(LengthSet a, const LengthSet& b) { return a |= b; }
    friend bool operator==(const LengthSet&, const LengthSet&) = default;

    bool subset_of(const LengthSet& other) const { return (bits_ & ~other.bits_) == 0; }
    /// "{2, 3}"
    std::string to_string() const;

private:
    unsigned __int128 bits_ = 0;
};

/// L(B): lengths of all factorizations of a product-one B into atoms.
/// L(empty) = {0}. Throws DomainError when B is not product-one.
LengthSet length_set(const Sequence& b, std::size_t budget = default_budget());

struct UnionsReport {
    int k = 0;
    int max_len = 0;      // only B with |B| <= max_len were examined
    LengthSet lengths;    // under-approximation of U_k(G)
    std::size_t examined = 0;  // canonical product-one B inspected
};

/// Union of L(B) over product-one B with |B| <= max_len and k in L(B),
/// one B per automorphism orbit.
UnionsReport unions_bounded(const GroupPtr& g, int k, int max_len, int jobs = 1,
                            std::size_t budget = default_budget());

struct LengthWitness {
    Sequence b;
    int attained = 0;  // max L(B); k lies in L(B) as well
};

struct RhoLambdaReport {
    int k = 0;
    std::optional<int> exact;
    int lower = 0;
    int upper = 0;
    std::optional<LengthWitness> lower_witness;
    std::string source;
};

/// D(G) from the closed forms, else by search.
int davenport_value(const GroupPtr& g);

/// A minimal product-one sequence of length D(G).
Sequence maximal_atom(const GroupPtr& g);

/// rho_k(G) = max U_k(G): exact where a formula settles it, bounds otherwise.
RhoLambdaReport rho(const GroupPtr& g, int k, std::size_t budget = default_budget());

/// lambda_k(G) = min U_k(G), with k = l D(G) + j.
RhoLambdaReport lambda(const GroupPtr& g, int k, std::size_t budget = default_budget());

/// B = V * V^-1 for a length-j atom V cut from a maximal atom, with
/// {2, j} in L(B). Throws DomainError when j < 2 or j > D(G).
Sequence witness_pair(const GroupPtr& g, int j, std::size_t budget = default_budget());

}  // namespace zsf
