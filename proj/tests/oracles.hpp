#pragma once

// Brute-force reference implementations used to cross-check the library.
// Nothing here touches ProductTable, censuses or the length-set DP: products
// come from explicit permutations, atoms from explicit splits.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "zsf/group.hpp"

namespace oracle {

using zsf::Element;
using zsf::FiniteGroup;
using Counts = std::vector<int>;

/// alpha^i tau^s for the dihedral presentation, straight from the relations.
inline std::pair<int, int> dihedral_mul(int n, std::pair<int, int> x, std::pair<int, int> y) {
    const auto [i, s] = x;
    const auto [j, t] = y;
    const int e = s == 0 ? i + j : i - j;
    return {((e % n) + n) % n, (s + t) % 2};
}

/// Same for the dicyclic presentation (tau^2 = alpha^n).
inline std::pair<int, int> dicyclic_mul(int n, std::pair<int, int> x, std::pair<int, int> y) {
    const int m = 2 * n;
    const auto [i, s] = x;
    const auto [j, t] = y;
    int e = s == 0 ? i + j : i - j;
    if (s == 1 && t == 1) e += n;
    return {((e % m) + m) % m, (s + t) % 2};
}

inline std::vector<Element> terms_of(const Counts& c) {
    std::vector<Element> t;
    for (std::size_t x = 0; x < c.size(); ++x)
        for (int k = 0; k < c[x]; ++k) t.push_back(static_cast<Element>(x));
    return t;
}

/// pi(S) over every distinct ordering.
inline std::set<Element> products(const FiniteGroup& g, const Counts& c) {
    auto t = terms_of(c);
    std::sort(t.begin(), t.end());
    std::set<Element> out;
    do {
        Element p = g.identity();
        for (Element x : t) p = g.multiply(p, x);
        out.insert(p);
    } while (std::next_permutation(t.begin(), t.end()));
    return out;
}

inline bool product_one(const FiniteGroup& g, const Counts& c) { return products(g, c).count(g.identity()) > 0; }

/// Calls f(sub) for every sub-multiset (including empty and full).
inline void for_each_submultiset(const Counts& c, const std::function<void(const Counts&)>& f) {
    Counts cur(c.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == c.size()) {
            f(cur);
            return;
        }
        for (int k = 0; k <= c[pos]; ++k) {
            cur[pos] = k;
            rec(pos + 1);
        }
        cur[pos] = 0;
    };
    rec(0);
}

inline int length(const Counts& c) { return std::accumulate(c.begin(), c.end(), 0); }

inline Counts minus(const Counts& a, const Counts& b) {
    Counts out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

/// Pi(S): union of pi(T) over non-empty T | S.
inline std::set<Element> all_products(const FiniteGroup& g, const Counts& c) {
    std::set<Element> out;
    for_each_submultiset(c, [&](const Counts& t) {
        if (length(t) == 0) return;
        auto p = products(g, t);
        out.insert(p.begin(), p.end());
    });
    return out;
}

/// Minimal product-one test by exhaustive splitting.
inline bool is_atom(const FiniteGroup& g, const Counts& c) {
    const int len = length(c);
    if (len == 0 || !product_one(g, c)) return false;
    bool split = false;
    for_each_submultiset(c, [&](const Counts& t) {
        if (split) return;
        const int lt = length(t);
        if (lt == 0 || lt == len) return;
        if (product_one(g, t) && product_one(g, minus(c, t))) split = true;
    });
    return !split;
}

/// L(B) by recursion over atom divisors containing the first support element.
/// Atoms longer than |G| do not exist, which keeps the permutation search small.
class Lengths {
public:
    explicit Lengths(const FiniteGroup& g) : g_(g) {}

    std::set<int> operator()(const Counts& b) {
        if (length(b) == 0) return {0};
        if (auto it = memo_.find(b); it != memo_.end()) return it->second;
        std::size_t pivot = 0;
        while (b[pivot] == 0) ++pivot;
        std::set<int> out;
        for_each_submultiset(b, [&](const Counts& a) {
            if (a[pivot] == 0 || length(a) > g_.order()) return;
            if (!atom(a)) return;
            const Counts rest = minus(b, a);
            if (length(rest) > 0 && !product_one(g_, rest)) return;
            for (int l : (*this)(rest)) out.insert(l + 1);
        });
        memo_[b] = out;
        return out;
    }

private:
    bool atom(const Counts& a) {
        if (auto it = atoms_.find(a); it != atoms_.end()) return it->second;
        return atoms_[a] = is_atom(g_, a);
    }
    const FiniteGroup& g_;
    std::map<Counts, std::set<int>> memo_;
    std::map<Counts, bool> atoms_;
};

/// Sigma_n(S) (n = 0: every non-empty length) over an abelian group.
inline std::set<Element> sigma(const FiniteGroup& g, const Counts& c, int n = 0) {
    std::set<Element> out;
    for_each_submultiset(c, [&](const Counts& t) {
        const int lt = length(t);
        if (lt == 0 || (n > 0 && lt != n)) return;
        Element s = g.identity();
        for (Element x : terms_of(t)) s = g.multiply(s, x);
        out.insert(s);
    });
    return out;
}

/// Closure of a seed under multiplication.
inline std::set<Element> closure(const FiniteGroup& g, std::set<Element> seed) {
    seed.insert(g.identity());
    bool grown = true;
    while (grown) {
        grown = false;
        std::vector<Element> cur(seed.begin(), seed.end());
        for (Element a : cur)
            for (Element b : cur)
                if (seed.insert(g.multiply(a, b)).second) grown = true;
    }
    return seed;
}

inline std::set<Element> commutators(const FiniteGroup& g) {
    std::set<Element> seed;
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b)
            seed.insert(g.multiply(g.multiply(g.inverse(a), g.inverse(b)), g.multiply(a, b)));
    return closure(g, seed);
}

inline std::set<Element> left_stabilizer(const FiniteGroup& g, const std::set<Element>& s) {
    std::set<Element> out;
    for (Element x = 0; x < g.order(); ++x) {
        std::set<Element> img;
        for (Element y : s) img.insert(g.multiply(x, y));
        if (img == s) out.insert(x);
    }
    return out;
}

inline Counts random_counts(std::mt19937& rng, int order, int len, int max_support = 64) {
    Counts c(static_cast<std::size_t>(order), 0);
    std::vector<int> pool(static_cast<std::size_t>(order));
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(std::min(order, max_support)));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < len; ++i) ++c[static_cast<std::size_t>(pool[pick(rng)])];
    return c;
}

}  // namespace oracle
