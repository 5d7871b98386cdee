#include "zsf/arithmetic.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>

#include "abelianization.hpp"
#include "zsf/multiset.hpp"
#include "zsf/parallel.hpp"

namespace zsf {

LengthSet LengthSet::single(int k) {
    LengthSet s;
    s.insert(k);
    return s;
}

void LengthSet::insert(int k) {
    if (k < 0) throw DomainError("lengths are non-negative");
    if (k >= capacity) throw CapacityError("length " + std::to_string(k) + " exceeds the length-set capacity");
    bits_ |= static_cast<unsigned __int128>(1) << k;
}

int LengthSet::size() const {
    return std::popcount(static_cast<std::uint64_t>(bits_)) + std::popcount(static_cast<std::uint64_t>(bits_ >> 64));
}

int LengthSet::min() const {
    if (empty()) throw DomainError("min of an empty length set");
    const auto lo = static_cast<std::uint64_t>(bits_);
    return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(bits_ >> 64));
}

int LengthSet::max() const {
    if (empty()) throw DomainError("max of an empty length set");
    const auto hi = static_cast<std::uint64_t>(bits_ >> 64);
    return hi != 0 ? 127 - std::countl_zero(hi) : 63 - std::countl_zero(static_cast<std::uint64_t>(bits_));
}

std::vector<int> LengthSet::elements() const {
    std::vector<int> out;
    for (int k = 0; k < capacity; ++k)
        if (contains(k)) out.push_back(k);
    return out;
}

LengthSet LengthSet::shifted(int k) const {
    if (empty()) return *this;
    if (k < 0 && min() + k < 0) throw DomainError("shift below zero");
    if (max() + k >= capacity) throw CapacityError("shifted length set exceeds capacity");
    LengthSet out;
    out.bits_ = k >= 0 ? bits_ << k : bits_ >> -k;
    return out;
}

LengthSet LengthSet::operator+(const LengthSet& other) const {
    LengthSet out;
    for (int a : elements()) out |= other.shifted(a);
    return out;
}

std::string LengthSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int k : elements()) {
        if (!first) out += ", ";
        out += std::to_string(k);
        first = false;
    }
    return out + "}";
}

namespace {

// L(T) for every product-one divisor T of a base sequence, in one forward
// pass over ranks. Each factorization is counted once by requiring the first
// atom to contain the least support element of T.
class LengthSolver {
public:
    LengthSet solve(const FiniteGroup& g, std::span<const int> counts, std::size_t budget) {
        const int len = std::accumulate(counts.begin(), counts.end(), 0);
        if (len >= LengthSet::capacity) throw CapacityError("sequence too long for length sets");
        table_.assign(g, counts, budget);
        const Element one = g.identity();
        const std::size_t size = table_.size();
        const std::size_t k = table_.support().size();
        po_.assign(size, 0);
        atom_.assign(size, 0);
        lengths_.assign(size, LengthSet());
        for (std::size_t r = 0; r < size; ++r) po_[r] = table_.products(r).contains(one) ? 1 : 0;
        lengths_[0] = LengthSet::single(0);
        for (std::size_t r = 1; r < size; ++r) {
            if (!po_[r]) continue;
            std::size_t pivot = 0;
            while (pivot < k && table_.digit(r, pivot) == 0) ++pivot;
            bool splits = false;
            LengthSet acc;
            table_.for_each_divisor(r, [&](std::size_t d) {
                if (d == r || table_.digit(d, pivot) == 0) return;
                const std::size_t e = r - d;
                if (!po_[d] || !po_[e]) return;
                splits = true;
                if (atom_[d]) acc |= lengths_[e].shifted(1);
            });
            if (!splits) {
                atom_[r] = 1;
                acc = LengthSet::single(1);
            }
            lengths_[r] = acc;
        }
        return lengths_[table_.full_rank()];
    }

    bool product_one() const { return po_[table_.full_rank()] != 0; }

private:
    ProductTable table_;
    std::vector<char> po_;
    std::vector<char> atom_;
    std::vector<LengthSet> lengths_;
};

std::vector<int> counts_for(const FiniteGroup& g, std::initializer_list<std::array<int, 3>> terms) {
    std::vector<int> counts(static_cast<std::size_t>(g.order()), 0);
    for (const auto& [i, s, mult] : terms) counts[static_cast<std::size_t>(g.presented(i, s))] += mult;
    return counts;
}

Sequence power(const Sequence& s, int e) {
    Sequence out(s.group_ptr());
    for (int i = 0; i < e; ++i) out = out * s;
    return out;
}

// Attaches B when L(B) fits the budget and contains k. For rho the witness
// raises the lower bound to max L(B); for lambda it caps the upper bound at min L(B).
// Witness tables are capped well below the DP budget so that rho/lambda
// tables over many k stay interactive; larger witnesses are simply omitted.
enum class Extreme { max, min };
constexpr std::size_t kWitnessBudget = std::size_t{1} << 15;

void attach_witness(RhoLambdaReport& report, const Sequence& b, Extreme which, std::size_t budget) {
    try {
        const LengthSet l = length_set(b, std::min(budget, kWitnessBudget));
        if (!l.contains(report.k)) throw std::logic_error("constructed witness misses k = " + std::to_string(report.k));
        if (which == Extreme::max) {
            report.lower_witness = LengthWitness{b, l.max()};
            report.lower = std::max(report.lower, l.max());
        } else {
            report.lower_witness = LengthWitness{b, l.min()};
            report.upper = std::min(report.upper, l.min());
        }
    } catch (const CapacityError&) {
        // bound stands from the formula alone
    }
}

// The three-atom construction whose product has lengths 3 and rho_3's lower bound.
std::optional<Sequence> three_atom_witness(const GroupPtr& gp) {
    const FiniteGroup& g = *gp;
    const int n = g.kind().n;
    if (g.kind().tag == GroupKindTag::dihedral && n >= 3 && n % 2 == 1) {
        Sequence u(gp, counts_for(g, {{1, 1, n}, {0, 1, n}}));
        Sequence v(gp, counts_for(g, {{2, 1, n}, {1, 1, n}}));
        Sequence w(gp, counts_for(g, {{2, 1, n}, {0, 1, n}}));
        return u * v * w;
    }
    if (g.kind().tag == GroupKindTag::dihedral && n >= 4 && n % 2 == 0) {
        const int h = n / 2;
        Sequence u(gp, counts_for(g, {{1, 0, n + h - 2}, {0, 1, 1}, {h, 1, 1}}));
        Sequence v(gp, counts_for(g, {{n - 1, 0, n + h - 2}, {1, 1, 1}, {h + 1, 1, 1}}));
        Sequence w(gp, counts_for(g, {{0, 1, 1}, {h, 1, 1}, {1, 1, 1}, {h + 1, 1, 1}}));
        return u * v * w;
    }
    if (g.kind().tag == GroupKindTag::dicyclic && n >= 2) {
        Sequence u(gp, counts_for(g, {{1, 0, 3 * n - 2}, {0, 1, 2}}));
        Sequence v(gp, counts_for(g, {{2 * n - 1, 0, 3 * n - 2}, {1, 1, 2}}));
        Sequence w(gp, counts_for(g, {{n, 1, 2}, {n + 1, 1, 2}}));
        return u * v * w;
    }
    return std::nullopt;
}

}  // namespace

LengthSet length_set(const Sequence& b, std::size_t budget) {
    if (b.empty()) return LengthSet::single(0);
    LengthSolver solver;
    LengthSet out = solver.solve(b.group(), b.counts(), budget);
    if (!solver.product_one()) throw DomainError("length sets are defined for product-one sequences");
    return out;
}

UnionsReport unions_bounded(const GroupPtr& gp, int k, int max_len, int jobs, std::size_t budget) {
    if (k < 1) throw DomainError("k must be positive");
    if (max_len < 0) throw DomainError("max_len must be non-negative");
    const FiniteGroup& g = *gp;
    UnionsReport report;
    report.k = k;
    report.max_len = max_len;

    // k in L(B) forces k <= |B| <= k * D(G) <= k * |G|
    const int hi = std::min(max_len, k * g.order());
    const Symmetry sym = Symmetry::automorphisms(g);
    const AbelianizationFilter ab(g);
    std::vector<Element> elems(static_cast<std::size_t>(g.order()));
    std::iota(elems.begin(), elems.end(), 0);

    struct Unit {
        int length;
        int first;
    };
    std::vector<Unit> units;
    for (int len = k; len <= hi; ++len)
        for (int c = len; c >= 0; --c) units.push_back({len, c});

    std::vector<LengthSet> partial(units.size());
    std::vector<std::size_t> examined(units.size(), 0);
    parallel_for(units.size(), jobs, [&](std::size_t u, std::size_t) {
        LengthSolver solver;
        std::vector<int> counts(elems.size(), 0);
        counts[0] = units[u].first;
        const std::span<const Element> rest(elems.data() + 1, elems.size() - 1);
        for_each_multiset(rest, units[u].length - units[u].first, counts, [&](const std::vector<int>& c) {
            if (!ab.may_be_product_one(c) || !sym.is_canonical(c)) return;
            const LengthSet l = solver.solve(g, c, budget);
            if (!solver.product_one()) return;
            ++examined[u];
            if (l.contains(k)) partial[u] |= l;
        });
    });
    for (std::size_t u = 0; u < units.size(); ++u) {
        report.lengths |= partial[u];
        report.examined += examined[u];
    }
    return report;
}

int davenport_value(const GroupPtr& g) {
    if (auto known = known_large_davenport(*g)) return *known;
    return large_davenport(g).value;
}

Sequence maximal_atom(const GroupPtr& gp) {
    const FiniteGroup& g = *gp;
    const int n = g.kind().n;
    switch (g.kind().tag) {
        case GroupKindTag::cyclic: {
            std::vector<int> counts(static_cast<std::size_t>(g.order()), 0);
            counts[static_cast<std::size_t>(n == 1 ? g.identity() : 1)] = n;
            return Sequence(gp, counts);
        }
        case GroupKindTag::dihedral:
            if (n >= 3 && n % 2 == 1) return Sequence(gp, counts_for(g, {{1, 0, 2 * n - 2}, {0, 1, 2}}));
            if (n >= 4) return Sequence(gp, counts_for(g, {{1, 0, n + n / 2 - 2}, {0, 1, 1}, {n / 2, 1, 1}}));
            break;
        case GroupKindTag::dicyclic: return Sequence(gp, counts_for(g, {{1, 0, 3 * n - 2}, {0, 1, 2}}));
        case GroupKindTag::generic: break;
    }
    return large_davenport(gp).witness;
}

RhoLambdaReport rho(const GroupPtr& gp, int k, std::size_t budget) {
    if (k < 1) throw DomainError("k must be positive");
    const FiniteGroup& g = *gp;
    RhoLambdaReport report;
    report.k = k;
    if (g.order() <= 2) {
        report.exact = report.lower = report.upper = k;
        report.source = "order<=2";
        return report;
    }
    if (k == 1) {
        report.exact = report.lower = report.upper = 1;
        report.source = "atom";
        attach_witness(report, maximal_atom(gp), Extreme::max, budget);
        return report;
    }
    const int d = davenport_value(gp);
    const Sequence a = maximal_atom(gp);
    const Sequence pair = a * a.inverse();
    report.upper = k * d / 2;
    if (k % 2 == 0) {
        report.exact = report.lower = k / 2 * d;
        report.source = "even-index";
        attach_witness(report, power(pair, k / 2), Extreme::max, budget);
        return report;
    }
    const int l = (k - 1) / 2;
    const auto tag = g.kind().tag;
    const int n = g.kind().n;
    if (auto three = three_atom_witness(gp)) {
        const Sequence b = *three * power(pair, l - 1);
        if (tag == GroupKindTag::dihedral && n % 2 == 1) {
            report.lower = k * n;
            report.source = "odd-dihedral";
        } else {
            report.lower = l * d + 2;
            report.upper = l * d + d / 2 - 1;
            report.source = "three-atom-bounds";
        }
        attach_witness(report, b, Extreme::max, budget);
    } else {
        // an identity term adds one atom to every factorization
        Sequence b = power(pair, l);
        b.add(g.identity());
        report.lower = l * d + 1;
        report.source = "elasticity-bounds";
        attach_witness(report, b, Extreme::max, budget);
    }
    if (report.lower > report.upper) throw std::logic_error("rho lower bound exceeds upper bound");
    if (report.lower == report.upper) report.exact = report.lower;
    return report;
}

RhoLambdaReport lambda(const GroupPtr& gp, int k, std::size_t budget) {
    if (k < 1) throw DomainError("k must be positive");
    const FiniteGroup& g = *gp;
    RhoLambdaReport report;
    report.k = k;
    if (g.order() <= 2) {
        report.exact = report.lower = report.upper = k;
        report.source = "order<=2";
        return report;
    }
    const int d = davenport_value(gp);
    const int l = k / d;
    const int j = k % d;
    if (j == 0) {
        report.exact = report.lower = report.upper = 2 * l;
        report.source = "multiple-of-D";
        const Sequence a = maximal_atom(gp);
        attach_witness(report, power(a * a.inverse(), l), Extreme::min, budget);
        return report;
    }
    // lambda lies in {2l+1, 2l+2}, cut by the elasticity bounds
    report.lower = std::max(2 * l + 1, (2 * k + d - 1) / d);
    report.upper = std::min(2 * l + 2, 2 * l + j);
    const RhoLambdaReport r = rho(gp, 2 * l + 1, budget);
    const int settled_up_to = r.lower - l * d;     // j at or below: 2l+1
    const int excluded_beyond = r.upper - l * d;   // j beyond: 2l+2
    if (j <= settled_up_to) report.upper = std::min(report.upper, 2 * l + 1);
    if (j > excluded_beyond) report.lower = std::max(report.lower, 2 * l + 2);
    if (report.lower > report.upper) throw std::logic_error("lambda bounds cross");
    if (report.lower == report.upper) report.exact = report.lower;
    report.source = r.exact ? "piecewise-exact-rho" : "piecewise-rho-bounds";
    return report;
}

Sequence witness_pair(const GroupPtr& gp, int j, std::size_t budget) {
    if (j < 2) throw DomainError("j must be at least 2");
    if (gp->order() <= 2) throw DomainError("no sequence has lengths {2, j} over a group of order at most 2");
    const int d = davenport_value(gp);
    if (j > d) throw DomainError("j exceeds D(G) = " + std::to_string(d));
    const FiniteGroup& g = *gp;
    const Sequence u = maximal_atom(gp);
    const auto order = product_ordering(u, std::nullopt, budget);
    if (!order) throw std::logic_error("maximal atom has no product-one ordering");
    // keep the first j-1 terms and merge the rest into their product
    std::vector<Element> terms(order->begin(), order->begin() + (j - 1));
    Element tail = g.identity();
    for (auto it = order->begin() + (j - 1); it != order->end(); ++it) tail = g.multiply(tail, *it);
    terms.push_back(tail);
    const Sequence v = Sequence::from_terms(gp, terms);
    const Sequence b = v * v.inverse();
    const LengthSet l = length_set(b, budget);
    if (!l.contains(2) || !l.contains(j)) throw std::logic_error("pair witness lacks lengths {2, j}");
    return b;
}

}  // namespace zsf
