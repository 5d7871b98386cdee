#pragma once

// Randomized property checks shared by the unit tests (small case counts)
// and the acceptance run (1000 cases each). Each returns the number of
// violating cases; messages for the first few go to `log`.

#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "zsf/arithmetic.hpp"
#include "zsf/sequence.hpp"

namespace props {

using namespace zsf;

inline GroupPtr make(const std::string& spec) { return std::make_shared<const FiniteGroup>(build_group(spec)); }

inline Sequence random_sequence(std::mt19937& rng, const GroupPtr& g, int max_len, int max_support) {
    const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
    return Sequence(g, oracle::random_counts(rng, g->order(), len, max_support));
}

inline Sequence random_product_one(std::mt19937& rng, const GroupPtr& g, int len, int max_support) {
    auto c = oracle::random_counts(rng, g->order(), len - 1, max_support);
    Element p = g->identity();
    for (Element x : oracle::terms_of(c)) p = g->multiply(p, x);
    ++c[static_cast<std::size_t>(g->inverse(p))];
    return Sequence(g, c);
}

class Tally {
public:
    Tally(std::ostream& log, const char* name) : log_(log), name_(name) {}
    void fail(const std::string& what) {
        if (++failures_ <= 3) log_ << "  " << name_ << ": " << what << "\n";
    }
    int failures() const { return failures_; }

private:
    std::ostream& log_;
    const char* name_;
    int failures_ = 0;
};

inline ElementSet to_set(const std::set<Element>& s) {
    ElementSet out;
    for (Element x : s) out.insert(x);
    return out;
}

/// Product table recurrence plus agreement with explicit orderings.
inline int dp_recurrence(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "recurrence");
    const std::vector<GroupPtr> groups{make("dihedral:3"), make("dihedral:4"), make("dicyclic:2"), make("dicyclic:3"),
                                       make("cyclic:7"), make("abelian:2x4")};
    for (int i = 0; i < cases; ++i) {
        const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
        const auto s = random_sequence(rng, g, 7, 4);
        const ProductTable table(*g, s.counts());
        for (std::size_t r = 1; r < table.size(); ++r) {
            ElementSet expect;
            for (std::size_t p = 0; p < table.support().size(); ++p)
                if (table.digit(r, p) > 0)
                    expect = expect | g->right_multiply(table.products(r - table.weights()[p]), table.support()[p]);
            if (table.products(r) != expect) t.fail(s.to_string() + " rank " + std::to_string(r));
        }
        if (product_set(s) != to_set(oracle::products(*g, s.counts()))) t.fail(s.to_string() + " vs orderings");
    }
    return t.failures();
}

/// pi(S) sits inside one coset of the commutator subgroup.
inline int coset_confinement(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "coset confinement");
    const std::vector<GroupPtr> groups{make("dihedral:3"), make("dihedral:4"), make("dicyclic:2"), make("dicyclic:3")};
    std::vector<ElementSet> derived;
    for (const auto& g : groups) derived.push_back(commutator_subgroup(*g));
    for (int i = 0; i < cases; ++i) {
        const std::size_t gi = static_cast<std::size_t>(i) % groups.size();
        const auto& g = groups[gi];
        const auto s = random_sequence(rng, g, 10, 6);
        const ElementSet p = product_set(s);
        const Element x = p.elements().front();
        if (!p.subset_of(g->left_multiply(x, derived[gi]))) t.fail(s.to_string());
    }
    return t.failures();
}

/// pi(S^-1) is the elementwise inverse of pi(S).
inline int inversion(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "inversion");
    const std::vector<GroupPtr> groups{make("dihedral:5"), make("dicyclic:3"), make("dihedral:4"), make("cyclic:9")};
    for (int i = 0; i < cases; ++i) {
        const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
        const auto s = random_sequence(rng, g, 10, 6);
        ElementSet inv;
        product_set(s).for_each([&](Element x) { inv.insert(g->inverse(x)); });
        if (product_set(s.inverse()) != inv) t.fail(s.to_string());
    }
    return t.failures();
}

/// theta(S) is product-one iff pi(S) meets ker(theta), theta a quotient map.
inline int homomorphism_criterion(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "homomorphism criterion");
    struct Target {
        GroupPtr g;
        ElementSet kernel;
        GroupPtr image;
        std::vector<Element> map;
    };
    std::vector<Target> targets;
    for (const char* spec : {"dihedral:4", "dihedral:6", "dicyclic:2", "dicyclic:3", "cyclic:12"}) {
        const auto g = make(spec);
        std::set<std::uint64_t> seen;
        for (Element x = 0; x < g->order(); ++x) {
            const ElementSet n = generated_subgroup(*g, ElementSet::single(x));
            if (!is_normal_subgroup(*g, n) || !seen.insert(n.bits()).second) continue;
            auto q = quotient(*g, n);
            targets.push_back({g, n, std::make_shared<const FiniteGroup>(std::move(q.group)), q.projection});
        }
        const ElementSet d = commutator_subgroup(*g);
        if (seen.insert(d.bits()).second) {
            auto q = quotient(*g, d);
            targets.push_back({g, d, std::make_shared<const FiniteGroup>(std::move(q.group)), q.projection});
        }
    }
    for (int i = 0; i < cases; ++i) {
        const auto& tg = targets[static_cast<std::size_t>(i) % targets.size()];
        const auto s = random_sequence(rng, tg.g, 9, 5);
        const bool lhs = product_set(transform(s, tg.image, tg.map)).contains(tg.image->identity());
        const bool rhs = !(product_set(s) & tg.kernel).empty();
        if (lhs != rhs) t.fail(s.to_string());
    }
    return t.failures();
}

/// L(A B) contains L(A) + L(B).
inline int superadditivity(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "superadditivity");
    const std::vector<GroupPtr> groups{make("dihedral:3"), make("dicyclic:2"), make("dihedral:4"), make("cyclic:6")};
    for (int i = 0; i < cases; ++i) {
        const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
        const auto a = random_product_one(rng, g, std::uniform_int_distribution<int>(1, 6)(rng), 4);
        const auto b = random_product_one(rng, g, std::uniform_int_distribution<int>(1, 6)(rng), 4);
        if (!(length_set(a) + length_set(b)).subset_of(length_set(a * b)))
            t.fail(a.to_string() + " | " + b.to_string());
    }
    return t.failures();
}

/// max L(B) / min L(B) <= D(G) / 2.
inline int elasticity_cap(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "elasticity");
    const std::vector<GroupPtr> groups{make("dihedral:3"), make("dicyclic:2"), make("dihedral:4"), make("cyclic:5"),
                                       make("dihedral:5")};
    std::vector<int> d;
    for (const auto& g : groups) d.push_back(davenport_value(g));
    for (int i = 0; i < cases; ++i) {
        const std::size_t gi = static_cast<std::size_t>(i) % groups.size();
        const auto b = random_product_one(rng, groups[gi], std::uniform_int_distribution<int>(1, 12)(rng), 4);
        const auto l = length_set(b);
        if (2 * l.max() > d[gi] * l.min()) t.fail(b.to_string() + " " + l.to_string());
    }
    return t.failures();
}

/// Identical CLI output for --jobs 1 and --jobs 4.
inline int jobs_determinism(std::mt19937& rng, int cases, std::ostream& log) {
    Tally t(log, "jobs determinism");
    const std::vector<std::string> groups{"dihedral:3", "dihedral:4", "dicyclic:2", "cyclic:6", "abelian:2x2"};
    for (int i = 0; i < cases; ++i) {
        const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
        std::vector<std::string> args;
        switch (i % 3) {
            case 0: args = {"census", "--group", g, "--length", std::to_string(std::uniform_int_distribution<int>(1, 6)(rng))}; break;
            case 1: args = {"census", "--group", g, "--expand-orbits", "--length", std::to_string(std::uniform_int_distribution<int>(2, 5)(rng))}; break;
            default: args = {"unions", "--group", g, "-k", std::to_string(std::uniform_int_distribution<int>(1, 3)(rng)), "--max-len", "6"}; break;
        }
        std::string outs[2];
        int k = 0;
        for (const char* jobs : {"1", "4"}) {
            auto a = args;
            a.insert(a.end(), {"--jobs", jobs});
            std::ostringstream out, err;
            if (cli::run(a, out, err) != cli::kOk) t.fail("non-zero exit: " + err.str());
            outs[k++] = out.str();
        }
        if (outs[0] != outs[1]) t.fail(args[0] + " " + g);
    }
    return t.failures();
}

}  // namespace props
