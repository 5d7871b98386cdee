#include "zsf/verify.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "zsf/multiset.hpp"

namespace zsf {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

int igcd(int a, int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

struct Term {
    int i;  // exponent of alpha
    int s;  // exponent of tau
    int k;  // multiplicity
};

bool matches(const FamilySpec& spec, std::initializer_list<std::pair<const char*, int>> params) {
    for (const auto& [name, value] : params) {
        const auto it = spec.fixed.find(name);
        if (it != spec.fixed.end() && it->second != value) return false;
    }
    return true;
}

std::vector<int> counts_for(const FiniteGroup& g, std::initializer_list<Term> terms) {
    std::vector<int> counts(static_cast<std::size_t>(g.order()), 0);
    for (const Term& t : terms) counts[static_cast<std::size_t>(g.presented(t.i, t.s))] += t.k;
    return counts;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

// Canonical-coordinate forms of a family, before symmetry.
std::vector<std::vector<int>> canonical_forms(const FiniteGroup& g, const FamilySpec& spec) {
    const auto tag = g.kind().tag;
    const int n = g.kind().n;
    std::vector<std::vector<int>> out;
    switch (spec.tag) {
        case FamilyTag::thm41a:
            require(tag == GroupKindTag::dihedral && n >= 3 && n % 2 == 1, "thm41a needs a dihedral group with odd n >= 3");
            out.push_back(counts_for(g, {{1, 0, 2 * n - 2}, {0, 1, 2}}));
            break;
        case FamilyTag::thm41b:
            require(tag == GroupKindTag::dihedral && n >= 3 && n % 2 == 1, "thm41b needs a dihedral group with odd n >= 3");
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (igcd(i - j, n) == 1 && matches(spec, {{"i", i}, {"j", j}}))
                        out.push_back(counts_for(g, {{i, 1, n}, {j, 1, n}}));
            break;
        case FamilyTag::thm42:
            require(tag == GroupKindTag::dihedral && n >= 4 && n % 2 == 0, "thm42 needs a dihedral group with even n >= 4");
            out.push_back(counts_for(g, {{1, 0, n + n / 2 - 2}, {0, 1, 1}, {n / 2, 1, 1}}));
            break;
        case FamilyTag::thm43:
            require(tag == GroupKindTag::dicyclic && n >= 2, "thm43 needs a dicyclic group");
            out.push_back(counts_for(g, {{1, 0, 3 * n - 2}, {0, 1, 2}}));
            break;
        case FamilyTag::prop32a:
            require(tag == GroupKindTag::dihedral && n == 4, "prop32a needs the dihedral group of order 8");
            if (spec.fixed.empty()) out.push_back(counts_for(g, {{0, 1, 1}, {1, 1, 1}, {2, 1, 1}, {3, 1, 1}}));
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y)
                    if (mod(x - y - 1, 2) == 0 && matches(spec, {{"x", x}, {"y", y}}))
                        out.push_back(counts_for(g, {{x, 1, 2}, {y, 1, 1}, {y + 2, 1, 1}}));
            break;
        case FamilyTag::prop32b:
            require(tag == GroupKindTag::dihedral && n >= 6 && n % 2 == 0, "prop32b needs a dihedral group with even n >= 6");
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    for (int v = 0; v <= n / 2; ++v)
                        for (int w = 0; w <= n / 2; ++w)
                            if (prop32b_admissible(n, x, y, v, w) && matches(spec, {{"x", x}, {"y", y}, {"v", v}, {"w", w}}))
                                out.push_back(counts_for(g, {{x, 1, v}, {n / 2 + x, 1, n / 2 - v}, {y, 1, w}, {n / 2 + y, 1, n / 2 - w}}));
            break;
        case FamilyTag::prop33a: {
            require(tag == GroupKindTag::dicyclic && n >= 3, "prop33a needs a dicyclic group with n >= 3");
            const int m = 2 * n;
            for (int x = 0; x < m; ++x) {
                std::vector<int> free_values;  // admissible y_i
                for (int v = 0; v < m; ++v)
                    if (mod(2 * v - 2 * x, m) != 0) free_values.push_back(v);
                for (int y = 0; y < m; ++y) {
                    if (mod(2 * y - 2 * x, m) == 0 || !matches(spec, {{"x", x}, {"y", y}})) continue;
                    std::vector<int> tail_counts(static_cast<std::size_t>(m), 0);
                    for_each_multiset(free_values, n - 3, tail_counts, [&](const std::vector<int>& tail) {
                        int tail_sum = 0;
                        for (int v = 0; v < m; ++v) tail_sum += v * tail[static_cast<std::size_t>(v)];
                        if (mod(tail_sum + 3 * y + n + x - (n + 1) * (x + n), m) != 0) return;
                        auto c = counts_for(g, {{x, 1, n + 2}, {y, 1, 2}, {y + n, 1, 1}});
                        for (int v = 0; v < m; ++v) c[static_cast<std::size_t>(g.presented(v, 1))] += tail[static_cast<std::size_t>(v)];
                        out.push_back(std::move(c));
                    });
                }
            }
            break;
        }
        case FamilyTag::prop33b: {
            require(tag == GroupKindTag::dicyclic && n >= 2, "prop33b needs a dicyclic group");
            const int m = 2 * n;
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y)
                    if (mod(2 * y - 2 * x, m) != 0 && mod(n * y + x - (n + 1) * (x + n), m) == 0 &&
                        matches(spec, {{"x", x}, {"y", y}}))
                        out.push_back(counts_for(g, {{x, 1, n + 2}, {y, 1, n}}));
            break;
        }
    }
    return out;
}

int family_length(FamilyTag tag, int n) {
    switch (tag) {
        case FamilyTag::thm41a:
        case FamilyTag::thm41b: return 2 * n;
        case FamilyTag::thm42: return 3 * n / 2;
        case FamilyTag::thm43: return 3 * n;
        case FamilyTag::prop32a:
        case FamilyTag::prop32b: return n;
        case FamilyTag::prop33a:
        case FamilyTag::prop33b: return 2 * n + 2;
    }
    return 0;
}

bool is_reflection_family(FamilyTag tag) {
    return tag == FamilyTag::prop32a || tag == FamilyTag::prop32b || tag == FamilyTag::prop33a ||
           tag == FamilyTag::prop33b;
}

}  // namespace

std::string to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::thm41a: return "thm41a";
        case FamilyTag::thm41b: return "thm41b";
        case FamilyTag::thm42: return "thm42";
        case FamilyTag::thm43: return "thm43";
        case FamilyTag::prop32a: return "prop32a";
        case FamilyTag::prop32b: return "prop32b";
        case FamilyTag::prop33a: return "prop33a";
        case FamilyTag::prop33b: return "prop33b";
    }
    return "?";
}

std::optional<FamilyTag> parse_family_tag(std::string_view s) {
    for (auto t : {FamilyTag::thm41a, FamilyTag::thm41b, FamilyTag::thm42, FamilyTag::thm43, FamilyTag::prop32a,
                   FamilyTag::prop32b, FamilyTag::prop33a, FamilyTag::prop33b})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

bool prop32b_admissible(int n, int x, int y, int v, int w) {
    if (n < 2 || n % 2 != 0) return false;
    if (x < 0 || x >= n || y < 0 || y >= n || v < 0 || v > n / 2 || w < 0 || w > n / 2) return false;
    return mod(2 * x - 2 * y, n) != 0 && igcd(x - y, n / 2) == 1 && mod((x - y) - (v - w), 2) == 0;
}

ElementSet rotations(const FiniteGroup& g) {
    const auto tag = g.kind().tag;
    if (tag != GroupKindTag::dihedral && tag != GroupKindTag::dicyclic)
        throw DomainError("rotation subgroup needs a dihedral or dicyclic group");
    return generated_subgroup(g, ElementSet::single(g.alpha()));
}

ElementSet reflections(const FiniteGroup& g) {
    const ElementSet rot = rotations(g);
    return ElementSet(g.all().bits() & ~rot.bits());
}

std::vector<Sequence> generate_family(const GroupPtr& g, const FamilySpec& spec) {
    const auto forms = canonical_forms(*g, spec);
    const int expected = family_length(spec.tag, g->kind().n);
    Symmetry sym = Symmetry::automorphisms(*g);
    if (is_reflection_family(spec.tag)) {
        const std::array<ElementSet, 1> keep{rotations(*g)};
        sym = sym.stabilizing(keep);
    }
    std::set<std::vector<int>> seen;
    for (const auto& f : forms) {
        if (std::accumulate(f.begin(), f.end(), 0) != expected)
            throw std::logic_error("family member of length other than " + std::to_string(expected));
        for (auto& img : sym.orbit(f)) seen.insert(std::move(img));
    }
    std::vector<Sequence> out;
    out.reserve(seen.size());
    for (const auto& c : seen) out.emplace_back(g, c);
    return out;
}

std::string to_string(Statement s) {
    switch (s) {
        case Statement::thm41: return "thm4.1";
        case Statement::thm42: return "thm4.2";
        case Statement::thm43: return "thm4.3";
        case Statement::prop32: return "prop3.2";
        case Statement::prop33: return "prop3.3";
        case Statement::prop32_in_particular: return "prop3.2-inparticular";
        case Statement::prop33_in_particular: return "prop3.3-inparticular";
    }
    return "?";
}

std::optional<Statement> parse_statement(std::string_view s) {
    for (auto t : {Statement::thm41, Statement::thm42, Statement::thm43, Statement::prop32, Statement::prop33,
                   Statement::prop32_in_particular, Statement::prop33_in_particular})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

namespace {

std::vector<Sequence> family_union(const GroupPtr& g, std::initializer_list<FamilyTag> tags) {
    std::set<Sequence> all;
    for (auto t : tags) {
        auto f = generate_family(g, {t, {}});
        all.insert(f.begin(), f.end());
    }
    return {all.begin(), all.end()};
}

// Atoms whose reflection part has at least `threshold` terms, any length up to |G|.
std::vector<Sequence> long_reflection_atoms(const GroupPtr& g, int threshold, int jobs) {
    CensusOptions opts;
    opts.counted = reflections(*g);
    opts.min_counted = threshold;
    opts.jobs = jobs;
    std::vector<Sequence> out;
    for (int len = threshold; len <= g->order(); ++len) {
        auto c = atom_census(g, len, opts);
        auto atoms = c.literal_atoms();
        out.insert(out.end(), atoms.begin(), atoms.end());
    }
    return out;
}

void compare(CharacterizationReport& report, const std::vector<Sequence>& family, const std::vector<Sequence>& census) {
    report.family_size = family.size();
    report.census_size = census.size();
    std::set_difference(census.begin(), census.end(), family.begin(), family.end(), std::back_inserter(report.missing));
    std::set_difference(family.begin(), family.end(), census.begin(), census.end(), std::back_inserter(report.extra));
    report.equal = report.missing.empty() && report.extra.empty();
}

}  // namespace

CharacterizationReport verify_characterization(const GroupPtr& g, Statement statement, int jobs) {
    CharacterizationReport report;
    report.statement = to_string(statement);
    report.group = to_string(g->kind());
    const auto tag = g->kind().tag;
    const int n = g->kind().n;
    CensusOptions opts;
    opts.jobs = jobs;

    switch (statement) {
        case Statement::thm41:
        case Statement::thm42:
        case Statement::thm43: {
            std::vector<Sequence> family;
            if (statement == Statement::thm41)
                family = family_union(g, {FamilyTag::thm41a, FamilyTag::thm41b});
            else
                family = family_union(g, {statement == Statement::thm42 ? FamilyTag::thm42 : FamilyTag::thm43});
            const auto census = max_atom_census(g, std::nullopt, opts).literal_atoms();
            compare(report, family, census);
            break;
        }
        case Statement::prop32:
        case Statement::prop33: {
            const bool dihedral = statement == Statement::prop32;
            if (dihedral)
                require(tag == GroupKindTag::dihedral && n >= 4 && n % 2 == 0, "prop3.2 needs a dihedral group with even n >= 4");
            else
                require(tag == GroupKindTag::dicyclic && n >= 2, "prop3.3 needs a dicyclic group");
            std::vector<Sequence> family;
            if (dihedral)
                family = family_union(g, {n == 4 ? FamilyTag::prop32a : FamilyTag::prop32b});
            else if (n >= 3)
                family = family_union(g, {FamilyTag::prop33a, FamilyTag::prop33b});
            else
                family = family_union(g, {FamilyTag::prop33b});
            // reflection-supported atoms of every length from the stated one up to |G|
            const int stated = dihedral ? n : 2 * n + 2;
            opts.allowed = reflections(*g);
            std::vector<Sequence> census;
            for (int len = stated; len <= g->order(); ++len) {
                auto atoms = atom_census(g, len, opts).literal_atoms();
                census.insert(census.end(), atoms.begin(), atoms.end());
            }
            std::sort(census.begin(), census.end());
            compare(report, family, census);
            report.in_particular_counterexamples = long_reflection_atoms(g, dihedral ? n + 2 : 2 * n + 4, jobs);
            report.equal = report.equal && report.in_particular_counterexamples.empty();
            break;
        }
        case Statement::prop32_in_particular:
        case Statement::prop33_in_particular: {
            const bool dihedral = statement == Statement::prop32_in_particular;
            if (dihedral)
                require(tag == GroupKindTag::dihedral && n >= 4 && n % 2 == 0, "prop3.2 needs a dihedral group with even n >= 4");
            else
                require(tag == GroupKindTag::dicyclic && n >= 2, "prop3.3 needs a dicyclic group");
            report.in_particular_counterexamples = long_reflection_atoms(g, dihedral ? n + 2 : 2 * n + 4, jobs);
            report.census_size = report.in_particular_counterexamples.size();
            report.missing = report.in_particular_counterexamples;
            report.equal = report.in_particular_counterexamples.empty();
            break;
        }
    }
    return report;
}

DgmReport check_dgm_bound(const Sequence& s, int n) {
    const FiniteGroup& g = s.group();
    if (!g.is_abelian()) throw DomainError("the DGM bound is stated for abelian groups");
    if (n < 1 || n > s.length()) throw DomainError("n must lie in [1, |S|]");
    const ElementSet sums = sigma_variants(s, n);
    DgmReport report;
    report.lhs = sums.size();
    report.stabilizer = left_stabilizer(g, sums);
    const Quotient q = quotient(g, report.stabilizer);
    std::vector<int> per_coset(static_cast<std::size_t>(q.group.order()), 0);
    for (Element x = 0; x < g.order(); ++x)
        per_coset[static_cast<std::size_t>(q.projection[static_cast<std::size_t>(x)])] += s.counts()[static_cast<std::size_t>(x)];
    int total = 0;
    for (int v : per_coset) total += std::min(n, v);
    report.rhs = (total - n + 1) * report.stabilizer.size();
    report.holds = report.lhs >= report.rhs;
    return report;
}

int group_exponent(const FiniteGroup& g) {
    int e = 1;
    for (Element x = 0; x < g.order(); ++x) e = std::lcm(e, g.element_order(x));
    return e;
}

int egz_constant(const GroupPtr& gp, bool allow_large, std::size_t budget) {
    const FiniteGroup& g = *gp;
    if (!g.is_abelian()) throw DomainError("the EGZ constant is computed for abelian groups");
    if (g.order() > 9 && !allow_large) throw CapacityError("EGZ search above order 9 needs allow_large");
    const int exp = group_exponent(g);
    const Symmetry sym = Symmetry::automorphisms(g);
    std::vector<Element> elems(static_cast<std::size_t>(g.order()));
    std::iota(elems.begin(), elems.end(), 0);
    std::vector<int> counts(static_cast<std::size_t>(g.order()), 0);
    ProductTable scratch;
    // s(G) <= |G| + exp(G) - 1 for finite abelian G
    for (int len = exp; len <= g.order() + exp - 1; ++len) {
        bool all_have = true;
        for_each_multiset(elems, len, counts, [&](const std::vector<int>& c) {
            if (!all_have || !sym.is_canonical(c)) return;
            scratch.assign(g, c, budget);
            if (!scratch.products_of_length(exp).contains(g.identity())) all_have = false;
        });
        if (all_have) return len;
    }
    throw std::logic_error("EGZ search exceeded |G| + exp(G) - 1");
}

}  // namespace zsf
