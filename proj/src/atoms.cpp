#include "zsf/atoms.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <set>

#include "abelianization.hpp"
#include "zsf/parallel.hpp"

namespace zsf {

AtomVerdict is_atom(const Sequence& s, std::size_t budget) {
    const FiniteGroup& g = s.group();
    ProductTable table(g, s.counts(), budget);
    const Element e = g.identity();
    const std::size_t full = table.full_rank();
    AtomVerdict v;
    v.is_product_one = table.products(full).contains(e);
    if (!v.is_product_one) return v;
    for (std::size_t r = 1; r < full; ++r) {
        if (table.products(r).contains(e) && table.products(full - r).contains(e)) {
            Sequence t(s.group_ptr(), table.counts_of(r));
            Sequence rest = s.without(t);
            v.split = std::make_pair(std::move(t), std::move(rest));
            return v;
        }
    }
    v.is_atom = s.length() >= 1;
    return v;
}

AtomStatus atom_status(const FiniteGroup& g, std::span<const int> counts, ProductTable& scratch, std::size_t budget) {
    scratch.assign(g, counts, budget);
    const Element e = g.identity();
    const std::size_t full = scratch.full_rank();
    if (!scratch.products(full).contains(e)) return AtomStatus::not_product_one;
    if (full == 0) return AtomStatus::splits;  // empty sequence
    for (std::size_t r = 1; r < full; ++r)
        if (scratch.products(r).contains(e) && scratch.products(full - r).contains(e)) return AtomStatus::splits;
    return AtomStatus::atom;
}

Symmetry::Symmetry(std::vector<Permutation> perms) : perms_(std::move(perms)) {
    std::sort(perms_.begin(), perms_.end());
    inverses_.reserve(perms_.size());
    for (const auto& p : perms_) {
        Permutation inv(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<Element>(i);
        inverses_.push_back(std::move(inv));
    }
}

Symmetry Symmetry::automorphisms(const FiniteGroup& g) { return Symmetry(automorphism_group(g)); }

Symmetry Symmetry::trivial(const FiniteGroup& g) {
    Permutation id(static_cast<std::size_t>(g.order()));
    for (Element x = 0; x < g.order(); ++x) id[static_cast<std::size_t>(x)] = x;
    return Symmetry({std::move(id)});
}

Symmetry Symmetry::stabilizing(std::span<const ElementSet> preserved) const {
    std::vector<Permutation> kept;
    for (const auto& p : perms_) {
        bool ok = true;
        for (ElementSet s : preserved) {
            ElementSet img;
            s.for_each([&](Element x) { img.insert(p[static_cast<std::size_t>(x)]); });
            ok = ok && img == s;
        }
        if (ok) kept.push_back(p);
    }
    return Symmetry(std::move(kept));
}

bool Symmetry::is_canonical(std::span<const int> counts) const {
    const std::size_t n = counts.size();
    for (const auto& inv : inverses_) {
        // image counts at y are counts[inv[y]]
        for (std::size_t y = 0; y < n; ++y) {
            const int a = counts[static_cast<std::size_t>(inv[y])];
            if (a != counts[y]) {
                if (a < counts[y]) return false;
                break;
            }
        }
    }
    return true;
}

std::vector<int> Symmetry::canonical(std::span<const int> counts) const {
    std::vector<int> best(counts.begin(), counts.end());
    std::vector<int> img(counts.size());
    for (const auto& p : perms_) {
        for (std::size_t x = 0; x < counts.size(); ++x) img[static_cast<std::size_t>(p[x])] = counts[x];
        if (img < best) best = img;
    }
    return best;
}

std::vector<std::vector<int>> Symmetry::orbit(std::span<const int> counts) const {
    std::set<std::vector<int>> seen;
    std::vector<int> img(counts.size());
    for (const auto& p : perms_) {
        for (std::size_t x = 0; x < counts.size(); ++x) img[static_cast<std::size_t>(p[x])] = counts[x];
        seen.insert(img);
    }
    return {seen.begin(), seen.end()};
}

Sequence canonicalize(const Sequence& s) {
    return Sequence(s.group_ptr(), Symmetry::automorphisms(s.group()).canonical(s.counts()));
}

std::size_t CensusResult::atom_count() const {
    std::size_t total = 0;
    for (const auto& e : entries) total += e.orbit_size;
    return total;
}

std::vector<Sequence> CensusResult::literal_atoms() const {
    std::vector<Sequence> out;
    for (const auto& e : entries) out.insert(out.end(), e.orbit.begin(), e.orbit.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct Found {
    std::vector<int> counts;
    double ms = 0.0;
};

}  // namespace

CensusResult atom_census(const GroupPtr& gp, int length, const CensusOptions& options) {
    if (!gp) throw ValidationError("census needs a group");
    const FiniteGroup& g = *gp;
    if (length < 0) throw DomainError("census length must be non-negative");
    const ElementSet allowed = options.allowed.value_or(g.all());
    if (!allowed.subset_of(g.all())) throw ValidationError("allowed set contains invalid elements");

    std::vector<Element> elems = allowed.elements();
    if (options.prune && length >= 2) std::erase(elems, g.identity());

    const std::array<ElementSet, 2> preserved{allowed, options.counted};
    const Symmetry sym = options.prune ? Symmetry::automorphisms(g).stabilizing(preserved) : Symmetry::trivial(g);
    std::optional<AbelianizationFilter> ab;
    if (options.prune) ab.emplace(g);

    CensusResult result;
    result.group = gp;
    result.length = length;
    result.symmetry_size = sym.size();
    if (length == 0 || elems.empty()) return result;

    const std::size_t k = elems.size();
    const std::size_t split_depth = std::min<std::size_t>(2, k - 1);
    std::vector<std::vector<int>> units;  // prefix counts for elems[0..split_depth)
    {
        std::vector<int> prefix;
        auto gen = [&](auto&& self, int remaining) -> void {
            if (prefix.size() == split_depth) {
                units.push_back(prefix);
                return;
            }
            for (int c = 0; c <= remaining; ++c) {
                prefix.push_back(c);
                self(self, remaining - c);
                prefix.pop_back();
            }
        };
        gen(gen, length);
    }

    std::vector<std::vector<Found>> found(units.size());
    const int order = g.order();
    const int min_counted = options.min_counted;
    const ElementSet counted = options.counted;

    parallel_for(units.size(), options.jobs, [&](std::size_t u, std::size_t) {
        ProductTable scratch;
        std::vector<int> counts(static_cast<std::size_t>(order), 0);
        int remaining = length;
        for (std::size_t i = 0; i < split_depth; ++i) {
            counts[static_cast<std::size_t>(elems[i])] = units[u][i];
            remaining -= units[u][i];
        }
        auto leaf = [&]() {
            if (min_counted > 0) {
                int in = 0;
                counted.for_each([&](Element x) { in += counts[static_cast<std::size_t>(x)]; });
                if (in < min_counted) return;
            }
            if (ab && !ab->may_be_product_one(counts)) return;
            if (!sym.is_canonical(counts)) return;
            const auto t0 = std::chrono::steady_clock::now();
            const AtomStatus st = atom_status(g, counts, scratch, options.budget);
            const auto t1 = std::chrono::steady_clock::now();
            if (st == AtomStatus::atom)
                found[u].push_back({counts, std::chrono::duration<double, std::milli>(t1 - t0).count()});
        };
        auto dfs = [&](auto&& self, std::size_t pos, int rem) -> void {
            const auto idx = static_cast<std::size_t>(elems[pos]);
            if (pos + 1 == k) {
                counts[idx] = rem;
                leaf();
                counts[idx] = 0;
                return;
            }
            for (int c = rem; c >= 0; --c) {
                counts[idx] = c;
                self(self, pos + 1, rem - c);
            }
            counts[idx] = 0;
        };
        dfs(dfs, split_depth, remaining);
    });

    std::vector<Found> all;
    for (auto& f : found) std::move(f.begin(), f.end(), std::back_inserter(all));
    std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) { return a.counts < b.counts; });
    result.entries.reserve(all.size());
    for (auto& f : all) {
        CensusEntry entry{Sequence(gp, f.counts), 1, {}, f.ms};
        for (auto& img : sym.orbit(f.counts)) entry.orbit.emplace_back(gp, std::move(img));
        entry.orbit_size = entry.orbit.size();
        result.entries.push_back(std::move(entry));
    }
    return result;
}

std::optional<int> known_large_davenport(const FiniteGroup& g) {
    const int n = g.kind().n;
    switch (g.kind().tag) {
        case GroupKindTag::cyclic: return n;
        case GroupKindTag::dihedral:
            if (n >= 3 && n % 2 == 1) return 2 * n;
            if (n >= 4 && n % 2 == 0) return 3 * n / 2;
            return std::nullopt;
        case GroupKindTag::dicyclic: return 3 * n;
        case GroupKindTag::generic: return std::nullopt;
    }
    return std::nullopt;
}

DavenportResult large_davenport(const GroupPtr& g, const CensusOptions& options) {
    CensusOptions opts;
    opts.prune = options.prune;
    opts.jobs = options.jobs;
    opts.budget = options.budget;
    for (int len = g->order(); len >= 1; --len) {
        auto census = atom_census(g, len, opts);
        if (!census.entries.empty()) return {len, census.entries.front().representative};
    }
    throw std::logic_error("every group has an atom of length 1");
}

CensusResult max_atom_census(const GroupPtr& g, std::optional<int> length, const CensusOptions& options) {
    int len = 0;
    if (length) {
        len = *length;
    } else if (auto known = known_large_davenport(*g)) {
        len = *known;
    } else {
        len = large_davenport(g, options).value;
    }
    return atom_census(g, len, options);
}

namespace {

template <typename Visit>
void product_one_free_dfs(const FiniteGroup& g, std::size_t budget, Visit&& visit) {
    std::vector<Element> elems;
    for (Element x = 0; x < g.order(); ++x)
        if (x != g.identity()) elems.push_back(x);
    std::vector<int> counts(static_cast<std::size_t>(g.order()), 0);
    ProductTable scratch;
    auto dfs = [&](auto&& self, std::size_t start, int len) -> void {
        for (std::size_t i = start; i < elems.size(); ++i) {
            auto& c = counts[static_cast<std::size_t>(elems[i])];
            ++c;
            scratch.assign(g, counts, budget);
            if (!scratch.all_products().contains(g.identity())) {
                visit(counts, len + 1);
                self(self, i, len + 1);
            }
            --c;
        }
    };
    visit(counts, 0);
    dfs(dfs, 0, 0);
}

}  // namespace

DavenportResult small_davenport(const GroupPtr& g, std::size_t budget) {
    DavenportResult best{0, Sequence(g)};
    product_one_free_dfs(*g, budget, [&](const std::vector<int>& counts, int len) {
        if (len > best.value) best = {len, Sequence(g, counts)};
    });
    return best;
}

std::vector<Sequence> product_one_free_sequences(const GroupPtr& g, int min_length, std::size_t budget) {
    std::vector<Sequence> out;
    product_one_free_dfs(*g, budget, [&](const std::vector<int>& counts, int len) {
        if (len >= min_length) out.emplace_back(g, counts);
    });
    return out;
}

}  // namespace zsf
