#include "zsf/group.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>

namespace zsf {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

std::string power_name(int i) {
    if (i == 0) return "1";
    if (i == 1) return "a";
    return "a^" + std::to_string(i);
}

std::string reflection_name(int i) {
    if (i == 0) return "t";
    if (i == 1) return "a t";
    return "a^" + std::to_string(i) + " t";
}

int parse_int(std::string_view s, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("bad integer in " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::string to_string(const GroupKind& kind) {
    switch (kind.tag) {
        case GroupKindTag::cyclic: return "cyclic:" + std::to_string(kind.n);
        case GroupKindTag::dihedral: return "dihedral:" + std::to_string(kind.n);
        case GroupKindTag::dicyclic: return "dicyclic:" + std::to_string(kind.n);
        case GroupKindTag::generic: return "generic";
    }
    return "generic";
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw DomainError("cyclic group needs n >= 1");
    if (n > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
    std::vector<int> table(static_cast<std::size_t>(n * n));
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i * n + j)] = (i + j) % n;
    }
    auto g = from_table(n, std::move(table), 0, std::move(names));
    g.kind_ = {GroupKindTag::cyclic, n};
    return g;
}

FiniteGroup FiniteGroup::dihedral(int n) {
    if (n < 2) throw DomainError("dihedral group needs n >= 2");
    if (2 * n > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
    const int order = 2 * n;
    auto index = [n](int i, int s) { return s * n + mod(i, n); };
    std::vector<int> table(static_cast<std::size_t>(order * order));
    std::vector<std::string> names(static_cast<std::size_t>(order));
    for (int x = 0; x < order; ++x) {
        const int i = x % n, s = x / n;
        names[static_cast<std::size_t>(x)] = s == 0 ? power_name(i) : reflection_name(i);
        for (int y = 0; y < order; ++y) {
            const int j = y % n, t = y / n;
            // a^i t^s * a^j t^t = a^(i + (-1)^s j) t^(s+t)
            table[static_cast<std::size_t>(x * order + y)] = index(s == 0 ? i + j : i - j, (s + t) % 2);
        }
    }
    auto g = from_table(order, std::move(table), 0, std::move(names));
    g.kind_ = {GroupKindTag::dihedral, n};
    return g;
}

FiniteGroup FiniteGroup::dicyclic(int n) {
    if (n < 2) throw DomainError("dicyclic group needs n >= 2");
    if (4 * n > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
    const int m = 2 * n;  // order of alpha
    const int order = 4 * n;
    auto index = [m](int i, int s) { return s * m + mod(i, m); };
    std::vector<int> table(static_cast<std::size_t>(order * order));
    std::vector<std::string> names(static_cast<std::size_t>(order));
    for (int x = 0; x < order; ++x) {
        const int i = x % m, s = x / m;
        names[static_cast<std::size_t>(x)] = s == 0 ? power_name(i) : reflection_name(i);
        for (int y = 0; y < order; ++y) {
            const int j = y % m, t = y / m;
            int v = 0;
            if (s == 0) {
                v = index(i + j, t);
            } else if (t == 0) {
                v = index(i - j, 1);  // t a^j = a^-j t
            } else {
                v = index(i - j + n, 0);  // t^2 = a^n
            }
            table[static_cast<std::size_t>(x * order + y)] = v;
        }
    }
    auto g = from_table(order, std::move(table), 0, std::move(names));
    g.kind_ = {GroupKindTag::dicyclic, n};
    return g;
}

FiniteGroup FiniteGroup::from_table(int order, std::vector<int> table, std::optional<Element> identity,
                                    std::vector<std::string> names) {
    if (order < 1) throw ValidationError("group order must be positive");
    if (order > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
    const auto n = static_cast<std::size_t>(order);
    if (table.size() != n * n) throw ValidationError("table must have order*order entries");
    for (int v : table)
        if (v < 0 || v >= order) throw ValidationError("table entry out of range");
    auto at = [&](int a, int b) { return table[static_cast<std::size_t>(a * order + b)]; };

    // Latin square
    for (int r = 0; r < order; ++r) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int c = 0; c < order; ++c) {
            if (row[static_cast<std::size_t>(at(r, c))]++) throw ValidationError("table is not a Latin square");
            if (col[static_cast<std::size_t>(at(c, r))]++) throw ValidationError("table is not a Latin square");
        }
    }
    if (!identity) {
        for (int e = 0; e < order && !identity; ++e) {
            bool ok = true;
            for (int x = 0; x < order && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
            if (ok) identity = e;
        }
        if (!identity) throw ValidationError("table has no identity element");
    }
    const int e = *identity;
    if (e < 0 || e >= order) throw ValidationError("identity index out of range");
    for (int x = 0; x < order; ++x)
        if (at(e, x) != x || at(x, e) != x) throw ValidationError("declared identity is not an identity");
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            const int xy = at(x, y);
            for (int z = 0; z < order; ++z)
                if (at(xy, z) != at(x, at(y, z))) throw ValidationError("table is not associative");
        }

    if (names.empty()) {
        for (int x = 0; x < order; ++x) names.push_back("g" + std::to_string(x));
    }
    if (names.size() != n) throw ValidationError("names must have one entry per element");
    {
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ValidationError("element names must be distinct");
    }

    FiniteGroup g;
    g.order_ = order;
    g.identity_ = e;
    g.table_ = std::move(table);
    g.names_ = std::move(names);
    g.finalize();
    return g;
}

void FiniteGroup::finalize() {
    const auto n = static_cast<std::size_t>(order_);
    inverses_.assign(n, 0);
    for (int x = 0; x < order_; ++x)
        for (int y = 0; y < order_; ++y)
            if (table_[static_cast<std::size_t>(x * order_ + y)] == identity_) inverses_[static_cast<std::size_t>(x)] = y;

    chunks_ = (order_ + 7) / 8;
    rmul_.assign(n * static_cast<std::size_t>(chunks_) * 256, 0);
    for (int g = 0; g < order_; ++g) {
        for (int c = 0; c < chunks_; ++c) {
            for (int byte = 0; byte < 256; ++byte) {
                std::uint64_t bits = 0;
                for (int b = 0; b < 8; ++b) {
                    const int x = c * 8 + b;
                    if (((byte >> b) & 1) && x < order_)
                        bits |= std::uint64_t{1} << table_[static_cast<std::size_t>(x * order_ + g)];
                }
                rmul_[(static_cast<std::size_t>(g) * chunks_ + c) * 256 + byte] = bits;
            }
        }
    }
}

Element FiniteGroup::power(Element a, int k) const {
    check(a);
    Element base = k < 0 ? inverse(a) : a;
    Element out = identity_;
    for (int i = 0; i < (k < 0 ? -k : k); ++i) out = multiply(out, base);
    return out;
}

int FiniteGroup::element_order(Element a) const {
    check(a);
    int k = 1;
    for (Element x = a; x != identity_; x = multiply(x, a)) ++k;
    return k;
}

std::optional<Element> FiniteGroup::find(std::string_view name) const {
    for (int x = 0; x < order_; ++x)
        if (names_[static_cast<std::size_t>(x)] == name) return x;
    return std::nullopt;
}

ElementSet FiniteGroup::left_multiply(Element g, ElementSet s) const {
    ElementSet out;
    s.for_each([&](Element x) { out.insert(multiply(g, x)); });
    return out;
}

bool FiniteGroup::is_abelian() const {
    for (int x = 0; x < order_; ++x)
        for (int y = x + 1; y < order_; ++y)
            if (multiply(x, y) != multiply(y, x)) return false;
    return true;
}

Element FiniteGroup::alpha() const {
    if (kind_.tag != GroupKindTag::dihedral && kind_.tag != GroupKindTag::dicyclic && kind_.tag != GroupKindTag::cyclic)
        throw DomainError("alpha is defined only for presented groups");
    return order_ == 1 ? 0 : 1;
}

Element FiniteGroup::tau() const {
    if (kind_.tag == GroupKindTag::dihedral) return kind_.n;
    if (kind_.tag == GroupKindTag::dicyclic) return 2 * kind_.n;
    throw DomainError("tau is defined only for dihedral and dicyclic groups");
}

Element FiniteGroup::presented(int i, int s) const {
    switch (kind_.tag) {
        case GroupKindTag::cyclic: return mod(i, kind_.n);
        case GroupKindTag::dihedral: return mod(s, 2) * kind_.n + mod(i, kind_.n);
        case GroupKindTag::dicyclic: {
            // tau^2 = alpha^n, so alpha^i tau^s with s in {2,3} folds back
            const int m = 2 * kind_.n;
            const int ss = mod(s, 4);
            return (ss % 2) * m + mod(i + (ss >= 2 ? kind_.n : 0), m);
        }
        case GroupKindTag::generic: break;
    }
    throw DomainError("presented() needs a cyclic, dihedral or dicyclic group");
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int a = g.order(), b = h.order();
    if (a * b > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
    const int order = a * b;
    std::vector<int> table(static_cast<std::size_t>(order * order));
    std::vector<std::string> names;
    for (int x = 0; x < order; ++x) {
        names.push_back("(" + g.name(x / b) + "," + h.name(x % b) + ")");
        for (int y = 0; y < order; ++y)
            table[static_cast<std::size_t>(x * order + y)] =
                g.multiply(x / b, y / b) * b + h.multiply(x % b, y % b);
    }
    return FiniteGroup::from_table(order, std::move(table), g.identity() * b + h.identity(), std::move(names));
}

FiniteGroup build_group(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw ValidationError("group spec must look like kind:n, got '" + std::string(spec) + "'");
    const auto kind = spec.substr(0, colon);
    const auto arg = spec.substr(colon + 1);
    if (kind == "cyclic") return FiniteGroup::cyclic(parse_int(arg, "group spec"));
    if (kind == "dihedral") return FiniteGroup::dihedral(parse_int(arg, "group spec"));
    if (kind == "dicyclic") return FiniteGroup::dicyclic(parse_int(arg, "group spec"));
    if (kind == "abelian") {
        std::vector<int> factors;
        std::size_t start = 0;
        while (start <= arg.size()) {
            const auto x = arg.find('x', start);
            const auto part = arg.substr(start, x == std::string_view::npos ? arg.size() - start : x - start);
            factors.push_back(parse_int(part, "group spec"));
            if (x == std::string_view::npos) break;
            start = x + 1;
        }
        long long total = 1;
        for (int f : factors) {
            if (f < 1) throw DomainError("cyclic factor must be >= 1");
            total *= f;
            if (total > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
        }
        FiniteGroup g = FiniteGroup::cyclic(factors.front());
        for (std::size_t i = 1; i < factors.size(); ++i) g = direct_product(g, FiniteGroup::cyclic(factors[i]));
        return g;
    }
    throw ValidationError("unknown group kind '" + std::string(kind) + "'");
}

ElementSet generated_subgroup(const FiniteGroup& g, ElementSet seed) {
    if (seed.empty()) throw DomainError("generated_subgroup needs a non-empty seed");
    if (!seed.subset_of(g.all())) throw ValidationError("seed contains invalid elements");
    ElementSet h = ElementSet::single(g.identity()) | seed;
    // finite group: closure under multiplication by the seed is closure under inverses too
    std::deque<Element> queue;
    h.for_each([&](Element x) { queue.push_back(x); });
    const auto gens = seed.elements();
    while (!queue.empty()) {
        const Element x = queue.front();
        queue.pop_front();
        for (Element s : gens) {
            const Element y = g.multiply(x, s);
            if (!h.contains(y)) {
                h.insert(y);
                queue.push_back(y);
            }
        }
    }
    return h;
}

ElementSet left_stabilizer(const FiniteGroup& g, ElementSet subset) {
    if (subset.empty()) throw DomainError("left stabilizer of the empty set is rejected");
    if (!subset.subset_of(g.all())) throw ValidationError("subset contains invalid elements");
    ElementSet out;
    for (Element x = 0; x < g.order(); ++x)
        if (g.left_multiply(x, subset) == subset) out.insert(x);
    return out;
}

ElementSet commutator_subgroup(const FiniteGroup& g) {
    ElementSet comms;
    for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
            comms.insert(g.multiply(g.multiply(g.inverse(x), g.inverse(y)), g.multiply(x, y)));
    return generated_subgroup(g, comms);
}

bool is_subgroup(const FiniteGroup& g, ElementSet h) {
    if (h.empty() || !h.subset_of(g.all()) || !h.contains(g.identity())) return false;
    bool closed = true;
    h.for_each([&](Element x) {
        h.for_each([&](Element y) { closed = closed && h.contains(g.multiply(x, g.inverse(y))); });
    });
    return closed;
}

bool is_normal_subgroup(const FiniteGroup& g, ElementSet n) {
    if (!is_subgroup(g, n)) return false;
    for (Element x = 0; x < g.order(); ++x) {
        bool ok = true;
        n.for_each([&](Element y) { ok = ok && n.contains(g.multiply(g.multiply(x, y), g.inverse(x))); });
        if (!ok) return false;
    }
    return true;
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const std::vector<Element>& map) {
    if (map.size() != static_cast<std::size_t>(from.order())) return false;
    for (Element v : map)
        if (!to.contains(v)) return false;
    for (Element x = 0; x < from.order(); ++x)
        for (Element y = 0; y < from.order(); ++y)
            if (map[static_cast<std::size_t>(from.multiply(x, y))] !=
                to.multiply(map[static_cast<std::size_t>(x)], map[static_cast<std::size_t>(y)]))
                return false;
    return true;
}

Quotient quotient(const FiniteGroup& g, ElementSet normal) {
    if (!is_normal_subgroup(g, normal)) throw DomainError("quotient needs a normal subgroup");
    const auto n = static_cast<std::size_t>(g.order());
    std::vector<Element> coset_min(n, -1);
    std::vector<Element> reps;
    for (Element x = 0; x < g.order(); ++x) {
        if (coset_min[static_cast<std::size_t>(x)] >= 0) continue;
        reps.push_back(x);
        normal.for_each([&](Element h) { coset_min[static_cast<std::size_t>(g.multiply(x, h))] = x; });
    }
    std::vector<Element> projection(n);
    for (Element x = 0; x < g.order(); ++x) {
        const auto it = std::lower_bound(reps.begin(), reps.end(), coset_min[static_cast<std::size_t>(x)]);
        projection[static_cast<std::size_t>(x)] = static_cast<Element>(it - reps.begin());
    }
    const int q = static_cast<int>(reps.size());
    std::vector<int> table(static_cast<std::size_t>(q * q));
    std::vector<std::string> names;
    for (int a = 0; a < q; ++a) {
        names.push_back("[" + g.name(reps[static_cast<std::size_t>(a)]) + "]");
        for (int b = 0; b < q; ++b)
            table[static_cast<std::size_t>(a * q + b)] =
                projection[static_cast<std::size_t>(g.multiply(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]))];
    }
    auto group = FiniteGroup::from_table(q, std::move(table), projection[static_cast<std::size_t>(g.identity())], std::move(names));
    return {std::move(group), std::move(projection)};
}

std::vector<Element> generating_set(const FiniteGroup& g) {
    std::vector<Element> by_order(static_cast<std::size_t>(g.order()));
    std::iota(by_order.begin(), by_order.end(), 0);
    std::stable_sort(by_order.begin(), by_order.end(),
                     [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
    std::vector<Element> gens;
    ElementSet h = ElementSet::single(g.identity());
    for (Element x : by_order) {
        if (h == g.all()) break;
        if (h.contains(x)) continue;
        gens.push_back(x);
        ElementSet seed;
        for (Element s : gens) seed.insert(s);
        h = generated_subgroup(g, seed);
    }
    return gens;
}

namespace {

// Extends generator images to the subgroup they generate; false on an
// inconsistent or non-injective assignment.
bool extend_map(const FiniteGroup& g, const std::vector<Element>& gens, const std::vector<Element>& images,
                std::vector<Element>& map, ElementSet& image_set) {
    std::fill(map.begin(), map.end(), -1);
    map[static_cast<std::size_t>(g.identity())] = g.identity();
    image_set = ElementSet::single(g.identity());
    std::deque<Element> queue{g.identity()};
    while (!queue.empty()) {
        const Element x = queue.front();
        queue.pop_front();
        for (std::size_t j = 0; j < images.size(); ++j) {
            const Element y = g.multiply(x, gens[j]);
            const Element img = g.multiply(map[static_cast<std::size_t>(x)], images[j]);
            auto& slot = map[static_cast<std::size_t>(y)];
            if (slot < 0) {
                if (image_set.contains(img)) return false;
                slot = img;
                image_set.insert(img);
                queue.push_back(y);
            } else if (slot != img) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::vector<Permutation> automorphism_group(const FiniteGroup& g, std::size_t max_count) {
    const auto gens = generating_set(g);
    std::vector<int> gen_order;
    for (Element s : gens) gen_order.push_back(g.element_order(s));
    std::vector<int> orders(static_cast<std::size_t>(g.order()));
    for (Element x = 0; x < g.order(); ++x) orders[static_cast<std::size_t>(x)] = g.element_order(x);

    std::vector<Permutation> out;
    std::vector<Element> images;
    std::vector<Element> map(static_cast<std::size_t>(g.order()));
    ElementSet image_set;

    auto recurse = [&](auto&& self, std::size_t depth, ElementSet prev_image) -> void {
        if (depth == gens.size()) {
            extend_map(g, gens, images, map, image_set);
            out.push_back(map);
            if (out.size() > max_count) throw CapacityError("automorphism group exceeds the enumeration cap");
            return;
        }
        for (Element h = 0; h < g.order(); ++h) {
            if (orders[static_cast<std::size_t>(h)] != gen_order[depth] || prev_image.contains(h)) continue;
            images.push_back(h);
            ElementSet img;
            if (extend_map(g, std::vector<Element>(gens.begin(), gens.begin() + static_cast<long>(depth) + 1), images, map, img))
                self(self, depth + 1, img);
            images.pop_back();
        }
    };
    recurse(recurse, 0, ElementSet::single(g.identity()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace zsf
