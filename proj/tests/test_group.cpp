#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zsf/group.hpp"

using namespace zsf;

namespace {

ElementSet set_of(const FiniteGroup& g, std::initializer_list<const char*> names) {
    ElementSet s;
    for (const char* n : names) s.insert(*g.find(n));
    return s;
}

ElementSet from_std(const std::set<Element>& s) {
    ElementSet out;
    for (Element x : s) out.insert(x);
    return out;
}

std::vector<FiniteGroup> sample_groups() {
    std::vector<FiniteGroup> gs;
    for (int n = 1; n <= 8; ++n) gs.push_back(FiniteGroup::cyclic(n));
    for (int n = 2; n <= 8; ++n) gs.push_back(FiniteGroup::dihedral(n));
    for (int n = 2; n <= 5; ++n) gs.push_back(FiniteGroup::dicyclic(n));
    gs.push_back(build_group("abelian:2x4"));
    gs.push_back(build_group("abelian:2x2x2"));
    return gs;
}

}  // namespace

TEST_CASE("presented groups follow their defining relations") {
    for (int n = 2; n <= 12; ++n) {
        const auto d = FiniteGroup::dihedral(n);
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < 2 * n; ++j) {
                const auto [e, s] = oracle::dihedral_mul(n, {i % n, i / n}, {j % n, j / n});
                CHECK(d.multiply(i, j) == e + n * s);
            }
        const auto q = FiniteGroup::dicyclic(n);
        for (int i = 0; i < 4 * n; ++i)
            for (int j = 0; j < 4 * n; ++j) {
                const auto [e, s] = oracle::dicyclic_mul(n, {i % (2 * n), i / (2 * n)}, {j % (2 * n), j / (2 * n)});
                CHECK(q.multiply(i, j) == e + 2 * n * s);
            }
    }
}

TEST_CASE("build_group examples") {
    const auto d6 = build_group("dihedral:3");
    CHECK(d6.order() == 6);
    CHECK(d6.element_order(d6.alpha()) == 3);
    CHECK(d6.element_order(d6.tau()) == 2);

    const auto c1 = build_group("cyclic:1");
    CHECK(c1.order() == 1);
    CHECK(c1.identity() == 0);

    const auto q8 = build_group("dicyclic:2");
    CHECK(q8.order() == 8);
    for (Element x = 4; x < 8; ++x) CHECK(q8.element_order(x) == 4);

    CHECK_THROWS_AS(build_group("dihedral:1"), DomainError);
    CHECK_THROWS_AS(build_group("dicyclic:1"), DomainError);
    CHECK_THROWS_AS(build_group("cyclic:0"), DomainError);
    CHECK_THROWS_AS(build_group("klein:4"), ValidationError);
    CHECK_THROWS_AS(build_group("dihedral:33"), CapacityError);
}

TEST_CASE("raw tables are validated") {
    // not a Latin square
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 1}), ValidationError);
    // Latin square with identity 0 that is not associative (order 5 loop)
    const std::vector<int> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup::from_table(5, loop), ValidationError);
    const auto c3 = FiniteGroup::from_table(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, std::nullopt, {"e", "x", "y"});
    CHECK(c3.name(1) == "x");
    CHECK(c3.inverse(1) == 2);
    CHECK_THROWS_AS(FiniteGroup::from_table(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}, std::nullopt, {"e", "x", "x"}),
                    ValidationError);
}

TEST_CASE("element operations") {
    const auto d6 = build_group("dihedral:3");
    const Element a = *d6.find("a"), t = *d6.find("t");
    CHECK(d6.multiply(t, a) == *d6.find("a^2 t"));
    CHECK(d6.multiply(t, a) == d6.multiply(d6.inverse(a), t));
    CHECK(d6.element_order(d6.identity()) == 1);
    CHECK_THROWS_AS(d6.multiply(0, 6), ValidationError);

    const auto q8 = build_group("dicyclic:2");
    CHECK(q8.multiply(q8.tau(), q8.tau()) == q8.power(q8.alpha(), 2));
}

TEST_CASE("group axioms hold exhaustively") {
    for (const auto& g : sample_groups()) {
        const int n = g.order();
        for (Element x = 0; x < n; ++x) {
            CHECK(g.multiply(g.identity(), x) == x);
            CHECK(g.multiply(x, g.identity()) == x);
            CHECK(g.multiply(x, g.inverse(x)) == g.identity());
            for (Element y = 0; y < n; ++y)
                for (Element z = 0; z < n; ++z)
                    REQUIRE(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
        }
    }
}

TEST_CASE("generated subgroups") {
    const auto d6 = build_group("dihedral:3");
    CHECK(generated_subgroup(d6, set_of(d6, {"a"})) == set_of(d6, {"1", "a", "a^2"}));
    CHECK(generated_subgroup(d6, set_of(d6, {"t", "a t"})) == d6.all());
    CHECK(generated_subgroup(d6, ElementSet::single(d6.identity())) == ElementSet::single(d6.identity()));
    CHECK_THROWS_AS(generated_subgroup(d6, ElementSet()), DomainError);
    for (const auto& g : sample_groups())
        for (Element x = 0; x < g.order(); ++x)
            CHECK(generated_subgroup(g, ElementSet::single(x)) == from_std(oracle::closure(g, {x})));
}

TEST_CASE("left stabilizers") {
    const auto c6 = build_group("cyclic:6");
    CHECK(left_stabilizer(c6, set_of(c6, {"0", "3"})) == set_of(c6, {"0", "3"}));
    CHECK(left_stabilizer(c6, set_of(c6, {"1"})) == set_of(c6, {"0"}));
    const auto c4 = build_group("cyclic:4");
    CHECK(left_stabilizer(c4, c4.all()) == c4.all());
    CHECK_THROWS_AS(left_stabilizer(c4, ElementSet()), DomainError);

    std::mt19937 rng(7);
    for (const auto& g : sample_groups()) {
        std::uniform_int_distribution<std::uint64_t> bits(1, (g.order() == 64 ? ~0ull : (1ull << g.order()) - 1));
        for (int rep = 0; rep < 20; ++rep) {
            const ElementSet s(bits(rng));
            const ElementSet h = left_stabilizer(g, s);
            const auto elems = s.elements();
            CHECK(h == from_std(oracle::left_stabilizer(g, std::set<Element>(elems.begin(), elems.end()))));
            CHECK(is_subgroup(g, h));
            // s is a union of right cosets H x
            s.for_each([&](Element x) {
                h.for_each([&](Element y) { CHECK(s.contains(g.multiply(y, x))); });
            });
        }
    }
}

TEST_CASE("commutator subgroups") {
    const auto c5 = build_group("cyclic:5");
    CHECK(commutator_subgroup(c5) == ElementSet::single(c5.identity()));
    const auto d6 = build_group("dihedral:3");
    CHECK(commutator_subgroup(d6) == set_of(d6, {"1", "a", "a^2"}));
    const auto q8 = build_group("dicyclic:2");
    CHECK(commutator_subgroup(q8) == set_of(q8, {"1", "a^2"}));
    for (const auto& g : sample_groups()) CHECK(commutator_subgroup(g) == from_std(oracle::commutators(g)));
}

TEST_CASE("quotients") {
    const auto d6 = build_group("dihedral:3");
    const auto triv = quotient(d6, ElementSet::single(d6.identity()));
    CHECK(triv.group.order() == 6);
    const auto whole = quotient(d6, d6.all());
    CHECK(whole.group.order() == 1);
    const auto c6 = build_group("cyclic:6");
    const auto c3 = quotient(c6, set_of(c6, {"0", "3"}));
    CHECK(c3.group.order() == 3);
    CHECK(c3.group.is_abelian());
    CHECK(c3.group.element_order(c3.projection[1]) == 3);
    CHECK_THROWS_AS(quotient(d6, set_of(d6, {"1", "t"})), DomainError);

    for (const auto& g : sample_groups()) {
        for (Element x = 0; x < g.order(); ++x) {
            const ElementSet n = generated_subgroup(g, ElementSet::single(x));
            if (!is_normal_subgroup(g, n)) continue;
            const auto q = quotient(g, n);
            CHECK(q.group.order() * n.size() == g.order());
            CHECK(is_homomorphism(g, q.group, q.projection));
        }
    }
}

TEST_CASE("automorphism groups") {
    CHECK(automorphism_group(build_group("cyclic:3")).size() == 2);
    CHECK(automorphism_group(build_group("dihedral:3")).size() == 6);
    CHECK(automorphism_group(build_group("dicyclic:2")).size() == 24);
    CHECK(automorphism_group(build_group("dihedral:4")).size() == 8);
    CHECK_THROWS_AS(automorphism_group(build_group("abelian:2x2x2x2"), 100), CapacityError);

    // brute force over all bijections for small groups
    for (const char* spec : {"cyclic:5", "cyclic:6", "dihedral:3", "abelian:2x2", "dihedral:4", "dicyclic:2"}) {
        const auto g = build_group(spec);
        std::vector<Element> p(static_cast<std::size_t>(g.order()));
        std::iota(p.begin(), p.end(), 0);
        std::size_t count = 0;
        do {
            if (is_homomorphism(g, g, p)) ++count;
        } while (std::next_permutation(p.begin(), p.end()));
        const auto aut = automorphism_group(g);
        CHECK(aut.size() == count);
        std::vector<Element> id(static_cast<std::size_t>(g.order()));
        std::iota(id.begin(), id.end(), 0);
        CHECK(aut.front() == id);
        for (const auto& f : aut)
            for (Element x = 0; x < g.order(); ++x) CHECK(g.element_order(f[static_cast<std::size_t>(x)]) == g.element_order(x));
    }
}

TEST_CASE("direct products and abelian specs") {
    const auto g = build_group("abelian:2x4");
    CHECK(g.order() == 8);
    CHECK(g.is_abelian());
    CHECK(g.find("(1,3)").has_value());
    int max_order = 0;
    for (Element x = 0; x < 8; ++x) max_order = std::max(max_order, g.element_order(x));
    CHECK(max_order == 4);
}
