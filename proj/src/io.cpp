#include "zsf/io.hpp"

#include <cctype>
#include <charconv>

namespace zsf {

using nlohmann::json;

json group_to_json(const FiniteGroup& g) {
    const auto& kind = g.kind();
    switch (kind.tag) {
        case GroupKindTag::cyclic: return {{"kind", "cyclic"}, {"n", kind.n}};
        case GroupKindTag::dihedral: return {{"kind", "dihedral"}, {"n", kind.n}};
        case GroupKindTag::dicyclic: return {{"kind", "dicyclic"}, {"n", kind.n}};
        case GroupKindTag::generic: break;
    }
    return {{"order", g.order()}, {"identity", g.identity()}, {"names", g.names()}, {"table", g.table()}};
}

FiniteGroup group_from_json(const json& j) {
    try {
        if (!j.is_object()) throw ValidationError("group must be a JSON object");
        if (j.contains("kind")) {
            const auto kind = j.at("kind").get<std::string>();
            return build_group(kind + ":" + std::to_string(j.at("n").get<int>()));
        }
        const int order = j.at("order").get<int>();
        if (order < 1) throw ValidationError("group order must be positive");
        if (order > kMaxGroupOrder) throw CapacityError("group order exceeds 64");
        auto table = j.at("table").get<std::vector<int>>();
        std::optional<Element> identity;
        if (j.contains("identity")) identity = j.at("identity").get<int>();
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        return FiniteGroup::from_table(order, std::move(table), identity, std::move(names));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed group JSON: ") + e.what());
    }
}

namespace {

std::optional<int> parse_count(std::string_view s) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// One term: "name", "(name)", either followed by "^[k]"; or "name^k" when
// "name^k" is not itself a name.
std::pair<Element, int> parse_term(const FiniteGroup& g, std::string_view tok) {
    auto bad = [&]() -> ValidationError { return ValidationError("unknown term '" + std::string(tok) + "'"); };
    if (auto e = g.find(tok)) return {*e, 1};
    std::string_view base = tok;
    int mult = 1;
    if (tok.ends_with(']')) {
        const auto open = tok.rfind("^[");
        if (open == std::string_view::npos) throw bad();
        auto k = parse_count(tok.substr(open + 2, tok.size() - open - 3));
        if (!k) throw bad();
        mult = *k;
        base = tok.substr(0, open);
    } else if (const auto caret = tok.rfind('^'); caret != std::string_view::npos && !tok.ends_with(')')) {
        auto k = parse_count(tok.substr(caret + 1));
        if (k && g.find(tok.substr(0, caret))) {
            mult = *k;
            base = tok.substr(0, caret);
        }
    }
    if (base.size() >= 2 && base.front() == '(' && base.back() == ')') base = base.substr(1, base.size() - 2);
    if (mult < 0) throw ValidationError("negative multiplicity in '" + std::string(tok) + "'");
    auto e = g.find(base);
    if (!e) throw bad();
    return {*e, mult};
}

}  // namespace

Sequence parse_sequence(const GroupPtr& g, std::string_view text) {
    Sequence s(g);
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        // a token runs to the next whitespace outside parentheses
        const std::size_t start = i;
        int depth = 0;
        while (i < text.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(text[i])))) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')' && --depth < 0) throw ValidationError("unbalanced ')' in sequence");
            ++i;
        }
        if (depth != 0) throw ValidationError("unbalanced '(' in sequence");
        const auto [e, k] = parse_term(*g, text.substr(start, i - start));
        s.add(e, k);
    }
    return s;
}

json sequence_to_json(const Sequence& s) {
    json terms = json::array();
    const auto& g = s.group();
    for (Element x = 0; x < g.order(); ++x) {
        const int c = s.count(x);
        if (c == 0) continue;
        terms.push_back(c == 1 ? g.name(x) : g.name(x) + "^[" + std::to_string(c) + "]");
    }
    return {{"group", group_to_json(g)}, {"terms", terms}};
}

Sequence sequence_from_json(const json& j, GroupPtr group) {
    try {
        if (!group) group = std::make_shared<const FiniteGroup>(group_from_json(j.at("group")));
        Sequence s(group);
        for (const auto& t : j.at("terms")) {
            const auto [e, k] = parse_term(*group, t.get<std::string>());
            s.add(e, k);
        }
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed sequence JSON: ") + e.what());
    }
}

}  // namespace zsf
