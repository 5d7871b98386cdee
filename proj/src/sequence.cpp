#include "zsf/sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

namespace zsf {

Sequence::Sequence(GroupPtr group) : group_(std::move(group)) {
    if (!group_) throw ValidationError("sequence needs a group");
    counts_.assign(static_cast<std::size_t>(group_->order()), 0);
}

Sequence::Sequence(GroupPtr group, std::vector<int> counts) : group_(std::move(group)), counts_(std::move(counts)) {
    if (!group_) throw ValidationError("sequence needs a group");
    if (counts_.size() != static_cast<std::size_t>(group_->order()))
        throw ValidationError("counts must have one entry per group element");
    for (int c : counts_)
        if (c < 0) throw ValidationError("multiplicities must be non-negative");
}

Sequence Sequence::from_terms(GroupPtr group, std::span<const Element> terms) {
    Sequence s(std::move(group));
    for (Element t : terms) s.add(t);
    return s;
}

int Sequence::count(Element g) const {
    if (!group_->contains(g)) throw ValidationError("element index out of range");
    return counts_[static_cast<std::size_t>(g)];
}

int Sequence::length() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

ElementSet Sequence::support() const {
    ElementSet out;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > 0) out.insert(static_cast<Element>(i));
    return out;
}

int Sequence::max_multiplicity() const { return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end()); }

bool Sequence::divides(const Sequence& other) const {
    if (counts_.size() != other.counts_.size()) return false;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > other.counts_[i]) return false;
    return true;
}

std::vector<Element> Sequence::terms() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        for (int k = 0; k < counts_[i]; ++k) out.push_back(static_cast<Element>(i));
    return out;
}

Sequence& Sequence::add(Element g, int k) {
    if (!group_->contains(g)) throw ValidationError("element index out of range");
    if (counts_[static_cast<std::size_t>(g)] + k < 0) throw DomainError("multiplicity would become negative");
    counts_[static_cast<std::size_t>(g)] += k;
    return *this;
}

Sequence Sequence::operator*(const Sequence& other) const {
    if (counts_.size() != other.counts_.size()) throw DomainError("sequences over different groups");
    Sequence out = *this;
    for (std::size_t i = 0; i < counts_.size(); ++i) out.counts_[i] += other.counts_[i];
    return out;
}

Sequence Sequence::without(const Sequence& other) const {
    if (!other.divides(*this)) throw DomainError("T must divide S");
    Sequence out = *this;
    for (std::size_t i = 0; i < counts_.size(); ++i) out.counts_[i] -= other.counts_[i];
    return out;
}

Sequence Sequence::inverse() const {
    Sequence out(group_);
    for (Element g = 0; g < group_->order(); ++g)
        out.counts_[static_cast<std::size_t>(group_->inverse(g))] += counts_[static_cast<std::size_t>(g)];
    return out;
}

Sequence Sequence::permuted(const Permutation& perm) const {
    if (perm.size() != counts_.size()) throw ValidationError("permutation size mismatch");
    Sequence out(group_);
    for (std::size_t i = 0; i < counts_.size(); ++i) out.counts_[static_cast<std::size_t>(perm[i])] += counts_[i];
    return out;
}

std::string Sequence::to_string() const {
    std::string out;
    for (Element g = 0; g < group_->order(); ++g) {
        const int c = counts_[static_cast<std::size_t>(g)];
        if (c == 0) continue;
        if (!out.empty()) out += ' ';
        const auto& name = group_->name(g);
        if (name.find(' ') != std::string::npos || (c > 1 && name.find('^') != std::string::npos))
            out += "(" + name + ")";
        else
            out += name;
        if (c > 1) out += "^[" + std::to_string(c) + "]";
    }
    return out;
}

std::size_t default_budget() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("ZSF_BUDGET")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return std::size_t{1} << 24;
    }();
    return budget;
}

ProductTable::ProductTable(const FiniteGroup& group, std::span<const int> counts, std::size_t budget) {
    assign(group, counts, budget);
}

void ProductTable::assign(const FiniteGroup& group, std::span<const int> counts, std::size_t budget) {
    if (counts.size() != static_cast<std::size_t>(group.order())) throw ValidationError("counts size mismatch");
    order_ = group.order();
    support_.clear();
    radix_.clear();
    int total = 0;
    std::size_t entries = 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] <= 0) continue;
        support_.push_back(static_cast<Element>(i));
        radix_.push_back(counts[i] + 1);
        total += counts[i];
        entries *= static_cast<std::size_t>(counts[i] + 1);
        if (entries > budget) throw CapacityError("sub-multiset table exceeds budget of " + std::to_string(budget));
    }
    const std::size_t k = support_.size();
    weights_.assign(k, 1);
    for (std::size_t p = k; p-- > 1;) weights_[p - 1] = weights_[p] * static_cast<std::size_t>(radix_[p]);

    products_.resize(entries);
    lengths_.resize(entries);
    by_length_.assign(static_cast<std::size_t>(total) + 1, ElementSet{});
    products_[0] = ElementSet::single(group.identity());
    lengths_[0] = 0;
    by_length_[0] = products_[0];
    all_ = ElementSet{};

    int cur[kMaxGroupOrder] = {};
    int len = 0;
    for (std::size_t r = 1; r < entries; ++r) {
        for (std::size_t p = k; p-- > 0;) {
            if (cur[p] + 1 < radix_[p]) {
                ++cur[p];
                ++len;
                break;
            }
            len -= cur[p];
            cur[p] = 0;
        }
        ElementSet acc;
        for (std::size_t p = 0; p < k; ++p)
            if (cur[p] > 0) acc |= group.right_multiply(products_[r - weights_[p]], support_[p]);
        products_[r] = acc;
        lengths_[r] = static_cast<std::uint16_t>(len);
        by_length_[static_cast<std::size_t>(len)] |= acc;
        all_ |= acc;
    }
}

ElementSet ProductTable::products_of_length(int n) const {
    if (n < 1 || static_cast<std::size_t>(n) >= by_length_.size()) return {};
    return by_length_[static_cast<std::size_t>(n)];
}

std::vector<int> ProductTable::counts_of(std::size_t rank) const {
    std::vector<int> out(static_cast<std::size_t>(order_), 0);
    for (std::size_t p = 0; p < support_.size(); ++p) out[static_cast<std::size_t>(support_[p])] = digit(rank, p);
    return out;
}

std::size_t ProductTable::rank_of(std::span<const int> counts) const {
    if (counts.size() != static_cast<std::size_t>(order_)) throw ValidationError("counts size mismatch");
    std::size_t r = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] == 0) continue;
        const auto it = std::lower_bound(support_.begin(), support_.end(), static_cast<Element>(i));
        if (it == support_.end() || *it != static_cast<Element>(i)) throw DomainError("not a sub-multiset of the base");
        const auto p = static_cast<std::size_t>(it - support_.begin());
        if (counts[i] >= radix_[p]) throw DomainError("not a sub-multiset of the base");
        r += static_cast<std::size_t>(counts[i]) * weights_[p];
    }
    return r;
}

std::optional<std::vector<Element>> ProductTable::ordering(const FiniteGroup& group, std::size_t rank,
                                                           Element target) const {
    if (!products_[rank].contains(target)) return std::nullopt;
    std::vector<Element> rev;
    while (rank != 0) {
        bool stepped = false;
        for (std::size_t p = 0; p < support_.size() && !stepped; ++p) {
            if (digit(rank, p) == 0) continue;
            const Element g = support_[p];
            const Element prev_target = group.multiply(target, group.inverse(g));
            if (products_[rank - weights_[p]].contains(prev_target)) {
                rev.push_back(g);
                rank -= weights_[p];
                target = prev_target;
                stepped = true;
            }
        }
        if (!stepped) return std::nullopt;  // unreachable for a consistent table
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

ElementSet product_set(const Sequence& s, std::size_t budget) {
    ProductTable table(s.group(), s.counts(), budget);
    return table.products(table.full_rank());
}

ElementSet subsequence_products(const Sequence& s, std::optional<int> n, std::size_t budget) {
    if (n && (*n < 1 || *n > s.length())) throw DomainError("n must lie in [1, |S|]");
    ProductTable table(s.group(), s.counts(), budget);
    return n ? table.products_of_length(*n) : table.all_products();
}

ElementSet sigma_variants(const Sequence& s, std::optional<int> n, std::size_t budget) {
    if (!s.group().is_abelian()) throw DomainError("sigma variants need an abelian group");
    return subsequence_products(s, n, budget);
}

Classification classify(const Sequence& s, std::size_t budget) {
    ProductTable table(s.group(), s.counts(), budget);
    const Element e = s.group().identity();
    return {table.products(table.full_rank()).contains(e), !table.all_products().contains(e),
            s.max_multiplicity() <= 1};
}

std::optional<std::vector<Element>> product_ordering(const Sequence& s, std::optional<Element> target,
                                                     std::size_t budget) {
    ProductTable table(s.group(), s.counts(), budget);
    return table.ordering(s.group(), table.full_rank(), target.value_or(s.group().identity()));
}

namespace {

bool is_cyclic(const FiniteGroup& g) {
    for (Element x = 0; x < g.order(); ++x)
        if (g.element_order(x) == g.order()) return true;
    return false;
}

std::optional<SmoothCertificate> check_smooth(const Sequence& s, Element g) {
    const FiniteGroup& grp = s.group();
    const int k = grp.element_order(g);
    // multiple index of each element of <g>
    std::vector<int> multiple(static_cast<std::size_t>(grp.order()), -1);
    Element x = grp.identity();
    for (int i = 0; i < k; ++i, x = grp.multiply(x, g)) multiple[static_cast<std::size_t>(x)] = i;

    SmoothCertificate cert;
    cert.g = g;
    for (Element t : s.terms()) {
        const int n = multiple[static_cast<std::size_t>(t)];
        if (n <= 0) return std::nullopt;
        cert.coefficients.push_back(n);
    }
    std::sort(cert.coefficients.begin(), cert.coefficients.end());
    if (cert.coefficients.empty() || cert.coefficients.front() != 1) return std::nullopt;
    cert.m = std::accumulate(cert.coefficients.begin(), cert.coefficients.end(), 0);
    if (cert.m >= k) return std::nullopt;
    ElementSet expected;
    Element y = grp.identity();
    for (int i = 1; i <= cert.m; ++i) {
        y = grp.multiply(y, g);
        expected.insert(y);
    }
    if (subsequence_products(s) != expected) return std::nullopt;
    return cert;
}

}  // namespace

std::optional<SmoothCertificate> smoothness(const Sequence& s, std::optional<Element> g) {
    const FiniteGroup& grp = s.group();
    if (!is_cyclic(grp)) throw DomainError("smoothness is defined over cyclic groups");
    if (s.length() < 1) throw DomainError("smoothness needs |S| >= 1");
    if (g) {
        if (!grp.contains(*g)) throw ValidationError("element index out of range");
        return check_smooth(s, *g);
    }
    for (Element x = 0; x < grp.order(); ++x) {
        if (grp.element_order(x) != grp.order()) continue;
        if (auto cert = check_smooth(s, x)) return cert;
    }
    return std::nullopt;
}

Sequence transform(const Sequence& s, GroupPtr target, const std::vector<Element>& map) {
    if (!target) throw ValidationError("transform needs a target group");
    if (!is_homomorphism(s.group(), *target, map)) throw DomainError("map is not a group homomorphism");
    Sequence out(std::move(target));
    for (Element g = 0; g < s.group().order(); ++g) out.add(map[static_cast<std::size_t>(g)], s.counts()[static_cast<std::size_t>(g)]);
    return out;
}

}  // namespace zsf
