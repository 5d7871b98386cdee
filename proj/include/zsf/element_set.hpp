#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace zsf {

using Element = int;

/// Subset of the elements of a group of order <= 64, one bit per element.
class ElementSet {
public:
    constexpr ElementSet() = default;
    constexpr explicit ElementSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr ElementSet single(Element e) { return ElementSet(std::uint64_t{1} << e); }
    static constexpr ElementSet first_n(int n) {
        return ElementSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr bool contains(Element e) const { return (bits_ >> e) & 1U; }
    constexpr void insert(Element e) { bits_ |= std::uint64_t{1} << e; }
    constexpr void erase(Element e) { bits_ &= ~(std::uint64_t{1} << e); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr bool subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }

    constexpr ElementSet& operator|=(ElementSet o) { bits_ |= o.bits_; return *this; }
    constexpr ElementSet& operator&=(ElementSet o) { bits_ &= o.bits_; return *this; }
    friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return ElementSet(a.bits_ | b.bits_); }
    friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return ElementSet(a.bits_ & b.bits_); }
    friend constexpr bool operator==(ElementSet, ElementSet) = default;

    /// Members in increasing index order.
    std::vector<Element> elements() const {
        std::vector<Element> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<Element>(std::countr_zero(b)));
    }

private:
    std::uint64_t bits_ = 0;
};

}  // namespace zsf
