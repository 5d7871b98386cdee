#pragma once

#include <span>
#include <vector>

#include "zsf/element_set.hpp"

namespace zsf {

/// Calls visit(counts) for every multiset of exactly `length` terms drawn
/// from `elems`; `counts` is indexed by element and restored afterwards.
template <typename Visit>
void for_each_multiset(std::span<const Element> elems, int length, std::vector<int>& counts, Visit&& visit) {
    if (elems.empty()) {
        if (length == 0) visit(counts);
        return;
    }
    auto dfs = [&](auto&& self, std::size_t pos, int rem) -> void {
        const auto idx = static_cast<std::size_t>(elems[pos]);
        if (pos + 1 == elems.size()) {
            counts[idx] = rem;
            visit(counts);
            counts[idx] = 0;
            return;
        }
        for (int c = rem; c >= 0; --c) {
            counts[idx] = c;
            self(self, pos + 1, rem - c);
        }
        counts[idx] = 0;
    };
    dfs(dfs, 0, length);
}

}  // namespace zsf
