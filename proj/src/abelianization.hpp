#pragma once

#include <span>
#include <vector>

#include "zsf/group.hpp"

namespace zsf {

// Maps each element to its image in G/G' and folds count vectors there.
// A product-one sequence must fold to the identity.
class AbelianizationFilter {
public:
    explicit AbelianizationFilter(const FiniteGroup& g) {
        auto q = quotient(g, commutator_subgroup(g));
        proj_ = std::move(q.projection);
        table_ = q.group.table();
        order_ = q.group.order();
        identity_ = q.group.identity();
    }
    bool may_be_product_one(std::span<const int> counts) const {
        if (order_ == 1) return true;
        int acc = identity_;
        for (std::size_t x = 0; x < counts.size(); ++x) {
            const int img = proj_[x];
            for (int k = 0; k < counts[x]; ++k) acc = table_[static_cast<std::size_t>(acc * order_ + img)];
        }
        return acc == identity_;
    }

private:
    std::vector<Element> proj_;
    std::vector<int> table_;
    int order_ = 1;
    int identity_ = 0;
};

}  // namespace zsf
