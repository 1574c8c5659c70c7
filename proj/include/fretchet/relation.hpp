#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fretchet/index_set.hpp"

namespace fretchet {

/// A finite relation R between two index sets, stored as sorted, duplicate-free
/// pairs of ordinals (positions in enumerate order).
class Relation {
public:
    using Pair = std::pair<std::size_t, std::size_t>;

    /// Throws DimError if a pair falls outside domain x codomain.
    Relation(IndexSet domain, IndexSet codomain, std::vector<Pair> pairs);

    static Relation from_values(IndexSet domain, IndexSet codomain,
                                const std::vector<std::pair<IndexValue, IndexValue>>& pairs);
    /// X x Y, every pair.
    static Relation full(IndexSet domain, IndexSet codomain);
    /// {(i, j) | 1 <= i <= j <= n}.
    static Relation scan(std::size_t n);

    const IndexSet& domain() const noexcept { return domain_; }
    const IndexSet& codomain() const noexcept { return codomain_; }
    const std::vector<Pair>& pairs() const noexcept { return pairs_; }

    Relation transpose() const;

    friend bool operator==(const Relation& a, const Relation& b);

private:
    IndexSet domain_;
    IndexSet codomain_;
    std::vector<Pair> pairs_;
};

/// R;S = {(x, z) | exists y. (x, y) in R and (y, z) in S}, or nullopt when
/// some (x, z) has more than one witness y (then red_S . red_R counts it twice).
std::optional<Relation> compose_unique(const Relation& r, const Relation& s);

std::string to_string(const Relation& r);

}  // namespace fretchet
