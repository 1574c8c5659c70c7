#include "fretchet/relation.hpp"

#include <algorithm>
#include <map>

#include "fretchet/errors.hpp"

namespace fretchet {

Relation::Relation(IndexSet domain, IndexSet codomain, std::vector<Pair> pairs)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), pairs_(std::move(pairs)) {
    for (const auto& [x, y] : pairs_)
        if (x >= domain_.card() || y >= codomain_.card())
            throw DimError("relation pair (" + std::to_string(x + 1) + "," + std::to_string(y + 1) +
                           ") outside " + to_string(domain_) + " x " + to_string(codomain_));
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

Relation Relation::from_values(IndexSet domain, IndexSet codomain,
                               const std::vector<std::pair<IndexValue, IndexValue>>& pairs) {
    std::vector<Pair> ps;
    ps.reserve(pairs.size());
    for (const auto& [x, y] : pairs) ps.emplace_back(domain.ordinal_of(x), codomain.ordinal_of(y));
    return Relation(std::move(domain), std::move(codomain), std::move(ps));
}

Relation Relation::full(IndexSet domain, IndexSet codomain) {
    std::vector<Pair> ps;
    ps.reserve(domain.card() * codomain.card());
    for (std::size_t x = 0; x < domain.card(); ++x)
        for (std::size_t y = 0; y < codomain.card(); ++y) ps.emplace_back(x, y);
    return Relation(std::move(domain), std::move(codomain), std::move(ps));
}

Relation Relation::scan(std::size_t n) {
    std::vector<Pair> ps;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) ps.emplace_back(i, j);
    return Relation(IndexSet::seg(n), IndexSet::seg(n), std::move(ps));
}

Relation Relation::transpose() const {
    std::vector<Pair> ps;
    ps.reserve(pairs_.size());
    for (const auto& [x, y] : pairs_) ps.emplace_back(y, x);
    return Relation(codomain_, domain_, std::move(ps));
}

bool operator==(const Relation& a, const Relation& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.pairs_ == b.pairs_;
}

std::optional<Relation> compose_unique(const Relation& r, const Relation& s) {
    if (!(r.codomain() == s.domain()))
        throw DimError("cannot compose relations over " + to_string(r.codomain()) + " and " +
                       to_string(s.domain()));
    std::multimap<std::size_t, std::size_t> by_y;
    for (const auto& [y, z] : s.pairs()) by_y.emplace(y, z);
    std::vector<Relation::Pair> out;
    for (const auto& [x, y] : r.pairs()) {
        auto [lo, hi] = by_y.equal_range(y);
        for (auto it = lo; it != hi; ++it) out.emplace_back(x, it->second);
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) return std::nullopt;
    return Relation(r.domain(), s.codomain(), std::move(out));
}

std::string to_string(const Relation& r) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, y] : r.pairs()) {
        if (!first) out += ",";
        first = false;
        out += "(" + to_string(r.domain().value_at(x)) + "," + to_string(r.codomain().value_at(y)) + ")";
    }
    return out + "}";
}

}  // namespace fretchet
