#include "fretchet/index_set.hpp"

#include "fretchet/errors.hpp"

namespace fretchet {

IndexSet IndexSet::seg(std::size_t n) {
    return IndexSet(std::make_shared<const Node>(Node{Kind::Seg, n, n, {}}));
}

IndexSet IndexSet::prod(IndexSet left, IndexSet right) {
    const std::size_t card = left.card() * right.card();
    return IndexSet(std::make_shared<const Node>(
        Node{Kind::Prod, 0, card, {std::move(left), std::move(right)}}));
}

IndexSet IndexSet::sum(IndexSet left, IndexSet right) {
    const std::size_t card = left.card() + right.card();
    return IndexSet(std::make_shared<const Node>(
        Node{Kind::Sum, 0, card, {std::move(left), std::move(right)}}));
}

const IndexSet& IndexSet::left() const {
    if (is_seg()) throw DimError("segment index set has no left factor");
    return node_->children[0];
}

const IndexSet& IndexSet::right() const {
    if (is_seg()) throw DimError("segment index set has no right factor");
    return node_->children[1];
}

std::vector<IndexValue> IndexSet::enumerate() const {
    std::vector<IndexValue> out;
    out.reserve(card());
    for (std::size_t i = 0; i < card(); ++i) out.push_back(value_at(i));
    return out;
}

IndexValue IndexSet::value_at(std::size_t ordinal) const {
    if (ordinal >= card())
        throw DimError("index ordinal " + std::to_string(ordinal) + " out of range for " +
                       to_string(*this));
    switch (kind()) {
    case Kind::Seg:
        return IndexValue::natural(ordinal + 1);
    case Kind::Prod: {
        const std::size_t rc = right().card();
        return IndexValue::pair(left().value_at(ordinal / rc), right().value_at(ordinal % rc));
    }
    case Kind::Sum:
        if (ordinal < left().card()) return IndexValue::inl(left().value_at(ordinal));
        return IndexValue::inr(right().value_at(ordinal - left().card()));
    }
    return {};
}

std::size_t IndexSet::ordinal_of(const IndexValue& v) const {
    auto fail = [&]() -> std::size_t {
        throw DimError(to_string(v) + " is not an element of " + to_string(*this));
    };
    switch (kind()) {
    case Kind::Seg:
        if (v.kind != IndexValue::Kind::Nat || v.nat < 1 || v.nat > n()) return fail();
        return v.nat - 1;
    case Kind::Prod:
        if (v.kind != IndexValue::Kind::Pair) return fail();
        return left().ordinal_of(v.parts[0]) * right().card() + right().ordinal_of(v.parts[1]);
    case Kind::Sum:
        if (v.kind == IndexValue::Kind::Inl) return left().ordinal_of(v.parts[0]);
        if (v.kind == IndexValue::Kind::Inr) return left().card() + right().ordinal_of(v.parts[0]);
        return fail();
    }
    return fail();
}

bool operator==(const IndexSet& a, const IndexSet& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.is_seg()) return a.n() == b.n();
    return a.left() == b.left() && a.right() == b.right();
}

std::string to_string(const IndexValue& v) {
    switch (v.kind) {
    case IndexValue::Kind::Nat:
        return std::to_string(v.nat);
    case IndexValue::Kind::Pair:
        return "(" + to_string(v.parts[0]) + "," + to_string(v.parts[1]) + ")";
    case IndexValue::Kind::Inl:
        return "inl " + to_string(v.parts[0]);
    case IndexValue::Kind::Inr:
        return "inr " + to_string(v.parts[0]);
    }
    return {};
}

std::string to_string(const IndexSet& x) {
    auto child = [](const IndexSet& c) {
        return c.is_seg() ? to_string(c) : "(" + to_string(c) + ")";
    };
    switch (x.kind()) {
    case IndexSet::Kind::Seg:
        return std::to_string(x.n());
    case IndexSet::Kind::Prod:
        return child(x.left()) + "*" + child(x.right());
    case IndexSet::Kind::Sum:
        return child(x.left()) + "+" + child(x.right());
    }
    return {};
}

}  // namespace fretchet
