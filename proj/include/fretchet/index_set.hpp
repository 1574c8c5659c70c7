#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace fretchet {

/// An element of an index set: a segment number (1-based), a pair for
/// products, or a tagged element of a disjoint sum.
struct IndexValue {
    enum class Kind { Nat, Pair, Inl, Inr };

    Kind kind = Kind::Nat;
    std::size_t nat = 0;
    std::vector<IndexValue> parts;

    static IndexValue natural(std::size_t n) { return {Kind::Nat, n, {}}; }
    static IndexValue pair(IndexValue a, IndexValue b) {
        return {Kind::Pair, 0, {std::move(a), std::move(b)}};
    }
    static IndexValue inl(IndexValue a) { return {Kind::Inl, 0, {std::move(a)}}; }
    static IndexValue inr(IndexValue b) { return {Kind::Inr, 0, {std::move(b)}}; }

    friend bool operator==(const IndexValue&, const IndexValue&) = default;
};

std::string to_string(const IndexValue& v);

/// Finite index sets: X, Y ::= <n> | X * Y | X + Y.
///
/// Elements are enumerated in a fixed order: 1..n for segments, row-major
/// for products, left summand before right summand for sums. Internally an
/// element is identified by its position (ordinal) in that order.
class IndexSet {
public:
    enum class Kind { Seg, Prod, Sum };

    static IndexSet seg(std::size_t n);
    static IndexSet prod(IndexSet left, IndexSet right);
    static IndexSet sum(IndexSet left, IndexSet right);

    Kind kind() const noexcept { return node_->kind; }
    bool is_seg() const noexcept { return node_->kind == Kind::Seg; }
    /// Segment length; only meaningful for Seg.
    std::size_t n() const noexcept { return node_->n; }
    const IndexSet& left() const;
    const IndexSet& right() const;

    std::size_t card() const noexcept { return node_->card; }
    std::vector<IndexValue> enumerate() const;
    IndexValue value_at(std::size_t ordinal) const;
    /// Throws DimError if `v` is not an element.
    std::size_t ordinal_of(const IndexValue& v) const;

    friend bool operator==(const IndexSet& a, const IndexSet& b);

private:
    struct Node {
        Kind kind;
        std::size_t n = 0;
        std::size_t card = 0;
        std::vector<IndexSet> children;
    };
    explicit IndexSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

std::string to_string(const IndexSet& x);

}  // namespace fretchet
