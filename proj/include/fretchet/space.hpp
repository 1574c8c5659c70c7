#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fretchet/index_set.hpp"

namespace fretchet {

/// Shapes of finite-dimensional real Hilbert spaces:
///   0 | R | (V1, ..., Vn) | V^X | V (x) W
///
/// Tuples are inhomogeneous direct sums over <n>; Pow is the copower, a
/// direct sum of card(X) copies of one space. Both are "families". A tuple of
/// n identical components and the copower over <n> denote the same space and
/// compare equal.
class Space {
public:
    enum class Kind { Zero, Scalar, Tuple, Pow, Tensor };

    static Space zero();
    static Space scalar();
    static Space tuple(std::vector<Space> components);
    static Space pow(IndexSet index, Space body);
    static Space tensor(Space left, Space right);
    /// R^n, the copower of R over <n>.
    static Space real(std::size_t n) { return pow(IndexSet::seg(n), scalar()); }

    Kind kind() const noexcept { return node_->kind; }
    std::size_t dim() const noexcept { return node_->dim; }

    const std::vector<Space>& components() const;  // Tuple
    const IndexSet& index() const;                  // Pow
    const Space& body() const;                      // Pow
    const Space& left() const;                      // Tensor
    const Space& right() const;                     // Tensor

    bool is_family() const noexcept { return kind() == Kind::Tuple || kind() == Kind::Pow; }
    /// The index set of a family; <n> for an n-tuple.
    IndexSet family_index() const;
    std::size_t family_size() const;
    /// The space at ordinal `i` of a family.
    Space component(std::size_t i) const;
    /// The element space if this family is homogeneous (a copower view).
    std::optional<Space> copower_body() const;

    /// Space equality, identifying homogeneous tuples with copowers over <n>.
    friend bool operator==(const Space& a, const Space& b);
    /// Exact constructor-by-constructor equality.
    friend bool identical(const Space& a, const Space& b);

private:
    struct Node {
        Kind kind;
        std::size_t dim = 0;
        std::vector<Space> children;
        std::optional<IndexSet> index;
    };
    explicit Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Builds the direct sum of `components` over `index`: a copower when all
/// components agree, otherwise a tuple (which requires a segment index set).
Space make_family(const IndexSet& index, std::vector<Space> components);

std::string to_string(const Space& s);

}  // namespace fretchet
