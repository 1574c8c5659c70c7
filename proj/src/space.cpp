#include "fretchet/space.hpp"

#include "fretchet/errors.hpp"

namespace fretchet {

Space Space::zero() {
    static const Space z(std::make_shared<const Node>(Node{Kind::Zero, 0, {}, std::nullopt}));
    return z;
}

Space Space::scalar() {
    static const Space r(std::make_shared<const Node>(Node{Kind::Scalar, 1, {}, std::nullopt}));
    return r;
}

Space Space::tuple(std::vector<Space> components) {
    std::size_t dim = 0;
    for (const auto& c : components) dim += c.dim();
    return Space(std::make_shared<const Node>(
        Node{Kind::Tuple, dim, std::move(components), std::nullopt}));
}

Space Space::pow(IndexSet index, Space body) {
    const std::size_t dim = index.card() * body.dim();
    return Space(std::make_shared<const Node>(Node{Kind::Pow, dim, {std::move(body)}, std::move(index)}));
}

Space Space::tensor(Space left, Space right) {
    const std::size_t dim = left.dim() * right.dim();
    return Space(std::make_shared<const Node>(
        Node{Kind::Tensor, dim, {std::move(left), std::move(right)}, std::nullopt}));
}

const std::vector<Space>& Space::components() const {
    if (kind() != Kind::Tuple) throw ShapeError(to_string(*this) + " is not a tuple space");
    return node_->children;
}

const IndexSet& Space::index() const {
    if (kind() != Kind::Pow) throw ShapeError(to_string(*this) + " is not a copower");
    return *node_->index;
}

const Space& Space::body() const {
    if (kind() != Kind::Pow) throw ShapeError(to_string(*this) + " is not a copower");
    return node_->children[0];
}

const Space& Space::left() const {
    if (kind() != Kind::Tensor) throw ShapeError(to_string(*this) + " is not a tensor space");
    return node_->children[0];
}

const Space& Space::right() const {
    if (kind() != Kind::Tensor) throw ShapeError(to_string(*this) + " is not a tensor space");
    return node_->children[1];
}

IndexSet Space::family_index() const {
    if (kind() == Kind::Tuple) return IndexSet::seg(node_->children.size());
    if (kind() == Kind::Pow) return *node_->index;
    throw ShapeError(to_string(*this) + " is not a direct sum");
}

std::size_t Space::family_size() const {
    if (kind() == Kind::Tuple) return node_->children.size();
    if (kind() == Kind::Pow) return node_->index->card();
    throw ShapeError(to_string(*this) + " is not a direct sum");
}

Space Space::component(std::size_t i) const {
    if (i >= family_size())
        throw DimError("component " + std::to_string(i + 1) + " out of range for " + to_string(*this));
    return kind() == Kind::Tuple ? node_->children[i] : node_->children[0];
}

std::optional<Space> Space::copower_body() const {
    if (kind() == Kind::Pow) return body();
    if (kind() != Kind::Tuple || node_->children.empty()) return std::nullopt;
    for (const auto& c : node_->children)
        if (!(c == node_->children.front())) return std::nullopt;
    return node_->children.front();
}

bool operator==(const Space& a, const Space& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_family() && b.is_family()) {
        if (!(a.family_index() == b.family_index())) return false;
        const std::size_t n = a.family_size();
        if (n == 0) return true;
        if (a.kind() == Space::Kind::Pow && b.kind() == Space::Kind::Pow) return a.body() == b.body();
        for (std::size_t i = 0; i < n; ++i)
            if (!(a.component(i) == b.component(i))) return false;
        return true;
    }
    if (a.kind() != b.kind() || a.dim() != b.dim()) return false;
    if (a.kind() == Space::Kind::Tensor) return a.left() == b.left() && a.right() == b.right();
    return true;
}

bool identical(const Space& a, const Space& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Space::Kind::Zero:
    case Space::Kind::Scalar:
        return true;
    case Space::Kind::Tuple: {
        const auto& x = a.components();
        const auto& y = b.components();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!identical(x[i], y[i])) return false;
        return true;
    }
    case Space::Kind::Pow:
        return a.index() == b.index() && identical(a.body(), b.body());
    case Space::Kind::Tensor:
        return identical(a.left(), b.left()) && identical(a.right(), b.right());
    }
    return false;
}

Space make_family(const IndexSet& index, std::vector<Space> components) {
    if (components.size() != index.card())
        throw ShapeError("family over " + to_string(index) + " needs " + std::to_string(index.card()) +
                         " components, got " + std::to_string(components.size()));
    bool homogeneous = !components.empty();
    for (const auto& c : components)
        if (!(c == components.front())) homogeneous = false;
    if (homogeneous) return Space::pow(index, components.front());
    if (index.is_seg()) return Space::tuple(std::move(components));
    if (components.empty()) return Space::pow(index, Space::zero());
    throw ShapeError("inhomogeneous family over non-segment index set " + to_string(index));
}

std::string to_string(const Space& s) {
    switch (s.kind()) {
    case Space::Kind::Zero:
        return "0";
    case Space::Kind::Scalar:
        return "R";
    case Space::Kind::Tuple: {
        std::string out = "{";
        const auto& cs = s.components();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) out += ", ";
            out += to_string(cs[i]);
        }
        return out + "}";
    }
    case Space::Kind::Pow: {
        const auto& b = s.body();
        std::string base = b.kind() == Space::Kind::Tensor ? "(" + to_string(b) + ")" : to_string(b);
        const auto& x = s.index();
        return base + "^" + (x.is_seg() ? to_string(x) : "(" + to_string(x) + ")");
    }
    case Space::Kind::Tensor: {
        // (x) is left-associative; a right operand that is itself a tensor needs parentheses.
        const auto& r = s.right();
        std::string rs = r.kind() == Space::Kind::Tensor ? "(" + to_string(r) + ")" : to_string(r);
        return to_string(s.left()) + " (x) " + rs;
    }
    }
    return {};
}

}  // namespace fretchet
