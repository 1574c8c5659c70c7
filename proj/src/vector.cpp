#include "fretchet/vector.hpp"

#include <charconv>
#include <cmath>

#include "fretchet/errors.hpp"

namespace fretchet {

namespace {

void require_same_space(const Vector& v, const Vector& w, const char* op) {
    if (!(v.space() == w.space()))
        throw ShapeError(std::string(op) + ": shape mismatch between " + to_string(v.space()) +
                         " and " + to_string(w.space()));
}

}  // namespace

// The zero of R is the number 0, so scalars have a single representation.
Vector Vector::zero(Space space) {
    if (space.kind() == Space::Kind::Scalar) return scalar(0.0);
    return Vector(std::move(space), std::monostate{});
}

Vector Vector::scalar(double x) { return Vector(Space::scalar(), x); }

Vector Vector::family(Space space, std::vector<Vector> items) {
    if (!space.is_family()) throw ShapeError(to_string(space) + " is not a direct sum");
    if (items.size() != space.family_size())
        throw ShapeError("direct sum " + to_string(space) + " needs " +
                         std::to_string(space.family_size()) + " items, got " +
                         std::to_string(items.size()));
    for (std::size_t i = 0; i < items.size(); ++i)
        if (!(items[i].space() == space.component(i)))
            throw ShapeError("item " + std::to_string(i + 1) + " has shape " +
                             to_string(items[i].space()) + ", expected " +
                             to_string(space.component(i)));
    return Vector(std::move(space), std::make_shared<const std::vector<Vector>>(std::move(items)));
}

Vector Vector::tuple(std::vector<Vector> items) {
    std::vector<Space> spaces;
    spaces.reserve(items.size());
    for (const auto& it : items) spaces.push_back(it.space());
    return Vector(Space::tuple(std::move(spaces)),
                  std::make_shared<const std::vector<Vector>>(std::move(items)));
}

Vector Vector::copower(IndexSet index, std::vector<Vector> items) {
    if (items.empty()) return copower(std::move(index), Space::scalar(), std::move(items));
    Space body = items.front().space();
    return copower(std::move(index), std::move(body), std::move(items));
}

Vector Vector::copower(IndexSet index, Space body, std::vector<Vector> items) {
    return family(Space::pow(std::move(index), std::move(body)), std::move(items));
}

Vector Vector::reals(std::span<const double> xs) {
    std::vector<Vector> items;
    items.reserve(xs.size());
    for (double x : xs) items.push_back(scalar(x));
    return Vector(Space::real(xs.size()), std::make_shared<const std::vector<Vector>>(std::move(items)));
}

Vector Vector::reals(std::initializer_list<double> xs) {
    return reals(std::span<const double>(xs.begin(), xs.size()));
}

Vector Vector::tensor(Space left, Space right, std::vector<TensorTerm> terms) {
    for (const auto& t : terms) {
        if (!(t.left.space() == left) || !(t.right.space() == right))
            throw ShapeError("tensor term " + to_string(t.left.space()) + " (x) " +
                             to_string(t.right.space()) + " does not belong to " + to_string(left) +
                             " (x) " + to_string(right));
    }
    return Vector(Space::tensor(std::move(left), std::move(right)),
                  std::make_shared<const std::vector<TensorTerm>>(std::move(terms)));
}

Vector Vector::pure(const Vector& left, const Vector& right, double coeff) {
    return tensor(left.space(), right.space(), {TensorTerm{coeff, left, right}});
}

double Vector::value() const {
    if (space_.kind() != Space::Kind::Scalar) throw ShapeError("not a scalar: " + to_string(space_));
    if (kind() == Kind::Zero) return 0.0;
    return std::get<double>(data_);
}

const std::vector<Vector>& Vector::items() const {
    if (kind() != Kind::Family) throw ShapeError("not a direct-sum element: " + to_string(space_));
    return *std::get<Items>(data_);
}

const std::vector<TensorTerm>& Vector::terms() const {
    if (kind() != Kind::Tensor) throw ShapeError("not a tensor sum: " + to_string(space_));
    return *std::get<Terms>(data_);
}

Vector Vector::item(std::size_t i) const {
    if (!space_.is_family()) throw ShapeError("not a direct-sum element: " + to_string(space_));
    if (kind() == Kind::Zero) return zero(space_.component(i));
    const auto& xs = items();
    if (i >= xs.size()) throw DimError("item " + std::to_string(i + 1) + " out of range");
    return xs[i];
}

std::vector<Vector> family_items(const Vector& v) {
    if (v.kind() == Vector::Kind::Family) return v.items();
    if (!v.space().is_family()) throw ShapeError("not a direct-sum element: " + to_string(v.space()));
    std::vector<Vector> out;
    const std::size_t n = v.space().family_size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(Vector::zero(v.space().component(i)));
    return out;
}

Vector vec_zero(const Space& space) { return Vector::zero(space); }

Vector vec_add(const Vector& v, const Vector& w, CostCounter* counter) {
    require_same_space(v, w, "vec_add");
    if (v.kind() == Vector::Kind::Zero) return w;
    if (w.kind() == Vector::Kind::Zero) return v;
    switch (v.kind()) {
    case Vector::Kind::Scalar:
        return Vector::scalar(v.value() + w.value());
    case Vector::Kind::Family: {
        const auto& a = v.items();
        const auto& b = w.items();
        std::vector<Vector> out;
        out.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out.push_back(vec_add(a[i], b[i], counter));
        return Vector::family(v.space(), std::move(out));
    }
    case Vector::Kind::Tensor: {
        std::vector<TensorTerm> terms = v.terms();
        const auto& more = w.terms();
        terms.insert(terms.end(), more.begin(), more.end());
        return Vector::tensor(v.space().left(), v.space().right(), std::move(terms));
    }
    case Vector::Kind::Zero:
        break;
    }
    return v;
}

Vector vec_scale(double k, const Vector& v, CostCounter* counter) {
    switch (v.kind()) {
    case Vector::Kind::Zero:
        return v;
    case Vector::Kind::Scalar:
        count(counter);
        return Vector::scalar(k * v.value());
    case Vector::Kind::Family: {
        std::vector<Vector> out;
        out.reserve(v.items().size());
        for (const auto& it : v.items()) out.push_back(vec_scale(k, it, counter));
        return Vector::family(v.space(), std::move(out));
    }
    case Vector::Kind::Tensor: {
        std::vector<TensorTerm> terms;
        terms.reserve(v.terms().size());
        for (const auto& t : v.terms()) terms.push_back({coeff_mul(k, t.coeff, counter), t.left, t.right});
        return Vector::tensor(v.space().left(), v.space().right(), std::move(terms));
    }
    }
    return v;
}

Vector vec_sub(const Vector& v, const Vector& w) { return vec_add(v, vec_scale(-1.0, w)); }

double inner(const Vector& v, const Vector& w, CostCounter* counter) {
    require_same_space(v, w, "inner");
    if (v.kind() == Vector::Kind::Zero || w.kind() == Vector::Kind::Zero) return 0.0;
    switch (v.kind()) {
    case Vector::Kind::Scalar:
        count(counter);
        return v.value() * w.value();
    case Vector::Kind::Family: {
        double acc = 0.0;
        const auto& a = v.items();
        const auto& b = w.items();
        for (std::size_t i = 0; i < a.size(); ++i) acc += inner(a[i], b[i], counter);
        return acc;
    }
    case Vector::Kind::Tensor: {
        // (u1 (x) v1) . (u2 (x) v2) = (u1 . u2) (v1 . v2), extended bilinearly.
        double acc = 0.0;
        for (const auto& s : v.terms()) {
            for (const auto& t : w.terms()) {
                const double k = coeff_mul(s.coeff, t.coeff, counter);
                const double a = inner(s.left, t.left, counter);
                const double b = inner(s.right, t.right, counter);
                count(counter);
                double ab = a * b;
                if (k != 1.0) {
                    count(counter);
                    ab *= k;
                }
                acc += ab;
            }
        }
        return acc;
    }
    case Vector::Kind::Zero:
        break;
    }
    return 0.0;
}

double norm(const Vector& v) { return std::sqrt(std::max(0.0, inner(v, v))); }

Vector basis(const Space& space, std::size_t i) {
    if (i >= space.dim())
        throw DimError("basis index " + std::to_string(i) + " out of range for " + to_string(space) +
                       " (dim " + std::to_string(space.dim()) + ")");
    switch (space.kind()) {
    case Space::Kind::Scalar:
        return Vector::scalar(1.0);
    case Space::Kind::Tuple:
    case Space::Kind::Pow: {
        std::vector<Vector> items;
        const std::size_t n = space.family_size();
        items.reserve(n);
        std::size_t offset = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Space c = space.component(k);
            if (i >= offset && i < offset + c.dim())
                items.push_back(basis(c, i - offset));
            else
                items.push_back(Vector::zero(c));
            offset += c.dim();
        }
        return Vector::family(space, std::move(items));
    }
    case Space::Kind::Tensor: {
        const std::size_t n = space.right().dim();
        return Vector::pure(basis(space.left(), i / n), basis(space.right(), i % n));
    }
    case Space::Kind::Zero:
        break;
    }
    throw DimError("zero space has no basis");
}

namespace {

void append_coords(const Vector& v, std::vector<double>& out) {
    switch (v.kind()) {
    case Vector::Kind::Zero:
        out.insert(out.end(), v.space().dim(), 0.0);
        return;
    case Vector::Kind::Scalar:
        out.push_back(v.value());
        return;
    case Vector::Kind::Family:
        for (const auto& it : v.items()) append_coords(it, out);
        return;
    case Vector::Kind::Tensor: {
        const std::size_t n = v.space().right().dim();
        const std::size_t base = out.size();
        out.insert(out.end(), v.space().dim(), 0.0);
        for (const auto& t : v.terms()) {
            const auto l = to_coords(t.left);
            const auto r = to_coords(t.right);
            for (std::size_t a = 0; a < l.size(); ++a) {
                if (l[a] == 0.0) continue;
                const double s = t.coeff * l[a];
                for (std::size_t b = 0; b < r.size(); ++b) out[base + a * n + b] += s * r[b];
            }
        }
        return;
    }
    }
}

}  // namespace

std::vector<double> to_coords(const Vector& v) {
    std::vector<double> out;
    out.reserve(v.space().dim());
    append_coords(v, out);
    return out;
}

Vector from_coords(const Space& space, std::span<const double> coords) {
    if (coords.size() != space.dim())
        throw DimError("from_coords: " + to_string(space) + " has dimension " +
                       std::to_string(space.dim()) + ", got " + std::to_string(coords.size()) +
                       " coordinates");
    switch (space.kind()) {
    case Space::Kind::Zero:
        return Vector::zero(space);
    case Space::Kind::Scalar:
        return Vector::scalar(coords[0]);
    case Space::Kind::Tuple:
    case Space::Kind::Pow: {
        std::vector<Vector> items;
        const std::size_t n = space.family_size();
        items.reserve(n);
        std::size_t offset = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Space c = space.component(k);
            items.push_back(from_coords(c, coords.subspan(offset, c.dim())));
            offset += c.dim();
        }
        return Vector::family(space, std::move(items));
    }
    case Space::Kind::Tensor: {
        const std::size_t m = space.left().dim();
        const std::size_t n = space.right().dim();
        std::vector<TensorTerm> terms;
        terms.reserve(m);
        if (n > 0)
            for (std::size_t i = 0; i < m; ++i)
                terms.push_back({1.0, basis(space.left(), i),
                                 from_coords(space.right(), coords.subspan(i * n, n))});
        return Vector::tensor(space.left(), space.right(), std::move(terms));
    }
    }
    return Vector::zero(space);
}

Vector transpose(const Vector& v) {
    if (v.space().kind() != Space::Kind::Tensor)
        throw ShapeError("transpose: not a tensor: " + to_string(v.space()));
    const Space& l = v.space().left();
    const Space& r = v.space().right();
    if (v.kind() == Vector::Kind::Zero) return Vector::zero(Space::tensor(r, l));
    std::vector<TensorTerm> terms;
    terms.reserve(v.terms().size());
    for (const auto& t : v.terms()) terms.push_back({t.coeff, t.right, t.left});
    return Vector::tensor(r, l, std::move(terms));
}

Vector contract(const Vector& x, const Vector& y, CostCounter* counter) {
    const Space& xs = x.space();
    const Space& ys = y.space();
    if (xs.kind() != Space::Kind::Tensor || ys.kind() != Space::Kind::Tensor)
        throw ShapeError("contract: operands must be tensors, got " + to_string(xs) + " and " +
                         to_string(ys));
    if (!(xs.right() == ys.left()))
        throw ShapeError("contract: inner factors differ: " + to_string(xs.right()) + " vs " +
                         to_string(ys.left()));
    Space w = xs.left();
    Space u = ys.right();
    if (x.kind() == Vector::Kind::Zero || y.kind() == Vector::Kind::Zero)
        return Vector::zero(Space::tensor(w, u));
    std::vector<TensorTerm> terms;
    terms.reserve(x.terms().size() * y.terms().size());
    for (const auto& s : x.terms()) {
        for (const auto& t : y.terms()) {
            const double k = coeff_mul(s.coeff, t.coeff, counter);
            double c = inner(s.right, t.left, counter);
            if (k != 1.0) {
                count(counter);
                c *= k;
            }
            terms.push_back({c, s.left, t.right});
        }
    }
    return Vector::tensor(std::move(w), std::move(u), std::move(terms));
}

Vector compact(const Vector& v) {
    if (v.space().kind() != Space::Kind::Tensor) return v;
    const auto c = to_coords(v);
    return from_coords(v.space(), c);
}

bool structurally_equal(const Vector& v, const Vector& w) {
    if (v.kind() != w.kind() || !identical(v.space(), w.space())) return false;
    switch (v.kind()) {
    case Vector::Kind::Zero:
        return true;
    case Vector::Kind::Scalar:
        return v.value() == w.value();
    case Vector::Kind::Family: {
        const auto& a = v.items();
        const auto& b = w.items();
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!structurally_equal(a[i], b[i])) return false;
        return true;
    }
    case Vector::Kind::Tensor: {
        const auto& a = v.terms();
        const auto& b = w.terms();
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].coeff != b[i].coeff || !structurally_equal(a[i].left, b[i].left) ||
                !structurally_equal(a[i].right, b[i].right))
                return false;
        return true;
    }
    }
    return false;
}

bool approx_equal(const Vector& v, const Vector& w, double tol) {
    if (!(v.space() == w.space())) return false;
    const auto a = to_coords(v);
    const auto b = to_coords(w);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return std::to_string(x);
    return std::string(buf, end);
}

std::string to_string(const Vector& v) {
    switch (v.kind()) {
    case Vector::Kind::Zero:
        if (v.space().kind() == Space::Kind::Scalar) return "0";
        return "zero[" + to_string(v.space()) + "]";
    case Vector::Kind::Scalar:
        return format_real(v.value());
    case Vector::Kind::Family: {
        const auto& xs = v.items();
        std::string body;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) body += ", ";
            body += to_string(xs[i]);
        }
        if (v.space().kind() == Space::Kind::Tuple) return xs.size() == 1 ? "(" + body + ",)" : "(" + body + ")";
        const IndexSet& x = v.space().index();
        if (x.is_seg()) return "[" + body + "]";
        return "[" + to_string(x) + ": " + body + "]";
    }
    case Vector::Kind::Tensor: {
        const auto& ts = v.terms();
        if (ts.empty())
            return "tensor[" + to_string(v.space().left()) + ", " + to_string(v.space().right()) + "]{}";
        std::string out = "tensor{ ";
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i) out += ", ";
            out += format_real(ts[i].coeff) + " * " + to_string(ts[i].left) + " (x) " + to_string(ts[i].right);
        }
        return out + " }";
    }
    }
    return {};
}

}  // namespace fretchet
