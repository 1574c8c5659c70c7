#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fretchet/cost.hpp"
#include "fretchet/space.hpp"

namespace fretchet {

struct TensorTerm;

/// A concrete element of a Space.
///
/// Every vector carries its space. Tensor elements are kept as un-normalised
/// formal sums of scaled pure tensors; they are only canonicalised by
/// to_coords and inner, so two tensor vectors are compared semantically.
class Vector {
public:
    enum class Kind { Zero, Scalar, Family, Tensor };

    static Vector zero(Space space);
    static Vector scalar(double x);
    /// Elements of a direct sum; item shapes are checked against `space`.
    static Vector family(Space space, std::vector<Vector> items);
    static Vector tuple(std::vector<Vector> items);
    /// Element of body^index; `body` is taken from the first item when omitted.
    static Vector copower(IndexSet index, std::vector<Vector> items);
    static Vector copower(IndexSet index, Space body, std::vector<Vector> items);
    /// R^n vector from plain numbers.
    static Vector reals(std::span<const double> xs);
    static Vector reals(std::initializer_list<double> xs);
    static Vector tensor(Space left, Space right, std::vector<TensorTerm> terms);
    static Vector pure(const Vector& left, const Vector& right, double coeff = 1.0);

    Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
    const Space& space() const noexcept { return space_; }

    double value() const;                          // Scalar (Zero of R gives 0)
    const std::vector<Vector>& items() const;      // Family
    const std::vector<TensorTerm>& terms() const;  // Tensor

    /// Item `i` of a family vector; zero vectors yield zero components.
    Vector item(std::size_t i) const;

private:
    using Items = std::shared_ptr<const std::vector<Vector>>;
    using Terms = std::shared_ptr<const std::vector<TensorTerm>>;
    using Data = std::variant<std::monostate, double, Items, Terms>;

    Vector(Space space, Data data) : space_(std::move(space)), data_(std::move(data)) {}

    Space space_;
    Data data_;
};

/// One summand coeff * (left (x) right) of a formal tensor sum.
struct TensorTerm {
    double coeff;
    Vector left;
    Vector right;
};

/// All items of a family vector, materialising zeros.
std::vector<Vector> family_items(const Vector& v);

Vector vec_zero(const Space& space);
Vector vec_add(const Vector& v, const Vector& w, CostCounter* counter = nullptr);
Vector vec_scale(double k, const Vector& v, CostCounter* counter = nullptr);
Vector vec_sub(const Vector& v, const Vector& w);

double inner(const Vector& v, const Vector& w, CostCounter* counter = nullptr);
double norm(const Vector& v);

Vector basis(const Space& space, std::size_t i);
std::vector<double> to_coords(const Vector& v);
Vector from_coords(const Space& space, std::span<const double> coords);

/// Swaps the factors of every pure term: (c, u, w) -> (c, w, u).
Vector transpose(const Vector& v);
/// Tensor contraction (w (x) v) * (v' (x) u) = (v . v') (w (x) u), extended bilinearly.
Vector contract(const Vector& x, const Vector& y, CostCounter* counter = nullptr);
/// Re-expresses a tensor vector as sum_i e_i (x) row_i (one term per left basis vector).
Vector compact(const Vector& v);

/// Same constructors and numbers, recursively.
bool structurally_equal(const Vector& v, const Vector& w);
/// Coordinate-wise comparison with absolute tolerance.
bool approx_equal(const Vector& v, const Vector& w, double tol = 1e-12);

std::string to_string(const Vector& v);
std::string format_real(double x);

}  // namespace fretchet
