#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fretchet/linterm.hpp"

namespace fretchet {

/// Scalar primitive R -> R with its derivative.
struct PrimOp {
    enum class Kind { Sin, Cos, Exp, Ln, Tanh, Pow };
    Kind kind;
    int k = 0;  // exponent of Pow, non-zero

    /// DomainError outside the domain (ln of x <= 0, negative powers of 0).
    double value(double x) const;
    double derivative(double x) const;
    /// (p'(x) .) as a linear term on R.
    LinTerm deriv_at(double x) const;
    std::string name() const;

    friend bool operator==(const PrimOp&, const PrimOp&) = default;
};

PrimOp prim_sin();
PrimOp prim_cos();
PrimOp prim_exp();
PrimOp prim_ln();
PrimOp prim_tanh();
PrimOp prim_pow(int k);

enum class BilinKind {
    Contract,    // (W (x) V, V (x) U) -> W (x) U
    TensorProd,  // (U, W) -> U (x) W
    Inner,       // (V, V) -> R
    ScalarMul,   // (R, V) -> V
    MatVec,      // (Vout (x) Vin, Vin) -> Vout
    Hadamard,    // (V, V) -> V, V built from R by direct sums
};

const char* bilin_name(BilinKind b);
Space bilin_codomain(BilinKind b, const Space& left, const Space& right);
Vector apply2(BilinKind b, const Vector& u, const Vector& v, CostCounter* counter = nullptr);

enum class Side { Left, Right };

/// Sections as linear terms: Left gives (u <>) on the right factor space
/// `other`, Right gives (<> u) on the left factor space `other`.
LinTerm section(BilinKind b, Side side, const Vector& u, const Space& other);
/// Evaluates b(u, v) using only contraction, bra/ket and zip.
Vector apply2_by_contraction(BilinKind b, const Vector& u, const Vector& v);

class FunTerm;

struct FunSugar {
    enum class Kind { Add, Sub, Mul, Fanout };
    Kind kind;
};

namespace fun {

struct Const {
    Vector w;
};
struct Prim {
    PrimOp op;
};
struct Lin {
    LinTerm h;
};
struct Bilin {
    BilinKind op;
};
struct Comp;
struct Par;
struct Pow;

}  // namespace fun

/// Analytic function in combinatory form. Immutable; copies share structure.
class FunTerm {
public:
    enum class Kind { Const, Prim, Lin, Bilin, Comp, Par, Pow };
    struct Node;

    explicit FunTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    Kind kind() const noexcept;
    const std::optional<FunSugar>& sugar() const noexcept;
    FunTerm with_sugar(FunSugar tag) const;

    template <class T>
    const T& get() const;
    const Node* raw() const noexcept { return node_.get(); }

private:
    std::shared_ptr<const Node> node_;
};

namespace fun {

struct Comp {
    FunTerm g;
    FunTerm f;
};
struct Par {
    IndexSet index;
    std::vector<FunTerm> parts;
};
struct Pow {
    IndexSet index;
    FunTerm f;
};

}  // namespace fun

struct FunTerm::Node {
    std::variant<fun::Const, fun::Prim, fun::Lin, fun::Bilin, fun::Comp, fun::Par, fun::Pow> data;
    std::optional<FunSugar> sugar;
};

inline FunTerm::Kind FunTerm::kind() const noexcept { return static_cast<Kind>(node_->data.index()); }
inline const std::optional<FunSugar>& FunTerm::sugar() const noexcept { return node_->sugar; }
template <class T>
const T& FunTerm::get() const {
    return std::get<T>(node_->data);
}

FunTerm f_const(Vector w);
FunTerm f_prim(PrimOp op);
FunTerm f_lin(LinTerm h);
FunTerm f_bilin(BilinKind op);
/// g . f
FunTerm f_comp(FunTerm g, FunTerm f);
/// Outermost first: f_comp({h, g, f}) = h . g . f.
FunTerm f_comp(const std::vector<FunTerm>& chain);
FunTerm f_par(std::vector<FunTerm> parts, std::optional<IndexSet> index = std::nullopt);
FunTerm f_pow(IndexSet index, FunTerm f);

// Pointwise lifting: op . (f x g) . dup.
FunTerm fadd(FunTerm f, FunTerm g);
FunTerm fsub(FunTerm f, FunTerm g);
FunTerm fmul(FunTerm f, FunTerm g);
/// <f_1, ..., f_n> = (f_1 x ... x f_n) . rep_n
FunTerm ffanout(std::vector<FunTerm> parts);

Vector eval_fun(const FunTerm& t, const Vector& v);
/// Codomain of t on `domain`; TypeError when ill-typed.
Space fun_codomain(const FunTerm& t, const Space& domain);

std::size_t term_size(const FunTerm& t);
bool structurally_equal(const FunTerm& a, const FunTerm& b);

}  // namespace fretchet
