#include "fretchet/funterm.hpp"

#include <cmath>

#include "fretchet/errors.hpp"

namespace fretchet {

// ---------------------------------------------------------------- primitives

double PrimOp::value(double x) const {
    switch (kind) {
    case Kind::Sin: return std::sin(x);
    case Kind::Cos: return std::cos(x);
    case Kind::Exp: return std::exp(x);
    case Kind::Ln:
        if (!(x > 0.0)) throw DomainError("ln is undefined at " + format_real(x));
        return std::log(x);
    case Kind::Tanh: return std::tanh(x);
    case Kind::Pow:
        if (k < 0 && x == 0.0) throw DomainError("pow " + std::to_string(k) + " is undefined at 0");
        return std::pow(x, k);
    }
    return 0.0;
}

double PrimOp::derivative(double x) const {
    switch (kind) {
    case Kind::Sin: return std::cos(x);
    case Kind::Cos: return -std::sin(x);
    case Kind::Exp: return std::exp(x);
    case Kind::Ln:
        if (!(x > 0.0)) throw DomainError("ln is undefined at " + format_real(x));
        return 1.0 / x;
    case Kind::Tanh: {
        const double t = std::tanh(x);
        return 1.0 - t * t;
    }
    case Kind::Pow:
        if (k < 0 && x == 0.0) throw DomainError("pow " + std::to_string(k) + " is undefined at 0");
        return k * std::pow(x, k - 1);
    }
    return 0.0;
}

LinTerm PrimOp::deriv_at(double x) const { return scale_map(derivative(x), Space::scalar()); }

std::string PrimOp::name() const {
    switch (kind) {
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Exp: return "exp";
    case Kind::Ln: return "ln";
    case Kind::Tanh: return "tanh";
    case Kind::Pow: return "pow " + std::to_string(k);
    }
    return "?";
}

PrimOp prim_sin() { return {PrimOp::Kind::Sin}; }
PrimOp prim_cos() { return {PrimOp::Kind::Cos}; }
PrimOp prim_exp() { return {PrimOp::Kind::Exp}; }
PrimOp prim_ln() { return {PrimOp::Kind::Ln}; }
PrimOp prim_tanh() { return {PrimOp::Kind::Tanh}; }
PrimOp prim_pow(int k) {
    if (k == 0) throw TypeError("pow needs a non-zero exponent");
    return {PrimOp::Kind::Pow, k};
}

// ---------------------------------------------------------------- bilinear maps

namespace {

const Space R = Space::scalar();

bool real_leaves(const Space& s) {
    if (s.kind() == Space::Kind::Scalar) return true;
    if (!s.is_family()) return false;
    for (std::size_t i = 0; i < s.family_size(); ++i)
        if (!real_leaves(s.component(i))) return false;
    return true;
}

Vector hadamard(const Vector& u, const Vector& v, CostCounter* counter) {
    if (u.space().kind() == Space::Kind::Scalar) {
        count(counter);
        return Vector::scalar(u.value() * v.value());
    }
    if (u.kind() == Vector::Kind::Zero) return u;
    if (v.kind() == Vector::Kind::Zero) return v;
    const auto a = family_items(u);
    const auto b = family_items(v);
    std::vector<Vector> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(hadamard(a[i], b[i], counter));
    return Vector::family(u.space(), std::move(out));
}

LinTerm hadamard_section(const Vector& u) {
    if (u.space().kind() == Space::Kind::Scalar) return scale_map(u.value(), R);
    const auto items = family_items(u);
    std::vector<LinTerm> parts;
    for (const auto& it : items) parts.push_back(hadamard_section(it));
    return par_map(std::move(parts), u.space().family_index());
}

}  // namespace

const char* bilin_name(BilinKind b) {
    switch (b) {
    case BilinKind::Contract: return "contract";
    case BilinKind::TensorProd: return "tensor";
    case BilinKind::Inner: return "dot";
    case BilinKind::ScalarMul: return "mul";
    case BilinKind::MatVec: return "matvec";
    case BilinKind::Hadamard: return "hadamard";
    }
    return "?";
}

Space bilin_codomain(BilinKind b, const Space& a, const Space& c) {
    auto bad = [&](const char* expected) -> Space {
        throw TypeError(std::string(bilin_name(b)) + " expects " + expected + ", got (" + to_string(a) + ", " +
                        to_string(c) + ")");
    };
    switch (b) {
    case BilinKind::Contract:
        if (a.kind() != Space::Kind::Tensor || c.kind() != Space::Kind::Tensor || !(a.right() == c.left()))
            return bad("(W (x) V, V (x) U)");
        return Space::tensor(a.left(), c.right());
    case BilinKind::TensorProd:
        return Space::tensor(a, c);
    case BilinKind::Inner:
        if (!(a == c)) return bad("two vectors of one space");
        return R;
    case BilinKind::ScalarMul:
        if (a.kind() != Space::Kind::Scalar) return bad("(R, V)");
        return c;
    case BilinKind::MatVec:
        if (a.kind() != Space::Kind::Tensor || !(a.right() == c)) return bad("(Vout (x) Vin, Vin)");
        return a.left();
    case BilinKind::Hadamard:
        if (!(a == c) || !real_leaves(a)) return bad("two vectors of one space of reals");
        return a;
    }
    return a;
}

Vector apply2(BilinKind b, const Vector& u, const Vector& v, CostCounter* counter) {
    bilin_codomain(b, u.space(), v.space());
    switch (b) {
    case BilinKind::Contract:
        return contract(u, v, counter);
    case BilinKind::TensorProd:
        return Vector::pure(u, v);
    case BilinKind::Inner:
        return Vector::scalar(inner(u, v, counter));
    case BilinKind::ScalarMul:
        return vec_scale(u.value(), v, counter);
    case BilinKind::MatVec: {
        Vector acc = Vector::zero(u.space().left());
        if (u.kind() == Vector::Kind::Zero) return acc;
        for (const auto& t : u.terms()) {
            const double s = coeff_mul(t.coeff, inner(t.right, v, counter), counter);
            acc = vec_add(acc, vec_scale(s, t.left, counter));
        }
        return acc;
    }
    case BilinKind::Hadamard:
        return hadamard(u, v, counter);
    }
    return u;
}

LinTerm section(BilinKind b, Side side, const Vector& u, const Space& other) {
    const bool left = side == Side::Left;
    const Space& a = left ? u.space() : other;
    const Space& c = left ? other : u.space();
    bilin_codomain(b, a, c);
    const Vector one = Vector::scalar(1.0);
    switch (b) {
    case BilinKind::ScalarMul:
        if (left) return scale_map(u.value(), c);
        // (. v) : R -> V  =  iket . ((v (x) 1) *) . ket
        return comp({unitary(UnitaryKind::IKet, Space::tensor(c, R)), contract_l(Vector::pure(u, one), R),
                     unitary(UnitaryKind::Ket, R)});
    case BilinKind::Inner:
        // (u .) = ibra . ((1 (x) u) *) . ket, and symmetrically.
        return comp({unitary(UnitaryKind::IBra, Space::tensor(R, R)), contract_l(Vector::pure(one, u), R),
                     unitary(UnitaryKind::Ket, other)});
    case BilinKind::TensorProd:
        if (left) return comp(contract_l(Vector::pure(u, one), c), unitary(UnitaryKind::Bra, c));
        return comp(contract_r(Vector::pure(one, u), a), unitary(UnitaryKind::Ket, a));
    case BilinKind::Contract:
        if (left) return contract_l(u, c.right());
        return contract_r(u, a.left());
    case BilinKind::MatVec:
        if (left)
            return comp({unitary(UnitaryKind::IKet, Space::tensor(a.left(), R)), contract_l(u, R),
                         unitary(UnitaryKind::Ket, c)});
        return comp(unitary(UnitaryKind::IKet, Space::tensor(a.left(), R)),
                    contract_r(Vector::pure(u, one), a.left()));
    case BilinKind::Hadamard:
        return hadamard_section(u);
    }
    throw TypeError("unknown bilinear operation");
}

Vector apply2_by_contraction(BilinKind b, const Vector& u, const Vector& v) {
    bilin_codomain(b, u.space(), v.space());
    const Vector one = Vector::scalar(1.0);
    auto bra = [&](const Vector& x) { return apply(unitary(UnitaryKind::Bra), x); };
    auto ket = [&](const Vector& x) { return apply(unitary(UnitaryKind::Ket), x); };
    auto ibra = [&](const Vector& x) { return apply(unitary(UnitaryKind::IBra), x); };
    auto iket = [&](const Vector& x) { return apply(unitary(UnitaryKind::IKet), x); };
    switch (b) {
    case BilinKind::Contract:
        return contract(u, v);
    case BilinKind::TensorProd:
        return contract(ket(u), bra(v));
    case BilinKind::Inner:
        return ibra(contract(bra(u), ket(v)));
    case BilinKind::ScalarMul:
        return iket(contract(ket(v), ket(u)));
    case BilinKind::MatVec:
        return iket(contract(u, ket(v)));
    case BilinKind::Hadamard: {
        if (u.space().kind() == Space::Kind::Scalar) return apply2_by_contraction(BilinKind::ScalarMul, u, v);
        const Vector zipped = apply(unitary(UnitaryKind::Zip), Vector::tuple({u, v}));
        std::vector<Vector> out;
        for (const auto& pair : family_items(zipped))
            out.push_back(apply2_by_contraction(BilinKind::Hadamard, pair.item(0), pair.item(1)));
        return Vector::family(u.space(), std::move(out));
    }
    }
    return u;
}

// ---------------------------------------------------------------- terms

namespace {

template <class T>
FunTerm make(T data) {
    return FunTerm(std::shared_ptr<const FunTerm::Node>(new FunTerm::Node{std::move(data), std::nullopt}));
}

}  // namespace

FunTerm FunTerm::with_sugar(FunSugar tag) const {
    auto node = std::make_shared<Node>(*node_);
    node->sugar = tag;
    return FunTerm(std::move(node));
}

FunTerm f_const(Vector w) { return make(fun::Const{std::move(w)}); }
FunTerm f_prim(PrimOp op) { return make(fun::Prim{op}); }
FunTerm f_lin(LinTerm h) { return make(fun::Lin{std::move(h)}); }
FunTerm f_bilin(BilinKind op) { return make(fun::Bilin{op}); }
FunTerm f_comp(FunTerm g, FunTerm f) { return make(fun::Comp{std::move(g), std::move(f)}); }

FunTerm f_comp(const std::vector<FunTerm>& chain) {
    if (chain.empty()) return f_lin(id_map());
    FunTerm out = chain.back();
    for (std::size_t i = chain.size() - 1; i-- > 0;) out = f_comp(chain[i], out);
    return out;
}

FunTerm f_par(std::vector<FunTerm> parts, std::optional<IndexSet> index) {
    IndexSet x = index ? *index : IndexSet::seg(parts.size());
    if (x.card() != parts.size())
        throw TypeError("par over " + to_string(x) + " needs " + std::to_string(x.card()) + " parts");
    return make(fun::Par{std::move(x), std::move(parts)});
}

FunTerm f_pow(IndexSet index, FunTerm f) { return make(fun::Pow{std::move(index), std::move(f)}); }

FunTerm fadd(FunTerm f, FunTerm g) {
    return f_comp({f_lin(plus()), f_par({std::move(f), std::move(g)}), f_lin(dup())})
        .with_sugar({FunSugar::Kind::Add});
}

FunTerm fsub(FunTerm f, FunTerm g) {
    LinTerm minus = comp(plus(), par_map({id_map(), scale_map(-1.0)}));
    return f_comp({f_lin(minus), f_par({std::move(f), std::move(g)}), f_lin(dup())})
        .with_sugar({FunSugar::Kind::Sub});
}

FunTerm fmul(FunTerm f, FunTerm g) {
    return f_comp({f_bilin(BilinKind::ScalarMul), f_par({std::move(f), std::move(g)}), f_lin(dup())})
        .with_sugar({FunSugar::Kind::Mul});
}

FunTerm ffanout(std::vector<FunTerm> parts) {
    const std::size_t n = parts.size();
    return f_comp(f_par(std::move(parts)), f_lin(rep(IndexSet::seg(n)))).with_sugar({FunSugar::Kind::Fanout});
}

namespace {

void require_family(const Space& s, const IndexSet& x, const char* what) {
    if (!s.is_family() || !(s.family_index() == x))
        throw ShapeError(std::string(what) + " over " + to_string(x) + " applied to " + to_string(s));
}

}  // namespace

Vector eval_fun(const FunTerm& t, const Vector& v) {
    switch (t.kind()) {
    case FunTerm::Kind::Const:
        return t.get<fun::Const>().w;
    case FunTerm::Kind::Prim:
        if (v.space().kind() != Space::Kind::Scalar)
            throw ShapeError(t.get<fun::Prim>().op.name() + " applied to " + to_string(v.space()));
        return Vector::scalar(t.get<fun::Prim>().op.value(v.value()));
    case FunTerm::Kind::Lin:
        return apply(t.get<fun::Lin>().h, v);
    case FunTerm::Kind::Bilin:
        if (!v.space().is_family() || v.space().family_size() != 2)
            throw ShapeError(std::string(bilin_name(t.get<fun::Bilin>().op)) + " applied to " + to_string(v.space()));
        return apply2(t.get<fun::Bilin>().op, v.item(0), v.item(1));
    case FunTerm::Kind::Comp: {
        const auto& s = t.get<fun::Comp>();
        return eval_fun(s.g, eval_fun(s.f, v));
    }
    case FunTerm::Kind::Par: {
        const auto& s = t.get<fun::Par>();
        require_family(v.space(), s.index, "par");
        auto items = family_items(v);
        std::vector<Space> spaces;
        for (std::size_t i = 0; i < items.size(); ++i) {
            items[i] = eval_fun(s.parts[i], items[i]);
            spaces.push_back(items[i].space());
        }
        return Vector::family(family_like(v.space(), s.index, std::move(spaces)), std::move(items));
    }
    case FunTerm::Kind::Pow: {
        const auto& s = t.get<fun::Pow>();
        require_family(v.space(), s.index, "pow");
        auto items = family_items(v);
        std::vector<Space> spaces;
        for (auto& it : items) {
            it = eval_fun(s.f, it);
            spaces.push_back(it.space());
        }
        return Vector::family(family_like(v.space(), s.index, std::move(spaces)), std::move(items));
    }
    }
    return v;
}

Space fun_codomain(const FunTerm& t, const Space& d) {
    switch (t.kind()) {
    case FunTerm::Kind::Const:
        return t.get<fun::Const>().w.space();
    case FunTerm::Kind::Prim:
        if (d.kind() != Space::Kind::Scalar)
            throw TypeError(t.get<fun::Prim>().op.name() + " expects R, got " + to_string(d));
        return d;
    case FunTerm::Kind::Lin:
        return infer_types(elaborate(t.get<fun::Lin>().h, d)).codomain;
    case FunTerm::Kind::Bilin:
        if (!d.is_family() || d.family_size() != 2)
            throw TypeError(std::string(bilin_name(t.get<fun::Bilin>().op)) + " expects a pair, got " + to_string(d));
        return bilin_codomain(t.get<fun::Bilin>().op, d.component(0), d.component(1));
    case FunTerm::Kind::Comp: {
        const auto& s = t.get<fun::Comp>();
        return fun_codomain(s.g, fun_codomain(s.f, d));
    }
    case FunTerm::Kind::Par: {
        const auto& s = t.get<fun::Par>();
        if (!d.is_family() || !(d.family_index() == s.index))
            throw TypeError("par over " + to_string(s.index) + " applied to " + to_string(d));
        std::vector<Space> cs;
        for (std::size_t i = 0; i < s.parts.size(); ++i) cs.push_back(fun_codomain(s.parts[i], d.component(i)));
        try {
            return family_like(d, s.index, std::move(cs));
        } catch (const ShapeError& e) {
            throw TypeError(e.what());
        }
    }
    case FunTerm::Kind::Pow: {
        const auto& s = t.get<fun::Pow>();
        if (!d.is_family() || !(d.family_index() == s.index))
            throw TypeError("pow over " + to_string(s.index) + " applied to " + to_string(d));
        std::vector<Space> cs;
        for (std::size_t i = 0; i < d.family_size(); ++i) cs.push_back(fun_codomain(s.f, d.component(i)));
        try {
            return family_like(d, s.index, std::move(cs));
        } catch (const ShapeError& e) {
            throw TypeError(e.what());
        }
    }
    }
    return d;
}

std::size_t term_size(const FunTerm& t) {
    switch (t.kind()) {
    case FunTerm::Kind::Const:
        return 2;
    case FunTerm::Kind::Lin:
        return 1 + term_size(t.get<fun::Lin>().h);
    case FunTerm::Kind::Comp: {
        const auto& s = t.get<fun::Comp>();
        return 1 + term_size(s.g) + term_size(s.f);
    }
    case FunTerm::Kind::Par: {
        std::size_t n = 1;
        for (const auto& p : t.get<fun::Par>().parts) n += term_size(p);
        return n;
    }
    case FunTerm::Kind::Pow:
        return 1 + term_size(t.get<fun::Pow>().f);
    default:
        return 1;
    }
}

bool structurally_equal(const FunTerm& a, const FunTerm& b) {
    if (a.raw() == b.raw()) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case FunTerm::Kind::Const:
        return structurally_equal(a.get<fun::Const>().w, b.get<fun::Const>().w);
    case FunTerm::Kind::Prim:
        return a.get<fun::Prim>().op == b.get<fun::Prim>().op;
    case FunTerm::Kind::Lin:
        return structurally_equal(a.get<fun::Lin>().h, b.get<fun::Lin>().h);
    case FunTerm::Kind::Bilin:
        return a.get<fun::Bilin>().op == b.get<fun::Bilin>().op;
    case FunTerm::Kind::Comp: {
        const auto& x = a.get<fun::Comp>();
        const auto& y = b.get<fun::Comp>();
        return structurally_equal(x.g, y.g) && structurally_equal(x.f, y.f);
    }
    case FunTerm::Kind::Par: {
        const auto& x = a.get<fun::Par>();
        const auto& y = b.get<fun::Par>();
        if (!(x.index == y.index) || x.parts.size() != y.parts.size()) return false;
        for (std::size_t i = 0; i < x.parts.size(); ++i)
            if (!structurally_equal(x.parts[i], y.parts[i])) return false;
        return true;
    }
    case FunTerm::Kind::Pow: {
        const auto& x = a.get<fun::Pow>();
        const auto& y = b.get<fun::Pow>();
        return x.index == y.index && structurally_equal(x.f, y.f);
    }
    }
    return false;
}

}  // namespace fretchet
