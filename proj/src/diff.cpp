#include "fretchet/diff.hpp"

#include "fretchet/adjoint.hpp"
#include "fretchet/errors.hpp"

namespace fretchet {

namespace {

void require_family(const Space& s, const IndexSet& x, const char* what) {
    if (!s.is_family() || !(s.family_index() == x))
        throw ShapeError(std::string(what) + " over " + to_string(x) + " applied to " + to_string(s));
}

Vector rebuild(const Vector& like, const IndexSet& x, std::vector<Vector> items) {
    std::vector<Space> spaces;
    for (const auto& it : items) spaces.push_back(it.space());
    return Vector::family(family_like(like.space(), x, std::move(spaces)), std::move(items));
}

void require_pair(const Vector& v, BilinKind b) {
    if (!v.space().is_family() || v.space().family_size() != 2)
        throw ShapeError(std::string(bilin_name(b)) + " applied to " + to_string(v.space()));
}

}  // namespace

AffineResult affine(const FunTerm& t, const Vector& v) {
    switch (t.kind()) {
    case FunTerm::Kind::Const: {
        const Vector& w = t.get<fun::Const>().w;
        return {w, zero_map(v.space(), w.space())};
    }
    case FunTerm::Kind::Prim: {
        const PrimOp& p = t.get<fun::Prim>().op;
        if (v.space().kind() != Space::Kind::Scalar)
            throw ShapeError(p.name() + " applied to " + to_string(v.space()));
        const double x = v.value();
        return {Vector::scalar(p.value(x)), p.deriv_at(x)};
    }
    case FunTerm::Kind::Lin: {
        LinTerm h = elaborate(t.get<fun::Lin>().h, v.space());
        return {apply(h, v), h};
    }
    case FunTerm::Kind::Bilin: {
        // (u <>) . proj_2 + (<> w) . proj_1, sharing the payloads u and w.
        const BilinKind b = t.get<fun::Bilin>().op;
        require_pair(v, b);
        const Vector u = v.item(0);
        const Vector w = v.item(1);
        const Space& d = v.space();
        LinTerm deriv = plus_map(comp(section(b, Side::Left, u, w.space()), proj(2, d)),
                                 comp(section(b, Side::Right, w, u.space()), proj(1, d)));
        return {apply2(b, u, w), deriv};
    }
    case FunTerm::Kind::Comp: {
        const auto& s = t.get<fun::Comp>();
        AffineResult a = affine(s.f, v);
        AffineResult b = affine(s.g, a.value);
        return {b.value, comp(b.deriv, a.deriv)};
    }
    case FunTerm::Kind::Par:
    case FunTerm::Kind::Pow: {
        const bool par = t.kind() == FunTerm::Kind::Par;
        const IndexSet& x = par ? t.get<fun::Par>().index : t.get<fun::Pow>().index;
        require_family(v.space(), x, par ? "par" : "pow");
        const auto items = family_items(v);
        std::vector<Vector> values;
        std::vector<LinTerm> derivs;
        for (std::size_t i = 0; i < items.size(); ++i) {
            AffineResult r = affine(par ? t.get<fun::Par>().parts[i] : t.get<fun::Pow>().f, items[i]);
            values.push_back(r.value);
            derivs.push_back(r.deriv);
        }
        return {rebuild(v, x, std::move(values)), par_map(std::move(derivs), x)};
    }
    }
    throw TypeError("unknown function term");
}

AdjointAffineResult affine_adj(const FunTerm& t, const Vector& v) {
    switch (t.kind()) {
    case FunTerm::Kind::Const: {
        const Vector& w = t.get<fun::Const>().w;
        return {w, zero_map(w.space(), v.space())};
    }
    case FunTerm::Kind::Prim: {
        const PrimOp& p = t.get<fun::Prim>().op;
        if (v.space().kind() != Space::Kind::Scalar)
            throw ShapeError(p.name() + " applied to " + to_string(v.space()));
        const double x = v.value();
        return {Vector::scalar(p.value(x)), p.deriv_at(x)};
    }
    case FunTerm::Kind::Lin: {
        LinTerm h = elaborate(t.get<fun::Lin>().h, v.space());
        return {apply(h, v), adjoint(h)};
    }
    case FunTerm::Kind::Bilin: {
        // inj_2 . adj(u <>) + inj_1 . adj(<> w)
        const BilinKind b = t.get<fun::Bilin>().op;
        require_pair(v, b);
        const Vector u = v.item(0);
        const Vector w = v.item(1);
        const Space& d = v.space();
        LinTerm adj = plus_map(comp(inj(2, d), adjoint(section(b, Side::Left, u, w.space()))),
                               comp(inj(1, d), adjoint(section(b, Side::Right, w, u.space()))));
        return {apply2(b, u, w), adj};
    }
    case FunTerm::Kind::Comp: {
        const auto& s = t.get<fun::Comp>();
        AdjointAffineResult a = affine_adj(s.f, v);
        AdjointAffineResult b = affine_adj(s.g, a.value);
        return {b.value, comp(a.adj_deriv, b.adj_deriv)};
    }
    case FunTerm::Kind::Par:
    case FunTerm::Kind::Pow: {
        const bool par = t.kind() == FunTerm::Kind::Par;
        const IndexSet& x = par ? t.get<fun::Par>().index : t.get<fun::Pow>().index;
        require_family(v.space(), x, par ? "par" : "pow");
        const auto items = family_items(v);
        std::vector<Vector> values;
        std::vector<LinTerm> adjs;
        for (std::size_t i = 0; i < items.size(); ++i) {
            AdjointAffineResult r = affine_adj(par ? t.get<fun::Par>().parts[i] : t.get<fun::Pow>().f, items[i]);
            values.push_back(r.value);
            adjs.push_back(r.adj_deriv);
        }
        return {rebuild(v, x, std::move(values)), par_map(std::move(adjs), x)};
    }
    }
    throw TypeError("unknown function term");
}

Vector jvp(const FunTerm& t, const Vector& v, const Vector& dv) {
    if (!(dv.space() == v.space()))
        throw ShapeError("tangent " + to_string(dv.space()) + " does not match point " + to_string(v.space()));
    return apply(affine(t, v).deriv, dv);
}

Vector vjp(const FunTerm& t, const Vector& v, const Vector& dy) {
    AdjointAffineResult r = affine_adj(t, v);
    if (!(dy.space() == r.value.space()))
        throw ShapeError("cotangent " + to_string(dy.space()) + " does not match value " +
                         to_string(r.value.space()));
    return apply(r.adj_deriv, dy);
}

Vector gradient(const FunTerm& t, const Vector& v) {
    AdjointAffineResult r = affine_adj(t, v);
    if (r.value.space().kind() != Space::Kind::Scalar)
        throw TypeError("gradient needs a scalar-valued function, got codomain " + to_string(r.value.space()));
    return apply(r.adj_deriv, Vector::scalar(1.0));
}

}  // namespace fretchet
