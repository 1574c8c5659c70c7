#pragma once

#include "fretchet/funterm.hpp"

namespace fretchet {

/// f(v) together with the derivative f'(v) as a linear term.
struct AffineResult {
    Vector value;
    LinTerm deriv;
};

/// f(v) together with adj f'(v).
struct AdjointAffineResult {
    Vector value;
    LinTerm adj_deriv;
};

/// Forward pass: value and symbolic derivative in one traversal.
AffineResult affine(const FunTerm& t, const Vector& v);
/// Reverse pass: value and symbolic adjoint derivative in one traversal.
AdjointAffineResult affine_adj(const FunTerm& t, const Vector& v);

Vector jvp(const FunTerm& t, const Vector& v, const Vector& dv);
Vector vjp(const FunTerm& t, const Vector& v, const Vector& dy);
/// adj f'(v) (1); TypeError unless t maps into R.
Vector gradient(const FunTerm& t, const Vector& v);

}  // namespace fretchet
