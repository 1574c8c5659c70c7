#include "fretchet/oracle.hpp"

#include <cmath>
#include <limits>

#include "fretchet/errors.hpp"
#include "fretchet/random.hpp"

namespace fretchet {

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) t(c, r) = m(r, c);
    return t;
}

std::vector<double> mat_vec(const Matrix& m, std::span<const double> x, CostCounter* counter) {
    if (x.size() != m.cols)
        throw DimError("matrix with " + std::to_string(m.cols) + " columns applied to " + std::to_string(x.size()) +
                       " coordinates");
    std::vector<double> y(m.rows, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) {
            count(counter);
            y[r] += m(r, c) * x[c];
        }
    return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const double d = std::abs(a.entries[i] - b.entries[i]);
        if (std::isnan(d)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, d);
    }
    return worst;
}

bool approx_equal_abs(const Matrix& a, const Matrix& b, double tol) { return max_abs_diff(a, b) <= tol; }

bool approx_equal_rel(const Matrix& a, const Matrix& b, double rel) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (!(std::abs(a.entries[i] - b.entries[i]) <= rel * (1.0 + std::abs(b.entries[i])))) return false;
    return true;
}

Matrix lower_matrix(const LinTerm& f, std::optional<Space> domain) {
    const LinTerm e = domain ? elaborate(f, *domain) : f;
    const TypeSig sig = infer_types(e);
    Matrix m(sig.codomain.dim(), sig.domain.dim());
    for (std::size_t j = 0; j < m.cols; ++j) {
        const auto col = to_coords(apply(e, basis(sig.domain, j)));
        for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = col[i];
    }
    return m;
}

Matrix fd_jacobian(const FunTerm& t, const Vector& v, double h) {
    const auto x = to_coords(v);
    const std::size_t rows = eval_fun(t, v).space().dim();
    Matrix m(rows, x.size());
    std::vector<double> xp = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        xp[j] = x[j] + h;
        const auto fp = to_coords(eval_fun(t, from_coords(v.space(), xp)));
        xp[j] = x[j] - h;
        const auto fm = to_coords(eval_fun(t, from_coords(v.space(), xp)));
        xp[j] = x[j];
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return m;
}

std::string to_string(const Matrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows; ++r) {
        if (r) out += ", ";
        out += "[";
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (c) out += ", ";
            out += format_real(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

FunTerm Griewank::term() const {
    // mul . < sin . dot . <const a, id>, const b >
    FunTerm ax = f_comp(f_bilin(BilinKind::Inner), ffanout({f_const(a), f_lin(id_map())}));
    return f_comp(f_bilin(BilinKind::ScalarMul), ffanout({f_comp(f_prim(prim_sin()), ax), f_const(b)}));
}

LinTerm Griewank::decomposed_derivative() const {
    const double c = std::cos(inner(a, x0));
    const Space r = Space::scalar();
    const Vector payload = Vector::tensor(b.space(), a.space(), {TensorTerm{c, b, a}});
    return comp({unitary(UnitaryKind::IKet, Space::tensor(b.space(), r)), contract_l(payload, r),
                 unitary(UnitaryKind::Ket, a.space())});
}

Griewank make_griewank(std::size_t m, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return {random_vector(Space::real(n), rng), random_vector(Space::real(m), rng),
            random_vector(Space::real(n), rng), random_vector(Space::real(n), rng)};
}

GriewankCounts count_griewank(const Griewank& g) {
    GriewankCounts out;
    const Space r = Space::scalar();

    // Build: s = a . x0 is counted, c = cos s is a primitive evaluation, and
    // c (b (x) a) is one formal term, so no further products are formed.
    CostCounter build;
    const double s = inner(g.a, g.x0, &build);
    const double c = std::cos(s);
    const Vector payload = Vector::tensor(g.b.space(), g.a.space(), {TensorTerm{c, g.b, g.a}});
    out.build = build.scalar_mults;

    // Decomposed apply: ((c (b (x) a)) *) on dx (x) 1 gives (c (a . dx)) (b (x) 1).
    CostCounter decomposed;
    const Vector dx_ket = apply(unitary(UnitaryKind::Ket), g.dx);
    apply(contract_l(payload, r), dx_ket, &decomposed);
    out.decomposed_apply = decomposed.scalar_mults;

    // Dense apply of the materialised m x n Jacobian.
    const LinTerm d = g.decomposed_derivative();
    const Matrix j = lower_matrix(d);
    CostCounter dense;
    const auto dxc = to_coords(g.dx);
    mat_vec(j, dxc, &dense);
    out.dense_apply = dense.scalar_mults;

    out.term_size = term_size(d);
    return out;
}

}  // namespace fretchet
