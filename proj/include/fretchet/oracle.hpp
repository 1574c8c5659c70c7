#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fretchet/cost.hpp"
#include "fretchet/funterm.hpp"
#include "fretchet/linterm.hpp"

namespace fretchet {

/// Dense row-major matrix, used only for verification.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

Matrix transpose(const Matrix& m);
/// Dense product; costs rows * cols multiplications.
std::vector<double> mat_vec(const Matrix& m, std::span<const double> x, CostCounter* counter = nullptr);

/// Largest |a - b| entry, or infinity when the shapes differ.
double max_abs_diff(const Matrix& a, const Matrix& b);
/// Every entry satisfies |a - b| <= tol.
bool approx_equal_abs(const Matrix& a, const Matrix& b, double tol);
/// Every entry satisfies |a - b| <= rel * (1 + |b|).
bool approx_equal_rel(const Matrix& a, const Matrix& b, double rel);

/// Column j is apply(f, basis_j) in coordinates.
Matrix lower_matrix(const LinTerm& f, std::optional<Space> domain = std::nullopt);
/// Central differences of eval_fun in coordinates.
Matrix fd_jacobian(const FunTerm& t, const Vector& v, double h = 1e-4);

std::string to_string(const Matrix& m);

/// f(x) = b * sin(a . x) with a in R^n, b in R^m.
struct Griewank {
    Vector a;
    Vector b;
    Vector x0;
    Vector dx;

    FunTerm term() const;
    /// The derivative at x0 as iket . ((c (b (x) a)) *) . ket, c = cos(a . x0),
    /// built without counting (see count_griewank for the counted build).
    LinTerm decomposed_derivative() const;
};

Griewank make_griewank(std::size_t m, std::size_t n, std::uint64_t seed = 7);

struct GriewankCounts {
    std::uint64_t dense_apply = 0;       // dense m x n Jacobian times dx
    std::uint64_t decomposed_apply = 0;  // (c (b (x) a)) * applied to dx (x) 1
    std::uint64_t build = 0;             // forming c (b (x) a) at x0
    std::size_t term_size = 0;           // term_size(decomposed_derivative())
};

GriewankCounts count_griewank(const Griewank& g);

}  // namespace fretchet
