#pragma once

// Test-side reference computations on plain arrays. None of these go through
// the term language, so they can serve as oracles for it.

#include <cmath>
#include <functional>
#include <vector>

namespace ref {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Kronecker product, left index major.
inline Vec kron(const Vec& a, const Vec& b) {
    Vec out;
    for (double x : a)
        for (double y : b) out.push_back(x * y);
    return out;
}

inline Vec matvec(const Mat& m, const Vec& x) {
    Vec out;
    for (const auto& row : m) out.push_back(dot(row, x));
    return out;
}

inline Mat transpose(const Mat& m) {
    if (m.empty()) return {};
    Mat t(m[0].size(), Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

/// Five-point central-difference Jacobian, rows = outputs.
inline Mat jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h = 1e-3) {
    const std::size_t rows = f(x).size();
    Mat jac(rows, Vec(x.size()));
    for (std::size_t j = 0; j < x.size(); ++j) {
        auto at = [&](double d) {
            Vec y = x;
            y[j] += d;
            return f(y);
        };
        Vec p1 = at(h), m1 = at(-h), p2 = at(2 * h), m2 = at(-2 * h);
        for (std::size_t i = 0; i < rows; ++i) jac[i][j] = (8 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12 * h);
    }
    return jac;
}

/// Gradient of ln x1 + x1 x2 - sin x2 in closed form.
inline Vec b2_gradient(double x1, double x2) { return {1.0 / x1 + x2, x1 - std::cos(x2)}; }

inline double b2_value(double x1, double x2) { return std::log(x1) + x1 * x2 - std::sin(x2); }

}  // namespace ref
