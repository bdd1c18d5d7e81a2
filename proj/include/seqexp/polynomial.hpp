#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "seqexp/error.hpp"

namespace seqexp {

using cplx = std::complex<double>;

/// Complex polynomial with coefficients in ascending degree.
struct ComplexPolynomial {
    std::vector<cplx> c;

    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<cplx> coeffs) : c(std::move(coeffs)) {}

    int degree() const { return static_cast<int>(c.size()) - 1; }

    double maxnorm() const {
        double m = 0.0;
        for (const cplx& a : c) m = std::max(m, std::abs(a));
        return m;
    }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Drops leading coefficients below rel * maxnorm.
    ComplexPolynomial trimmed(double rel = 1e-14) const {
        ComplexPolynomial p = *this;
        const double cut = rel * maxnorm();
        while (p.c.size() > 1 && std::abs(p.c.back()) <= cut) p.c.pop_back();
        return p;
    }

    ComplexPolynomial derivative() const {
        if (c.size() <= 1) return ComplexPolynomial({0.0});
        std::vector<cplx> d(c.size() - 1);
        for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
        return ComplexPolynomial(d);
    }

    /// f*(z) = sum conj(a_{n-j}) z^j.
    ComplexPolynomial reciprocal() const {
        std::vector<cplx> r(c.size());
        const std::size_t n = c.size() - 1;
        for (std::size_t j = 0; j <= n; ++j) r[j] = std::conj(c[n - j]);
        return ComplexPolynomial(r);
    }

    static ComplexPolynomial from_roots(const std::vector<cplx>& roots) {
        std::vector<cplx> p{1.0};
        for (const cplx& r : roots) {
            std::vector<cplx> q(p.size() + 1, 0.0);
            for (std::size_t j = 0; j < p.size(); ++j) {
                q[j + 1] += p[j];
                q[j] -= r * p[j];
            }
            p = std::move(q);
        }
        return ComplexPolynomial(p);
    }
};

/// Roots as the eigenvalues of the companion matrix.
inline std::vector<cplx> roots(const ComplexPolynomial& f0) {
    const ComplexPolynomial f = f0.trimmed();
    const int n = f.degree();
    if (n < 1) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -f.c[i] / f.c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<cplx> r(n);
    for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
    return r;
}

namespace detail {

inline bool schur_recursive(ComplexPolynomial f, double tol) {
    f = f.trimmed();
    const double norm = f.maxnorm();
    for (cplx& a : f.c) a /= norm;
    const int n = f.degree();
    if (n == 0) return true;  // non-zero constant: no zeros at all

    const cplx a0 = f.c[0];
    const cplx s0 = std::conj(f.c[n]);  // f*(0)
    const ComplexPolynomial fs = f.reciprocal();
    std::vector<cplx> g(n);
    for (int j = 1; j <= n; ++j) g[j - 1] = s0 * f.c[j] - a0 * fs.c[j];
    ComplexPolynomial f1(g);

    if (f1.maxnorm() < tol) return schur_recursive(f.derivative(), tol);
    if (std::abs(s0) - std::abs(a0) > tol) return schur_recursive(f1, tol);
    return false;
}

}  // namespace detail

/// Miller's recursive criterion: true iff every zero of f lies in the closed
/// unit disc. Coefficients are normalized at each level, so tol is relative.
inline bool schur_unit_disc(const ComplexPolynomial& f, double tol = 1e-10) {
    const ComplexPolynomial t = f.trimmed();
    if (t.degree() < 1) throw Error("schur_unit_disc needs a non-constant polynomial");
    return detail::schur_recursive(t, tol);
}

/// Characteristic polynomial det(z I - A), ascending coefficients, by the
/// Faddeev-LeVerrier recursion.
inline ComplexPolynomial characteristic_polynomial(const Eigen::MatrixXcd& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<cplx> c(n + 1);
    c[n] = 1.0;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        M = A * M + c[n - k + 1] * I;
        c[n - k] = -(A * M).trace() / static_cast<double>(k);
    }
    return ComplexPolynomial(c);
}

}  // namespace seqexp
