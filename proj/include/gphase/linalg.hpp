#pragma once

#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "types.hpp"

namespace gphase {

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* who) {
    if (a.rows() != a.cols() || a.rows() == 0)
        fail_input("dimension_mismatch", std::string(who) + " needs a non-empty square matrix");
    if (!a.allFinite()) fail_input("non_finite", std::string(who) + " received non-finite entries");
}

inline std::string describe(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// Principal log and sqrt are undefined when an eigenvalue sits on (-inf, 0].
template <typename Derived>
void require_off_cut(const Eigen::MatrixBase<Derived>& a, const char* who) {
    ComplexMatrix c = a.template cast<Complex>();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(c, false);
    const ComplexVector& ev = es.eigenvalues();
    Real scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        Complex l = ev(i);
        if (l.real() <= 0 && std::abs(l.imag()) <= 1e-12 * scale)
            fail_domain("spectrum_on_cut", std::string(who) + ": eigenvalue " + describe(l) +
                                               " lies on the closed negative real axis");
    }
}

inline Real norm1(const RealMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace detail

template <typename Derived>
typename Derived::PlainObject mat_exp(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    detail::require_square(a, "mat_exp");
    Plain x = a;
    Plain r = x.exp();
    if (!r.allFinite()) fail_domain("overflow", "mat_exp result is not finite");
    return r;
}

template <typename Derived>
typename Derived::PlainObject mat_log_principal(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    detail::require_square(a, "mat_log_principal");
    detail::require_off_cut(a, "mat_log_principal");
    Plain x = a;
    Plain r = x.log();
    if (!r.allFinite()) fail_domain("overflow", "mat_log_principal result is not finite");
    return r;
}

template <typename Derived>
typename Derived::PlainObject mat_sqrt_principal(const Eigen::MatrixBase<Derived>& a) {
    using Plain = typename Derived::PlainObject;
    detail::require_square(a, "mat_sqrt_principal");
    detail::require_off_cut(a, "mat_sqrt_principal");
    Plain x = a;
    Plain r = x.sqrt();
    if (!r.allFinite()) fail_domain("overflow", "mat_sqrt_principal result is not finite");
    return r;
}

// phi_k(K) = sum_n K^n / (n+k)!, entire in K. phi_0 = exp, phi_1 = (e^K - I)/K.
// Small K uses the series, otherwise the top-right block of exp of the
// augmented matrix [[K, I, 0..], [0, 0, I..], ..].
inline RealMatrix phi_function(const RealMatrix& K, int k) {
    detail::require_square(K, "phi_function");
    if (k < 0) fail_input("invalid_argument", "phi_function order must be non-negative");
    const Eigen::Index n = K.rows();
    if (k == 0) return mat_exp(K);
    if (detail::norm1(K) < 1e-3) {
        RealMatrix term = RealMatrix::Identity(n, n);
        for (int j = 2; j <= k; ++j) term /= j;
        RealMatrix sum = term;
        for (int m = 1; m < 60; ++m) {
            term = term * K / Real(m + k);
            sum += term;
            if (detail::norm1(term) <= 1e-18 * detail::norm1(sum)) break;
        }
        return sum;
    }
    const Eigen::Index d = n * (k + 1);
    RealMatrix aug = RealMatrix::Zero(d, d);
    aug.topLeftCorner(n, n) = K;
    for (int j = 0; j < k; ++j) aug.block(j * n, (j + 1) * n, n, n).setIdentity();
    RealMatrix e = mat_exp(aug);
    return e.block(0, k * n, n, n);
}

inline RealMatrix phi1_entire(const RealMatrix& K) { return phi_function(K, 1); }

// ---- complex-structure adapted determinant and trace ----

inline void require_complex_structure(const RealMatrix& J) {
    detail::require_square(J, "complex structure");
    if (J.rows() % 2 != 0) fail_input("dimension_mismatch", "complex structure must have even dimension");
    const Eigen::Index n = J.rows();
    Real scale = 1.0 + J.squaredNorm();
    if ((J * J + RealMatrix::Identity(n, n)).lpNorm<Eigen::Infinity>() > 1e-8 * scale)
        fail_input("not_complex_structure", "J*J differs from -I");
}

inline void require_commutes(const RealMatrix& K, const RealMatrix& J) {
    if (K.rows() != J.rows() || K.cols() != J.cols())
        fail_input("dimension_mismatch", "matrix and complex structure differ in size");
    Real scale = std::max(1.0, K.norm() * J.norm());
    if ((K * J - J * K).norm() > 1e-8 * scale)
        fail_input("not_commuting", "matrix does not commute with the complex structure");
}

// Columns [e_1..e_N, -J e_1..-J e_N] with S^-1 J S in standard block form.
// Greedy over canonical directions; at the standard J this returns I.
inline RealMatrix j_standard_basis(const RealMatrix& J) {
    require_complex_structure(J);
    const Eigen::Index dim = J.rows(), n = dim / 2;
    RealMatrix E(dim, 0);
    for (Eigen::Index i = 0; i < dim && E.cols() < n; ++i) {
        RealMatrix trial(dim, E.cols() + 1);
        trial << E, RealMatrix::Identity(dim, dim).col(i);
        RealMatrix full(dim, 2 * trial.cols());
        full << trial, -J * trial;
        Eigen::FullPivLU<RealMatrix> lu(full);
        lu.setThreshold(1e-10);
        if (lu.rank() == full.cols()) E = trial;
    }
    if (E.cols() != n) fail_domain("basis_failure", "could not build a J-adapted basis");
    RealMatrix S(dim, dim);
    S << E, -J * E;
    return S;
}

// K1 + i K2 read off from S^-1 K S = [[K1, K2], [-K2, K1]].
inline ComplexMatrix complex_block_in_basis(const RealMatrix& K, const RealMatrix& S) {
    const Eigen::Index n = K.rows() / 2;
    RealMatrix k = S.partialPivLu().solve(K * S);
    return k.topLeftCorner(n, n).cast<Complex>() + Complex(0, 1) * k.topRightCorner(n, n).cast<Complex>();
}

inline ComplexMatrix complex_block(const RealMatrix& K, const RealMatrix& J) {
    require_complex_structure(J);
    require_commutes(K, J);
    return complex_block_in_basis(K, j_standard_basis(J));
}

inline Complex bar_det(const RealMatrix& K, const RealMatrix& J) { return complex_block(K, J).determinant(); }

inline Complex bar_trace(const RealMatrix& K, const RealMatrix& J) { return complex_block(K, J).trace(); }

// Principal bar-Tr log: sum of principal logs of the eigenvalues of K1 + i K2.
inline Complex bar_trace_log(const RealMatrix& K, const RealMatrix& J) {
    ComplexMatrix kb = complex_block(K, J);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(kb, false);
    const ComplexVector& ev = es.eigenvalues();
    Real scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    Complex sum = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        Complex l = ev(i);
        if (l.real() <= 0 && std::abs(l.imag()) <= 1e-12 * scale)
            fail_domain("spectrum_on_cut", "bar_trace_log: eigenvalue " + detail::describe(l) +
                                               " lies on the closed negative real axis");
        sum += std::log(l);
    }
    return sum;
}

}  // namespace gphase
