#include <gtest/gtest.h>

#include "support.hpp"

using namespace gphase;
using namespace gphase::testing;

TEST(MatExp, IdentityAndRotation) {
    EXPECT_LT(max_abs(mat_exp(RealMatrix(RealMatrix::Zero(2, 2))) - RealMatrix::Identity(2, 2)), 1e-15);
    RealMatrix r = mat_exp(RealMatrix(pi / 2 * mat2(0, 1, -1, 0)));
    EXPECT_LT(max_abs(r - mat2(0, 1, -1, 0)), 1e-14);
    RealMatrix d = mat_exp(RealMatrix(mat2(std::log(2.0), 0, 0, -std::log(2.0))));
    EXPECT_LT(max_abs(d - mat2(2, 0, 0, 0.5)), 1e-14);
}

TEST(MatExp, InverseRoundTrip) {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        RealMatrix a = gaussian_matrix(4, rng);
        a *= uniform(rng, 0.1, 10.0) / spectral_norm(a);
        RealMatrix e = mat_exp(a), ei = mat_exp(RealMatrix(-a));
        EXPECT_LT((e * ei - RealMatrix::Identity(4, 4)).norm(), 1e-14 * e.norm() * ei.norm());
    }
}

TEST(MatExp, OverflowIsReported) {
    RealMatrix a = 1e5 * RealMatrix::Identity(2, 2);
    try {
        mat_exp(a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.tag(), "overflow");
        EXPECT_EQ(e.code(), ErrorCode::numerical_domain);
    }
}

TEST(MatLog, Examples) {
    EXPECT_LT(max_abs(mat_log_principal(RealMatrix(RealMatrix::Identity(3, 3)))), 1e-15);
    RealMatrix l = mat_log_principal(RealMatrix(mat2(2, 0, 0, 0.5)));
    EXPECT_LT(max_abs(l - mat2(std::log(2.0), 0, 0, -std::log(2.0))), 1e-14);
    RealMatrix rot = mat_exp(RealMatrix(0.3 * mat2(0, 1, -1, 0)));
    RealMatrix lr = mat_log_principal(rot);
    EXPECT_LT(max_abs(lr - 0.3 * mat2(0, 1, -1, 0)), 1e-14);
    EXPECT_LT(max_abs(mat_exp(lr) - rot), 1e-14);
}

TEST(MatLog, CutNamesEigenvalue) {
    try {
        mat_log_principal(RealMatrix(mat2(-2, 0, 0, 1)));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.tag(), "spectrum_on_cut");
        EXPECT_NE(std::string(e.what()).find("-2"), std::string::npos);
    }
    EXPECT_THROW(mat_sqrt_principal(RealMatrix(mat2(0, 0, 0, 1))), Error);
}

TEST(MatLog, RoundTripsAwayFromCut) {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        RealMatrix a = gaussian_matrix(4, rng);
        a *= uniform(rng, 0.1, 3.0) / spectral_norm(a);
        RealMatrix e = mat_exp(a);
        EXPECT_LT(max_abs(mat_exp(mat_log_principal(e)) - e), 1e-10 * std::max(1.0, max_abs(e)));
        RealMatrix s = mat_sqrt_principal(e);
        EXPECT_LT(max_abs(s * s - e), 1e-10 * std::max(1.0, max_abs(e)));
    }
}

TEST(MatSqrt, Examples) {
    EXPECT_LT(max_abs(mat_sqrt_principal(RealMatrix(RealMatrix::Identity(2, 2))) - RealMatrix::Identity(2, 2)), 1e-15);
    EXPECT_LT(max_abs(mat_sqrt_principal(RealMatrix(mat2(4, 0, 0, 0.25))) - mat2(2, 0, 0, 0.5)), 1e-15);
    Rng rng(3);
    auto k = standard_kahler(2, Species::boson);
    for (int i = 0; i < 20; ++i) {
        RealMatrix M = random_symplectic(k, rng);
        RealMatrix mm = M * M.transpose();
        RealMatrix s = mat_sqrt_principal(mm);
        EXPECT_LT(max_abs(s - s.transpose()), 1e-12);
        EXPECT_EQ(Eigen::LLT<RealMatrix>(s).info(), Eigen::Success);
        EXPECT_LT(max_abs(s * s - mm), 1e-10);
    }
}

TEST(Phi1, Examples) {
    EXPECT_LT(max_abs(phi1_entire(RealMatrix(RealMatrix::Zero(2, 2))) - RealMatrix::Identity(2, 2)), 1e-16);
    EXPECT_LT(max_abs(phi1_entire(mat2(0, 1, 0, 0)) - mat2(1, 0.5, 0, 1)), 1e-16);
    const Real e = std::exp(1.0);
    EXPECT_LT(max_abs(phi1_entire(mat2(1, 0, 0, -1)) - mat2(e - 1, 0, 0, 1 - 1 / e)), 1e-14);
}

TEST(Phi1, EntireIdentityIncludingSingular) {
    Rng rng(4);
    std::vector<RealMatrix> ks{mat2(0, 1, 0, 0), mat2(0, 0, 0, 0), mat2(1e-4, 2e-4, 0, 0), mat2(1, 1, 1, 1),
                               mat2(0, 2 * pi, -2 * pi, 0)};
    for (int i = 0; i < 20; ++i) ks.push_back(gaussian_matrix(4, rng));
    for (const auto& K : ks) {
        RealMatrix lhs = phi1_entire(K) * K;
        RealMatrix rhs = mat_exp(K) - RealMatrix::Identity(K.rows(), K.cols());
        EXPECT_LT(max_abs(lhs - rhs), 1e-10 * std::max(1.0, max_abs(rhs)));
    }
}

TEST(Phi1, SeriesAndExponentialBranchesAgreeAtSwitch) {
    RealMatrix K = mat2(0.3, 1.0, -0.2, 0.1);
    RealMatrix below = phi_function(RealMatrix(K * (0.999e-3 / detail::norm1(K))), 2);
    RealMatrix above = phi_function(RealMatrix(K * (1.001e-3 / detail::norm1(K))), 2);
    EXPECT_LT(max_abs(below - above), 1e-6);
}

TEST(BarDet, Examples) {
    for (int n : {1, 2, 3}) {
        auto k = standard_kahler(n, Species::boson);
        EXPECT_LT(std::abs(bar_det(k.identity(), k.complex_structure) - 1.0), 1e-15);
        EXPECT_LT(std::abs(bar_trace(k.identity(), k.complex_structure) - Real(n)), 1e-15);
    }
    auto k = standard_kahler(1, Species::boson);
    EXPECT_LT(std::abs(bar_det(k.complex_structure, k.complex_structure) - Complex(0, 1)), 1e-15);
}

namespace {
// random real matrix commuting with J: (A - J A J)/2
RealMatrix j_commuting(const RealMatrix& J, Rng& rng) {
    RealMatrix a = gaussian_matrix(J.rows(), rng);
    return (a - J * a * J) / 2;
}
}  // namespace

TEST(BarDet, BasisIndependent) {
    Rng rng(5);
    auto k = standard_kahler(2, Species::boson);
    const RealMatrix& J = k.complex_structure;
    for (int i = 0; i < 20; ++i) {
        RealMatrix K = j_commuting(J, rng);
        // a second J-adapted basis from arbitrary independent vectors
        RealMatrix E = gaussian_matrix(4, rng).leftCols(2);
        RealMatrix S(4, 4);
        S << E, -J * E;
        ASSERT_LT(std::abs(S.determinant()), 1e12);
        Complex a = bar_det(K, J);
        Complex b = complex_block_in_basis(K, S).determinant();
        EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(a)));
    }
}

TEST(BarDet, NonStandardComplexStructure) {
    Rng rng(6);
    auto k0 = standard_kahler(2, Species::boson);
    auto k = kahler_pushforward(k0, random_symplectic(k0, rng));
    RealMatrix S = j_standard_basis(k.complex_structure);
    EXPECT_LT(max_abs(S.inverse() * k.complex_structure * S - k0.complex_structure), 1e-10);
    EXPECT_LT(std::abs(bar_det(k.identity(), k.complex_structure) - 1.0), 1e-12);
}

TEST(BarDet, HomomorphismAndLinearity) {
    Rng rng(7);
    auto k = standard_kahler(3, Species::boson);
    const RealMatrix& J = k.complex_structure;
    for (int i = 0; i < 20; ++i) {
        RealMatrix A = j_commuting(J, rng), B = j_commuting(J, rng);
        Complex lhs = bar_det(RealMatrix(A * B), J), rhs = bar_det(A, J) * bar_det(B, J);
        EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs)));
        Real x = uniform(rng, -2, 2);
        Complex t = bar_trace(RealMatrix(A + x * B), J);
        EXPECT_LT(std::abs(t - (bar_trace(A, J) + x * bar_trace(B, J))), 1e-12);
    }
}

TEST(BarDet, RejectsBadInput) {
    auto k = standard_kahler(1, Species::boson);
    EXPECT_THROW(bar_det(mat2(1, 0, 0, 2), k.complex_structure), Error);
    EXPECT_THROW(bar_det(k.identity(), mat2(1, 0, 0, 1)), Error);
}
