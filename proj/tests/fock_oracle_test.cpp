#include <gtest/gtest.h>

#include "support.hpp"

using namespace gphase;
using namespace gphase::testing;

TEST(BuildFock, LadderMatrices) {
    FockRep rep = build_fock(1, 2);
    const Real s = 1 / std::sqrt(2.0);
    ComplexMatrix q(3, 3);
    q << 0, s, 0, s, 0, 1, 0, 1, 0;
    EXPECT_LT(max_abs(ComplexMatrix(rep.quadratures[0] - q)), 1e-15);
    EXPECT_EQ(rep.vacuum(0), Complex(1.0));
}

TEST(BuildFock, InteriorCommutatorAndNumberOperator) {
    FockRep rep = build_fock(1, 10);
    const ComplexMatrix& q = rep.quadratures[0];
    const ComplexMatrix& p = rep.quadratures[1];
    ComplexMatrix c = q * p - p * q;
    const Eigen::Index m = rep.n_max;  // the last level is truncated
    EXPECT_LT(max_abs(ComplexMatrix(c.topLeftCorner(m, m) - Complex(0, 1) * ComplexMatrix::Identity(m, m))), 1e-12);
    ComplexMatrix num = number_operator(rep);
    for (Eigen::Index i = 0; i <= m; ++i) EXPECT_NEAR(num(i, i).real(), Real(i), 1e-12);
    ComplexMatrix quad = (q * q + p * p - ComplexMatrix::Identity(rep.dim(), rep.dim())) / 2;
    for (Eigen::Index i = 0; i < m; ++i) EXPECT_NEAR(quad(i, i).real(), Real(i), 1e-12);
}

TEST(BuildFock, TwoModesCommute) {
    FockRep rep = build_fock(2, 5);
    ComplexMatrix c = rep.quadratures[0] * rep.quadratures[1] - rep.quadratures[1] * rep.quadratures[0];
    EXPECT_LT(max_abs(c), 1e-14);
    EXPECT_EQ(rep.dim(), 36);
}

TEST(BuildFock, SizeGuard) {
    EXPECT_THROW(build_fock(3, 16), Error);
    EXPECT_NO_THROW(build_fock(2, 63));
    EXPECT_THROW(build_fock(2, 64), Error);
}

TEST(VacuumAmplitude, Examples) {
    FockRep rep = build_fock(1, 20);
    OracleAmplitude z = vacuum_amplitude_gqh({RealMatrix::Zero(2, 2), RealVector::Zero(2), 0}, 1, rep);
    EXPECT_LT(std::abs(z.value - 1.0), 1e-14);
    // n + 1/2 = (q^2 + p^2)/2
    OracleAmplitude r = vacuum_amplitude_gqh({RealMatrix::Identity(2, 2), RealVector::Zero(2), 0}, 2 * pi, rep);
    EXPECT_LT(std::abs(r.value + 1.0), 1e-12);
    FockRep big = build_fock(1, 80);
    OracleAmplitude s = vacuum_amplitude_gqh(stable_h1(), 1, big);
    EXPECT_TRUE(std::isfinite(s.value.real()) && std::isfinite(s.value.imag()));
    EXPECT_LE(std::abs(s.value), 1 + 1e-8);
    EXPECT_TRUE(s.reliable);
}

TEST(VacuumAmplitude, ReliabilityFlagFires) {
    FockRep rep = build_fock(1, 20);
    OracleAmplitude a = vacuum_amplitude_gqh(unstable_h1(), 6.0, rep);
    EXPECT_FALSE(a.reliable);
}

TEST(ZetaNumeric, TrivialCases) {
    FockRep rep = build_fock(1, 20);
    QuadraticHamiltonian zero{RealMatrix::Zero(2, 2), RealVector::Zero(2), 0};
    EXPECT_NEAR(zeta_numeric(zero, zero, 1.0, rep), 0, 1e-15);
    EXPECT_NEAR(zeta_numeric(stable_h1(), stable_h2(), 0.0, rep), 0, 1e-15);
}

TEST(NumberExpectation, Examples) {
    auto k = standard_kahler(1, Species::boson);
    FockRep rep = build_fock(1, 60);
    EXPECT_NEAR(number_expectation(stable_h1(), stable_h2(), 0, rep), 0, 1e-15);
    EXPECT_NEAR(number_expectation_analytic(stable_h1(), stable_h2(), 0, k), 0, 1e-15);
    // coherent state from pure displacements
    QuadraticHamiltonian d1{RealMatrix::Zero(2, 2), vec2(0.3, 0.4), 0}, d2{RealMatrix::Zero(2, 2), vec2(-0.1, 0.6), 0};
    RealVector z = k.symplectic_form * (d1.f + d2.f) * 1.5;
    EXPECT_NEAR(number_expectation_analytic(d1, d2, 1.5, k), z.squaredNorm() / 2, 1e-14);
    EXPECT_NEAR(number_expectation(d1, d2, 1.5, rep), z.squaredNorm() / 2, 1e-10);
}

TEST(NumberExpectation, StablePair) {
    auto k = standard_kahler(1, Species::boson);
    FockRep rep = build_fock(1, 80);
    PairOracle o(stable_h1(), stable_h2(), rep);
    for (Real t : {0.5, 3.0, 9.5}) EXPECT_NEAR(o.at(t).number, number_expectation_analytic(stable_h1(), stable_h2(), t, k), 1e-6);
}

TEST(ParityCheck, Identity) {
    EXPECT_LT(parity_check(build_fock(1, 10)), 1e-12);
    EXPECT_LT(parity_check(build_fock(1, 101)), 1e-12);
    EXPECT_THROW(parity_check(build_fock(2, 3)), Error);
}

TEST(ParityCheck, EntrywisePhases) {
    FockRep rep = build_fock(1, 12);
    ComplexMatrix P = ComplexMatrix::Zero(13, 13);
    for (int n = 0; n <= 12; ++n) P(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    EXPECT_LT(max_abs(ComplexMatrix(P * P - ComplexMatrix::Identity(13, 13))), 1e-16);
    ComplexMatrix e = mat_exp(ComplexMatrix(Complex(0, pi / 2) * P));
    for (int n = 0; n <= 12; ++n) EXPECT_LT(std::abs(e(n, n) - Complex(0, 1) * P(n, n)), 1e-14);
}

TEST(OracleSelfConsistency, ErrorShrinksWithCutoff) {
    auto k = standard_kahler(1, Species::boson);
    // strong displacement so that the small cutoffs visibly truncate
    QuadraticHamiltonian H{stable_h1().h, vec2(2.0, 1.5), 0};
    Complex exact = vacuum_expectation(H, k);
    Real prev = INFINITY;
    for (int n : {20, 40, 80}) {
        Real err = std::abs(vacuum_amplitude_gqh(H, 1, build_fock(1, n)).value - exact);
        EXPECT_TRUE(err < prev || err < 1e-12) << n;
        prev = err;
    }
    EXPECT_LT(prev, 1e-10);
}

TEST(OracleSelfConsistency, UnitaryOnInteriorBlock) {
    FockRep rep = build_fock(1, 80);
    Propagator p(stable_h1(), rep);
    for (Real t : {1.0, 10.0}) {
        ComplexMatrix U = p.unitary(t);
        ComplexMatrix uu = U.adjoint() * U;
        EXPECT_LT(max_abs(ComplexMatrix(uu.topLeftCorner(40, 40) - ComplexMatrix::Identity(40, 40))), 1e-8);
    }
}

TEST(OracleSelfConsistency, UnstableFlagBeyondTwo) {
    auto k = standard_kahler(1, Species::boson);
    const int n_max = 120;
    FockRep rep = build_fock(1, n_max);
    PairOracle o(unstable_h1(), unstable_h2(), rep);
    auto flagged = [&](Real t) {
        PairSample s = o.at(t);
        return std::max(s.max_excitation, number_expectation_analytic(unstable_h1(), unstable_h2(), t, k)) > 0.5 * n_max;
    };
    EXPECT_FALSE(flagged(1.5));
    EXPECT_FALSE(flagged(2.0));
    EXPECT_TRUE(flagged(3.0));
}
