#pragma once

#include <random>

#include "gphase/fermion.hpp"

namespace gphase::testing {

using Rng = std::mt19937_64;

inline Real uniform(Rng& rng, Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(rng); }

inline RealMatrix gaussian_matrix(Eigen::Index d, Rng& rng) {
    std::normal_distribution<Real> n;
    RealMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = n(rng);
    return m;
}

inline Real spectral_norm(const RealMatrix& m) { return Eigen::JacobiSVD<RealMatrix>(m).singularValues()(0); }

// symmetric, spectral norm uniform in (0, bound]
inline RealMatrix random_symmetric(Eigen::Index d, Rng& rng, Real bound = 1) {
    RealMatrix a = gaussian_matrix(d, rng);
    a = (a + a.transpose()).eval();
    return a * (uniform(rng, 0.05, 1.0) * bound / spectral_norm(a));
}

inline RealMatrix random_antisymmetric(Eigen::Index d, Rng& rng, Real bound = 1) {
    RealMatrix a = gaussian_matrix(d, rng);
    a = (a - a.transpose()).eval();
    return a * (uniform(rng, 0.05, 1.0) * bound / spectral_norm(a));
}

inline RealVector random_vector(Eigen::Index d, Rng& rng, Real bound = 1) {
    std::normal_distribution<Real> n;
    RealVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = n(rng);
    return v * (uniform(rng, 0.05, 1.0) * bound / v.norm());
}

// e^K with K = Omega h, h symmetric with norm <= bound
inline RealMatrix random_symplectic(const KahlerStructure& k, Rng& rng, Real bound = 1) {
    return mat_exp(RealMatrix(k.symplectic_form * random_symmetric(k.dim(), rng, bound)));
}

inline RealMatrix random_orthogonal(const KahlerStructure& k, Rng& rng, Real bound = 1) {
    return mat_exp(RealMatrix(k.metric * random_antisymmetric(k.dim(), rng, bound)));
}

inline LiftedGaussian random_gaussian(const KahlerStructure& k, Rng& rng, Real bound = 1) {
    RealMatrix M = random_symplectic(k, rng, bound);
    LiftedSymplectic s = mp_lift(M, k, uniform(rng, 0, 1) < 0.5 ? Branch::plus : Branch::minus);
    return ig_from_parts(uniform(rng, -pi, pi), random_vector(k.dim(), rng, bound), s);
}

inline QuadraticHamiltonian random_hamiltonian(int modes, Rng& rng, Real bound = 1) {
    return {random_symmetric(2 * modes, rng, bound), random_vector(2 * modes, rng, bound), uniform(rng, -pi, pi)};
}

inline Real phase_distance(Complex a, Complex b) { return std::abs(wrap_angle(std::arg(a) - std::arg(b))); }

template <typename Derived>
Real max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

inline RealMatrix mat2(Real a, Real b, Real c, Real d) {
    RealMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline RealVector vec2(Real a, Real b) {
    RealVector v(2);
    v << a, b;
    return v;
}

// two-Hamiltonian parameter sets, one stable and one unstable
inline QuadraticHamiltonian stable_h1() { return {mat2(0.4, 0.2, 0.2, 0.5), vec2(0.5, 0.5), 0}; }
inline QuadraticHamiltonian stable_h2() { return {mat2(0.8, -0.2, -0.2, 0.5), vec2(0.5, 0.5), 0}; }
inline QuadraticHamiltonian unstable_h1() { return {mat2(0.4, -0.6, -0.6, 0.5), vec2(0.5, 0.5), 0}; }
inline QuadraticHamiltonian unstable_h2() { return {mat2(0.5, 0.4, 0.4, -0.4), vec2(0.5, 0.5), 0}; }

}  // namespace gphase::testing
