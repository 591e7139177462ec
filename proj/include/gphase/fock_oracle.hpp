#pragma once

#include <vector>

#include "generator_lift.hpp"

namespace gphase {

// Truncated Fock representation of N bosonic modes, occupations 0..n_max each.
struct FockRep {
    int modes = 0;
    int n_max = 0;
    std::vector<ComplexMatrix> quadratures;  // q_1..q_N, p_1..p_N
    std::vector<ComplexMatrix> lowering;     // a_1..a_N
    RealVector occupation;                   // total excitation number per basis state
    ComplexVector vacuum;

    Eigen::Index dim() const { return vacuum.size(); }
};

inline constexpr Eigen::Index fock_size_limit = 4096;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

inline FockRep build_fock(int modes, int n_max) {
    if (modes < 1 || n_max < 1) fail_input("invalid_argument", "build_fock needs modes >= 1 and n_max >= 1");
    const Eigen::Index d1 = n_max + 1;
    Eigen::Index dim = 1;
    for (int j = 0; j < modes; ++j) {
        dim *= d1;
        if (dim > fock_size_limit)
            fail_input("size_guard", "(n_max+1)^N exceeds " + std::to_string(fock_size_limit));
    }
    ComplexMatrix a1 = ComplexMatrix::Zero(d1, d1);
    for (Eigen::Index n = 1; n < d1; ++n) a1(n - 1, n) = std::sqrt(Real(n));
    FockRep r;
    r.modes = modes;
    r.n_max = n_max;
    const Real s = 1 / std::sqrt(2.0);
    const Complex i(0, 1);
    std::vector<ComplexMatrix> q(modes), p(modes);
    for (int j = 0; j < modes; ++j) {
        ComplexMatrix a = ComplexMatrix::Identity(1, 1);
        for (int m = 0; m < modes; ++m) a = kron(a, m == j ? a1 : ComplexMatrix::Identity(d1, d1));
        ComplexMatrix ad = a.adjoint();
        q[j] = s * (ad + a);
        p[j] = i * s * (ad - a);
        r.lowering.push_back(a);
    }
    for (auto& m : q) r.quadratures.push_back(m);
    for (auto& m : p) r.quadratures.push_back(m);
    r.occupation = RealVector::Zero(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        Eigen::Index rest = idx;
        for (int j = 0; j < modes; ++j) {
            r.occupation(idx) += Real(rest % d1);
            rest /= d1;
        }
    }
    r.vacuum = ComplexVector::Zero(dim);
    r.vacuum(0) = 1;
    return r;
}

inline ComplexMatrix linear_operator(const RealVector& c, const FockRep& rep) {
    ComplexMatrix r = ComplexMatrix::Zero(rep.dim(), rep.dim());
    for (std::size_t a = 0; a < rep.quadratures.size(); ++a)
        if (c(a) != 0) r += c(a) * rep.quadratures[a];
    return r;
}

// 1/2 h_ab xi^a xi^b
inline ComplexMatrix quadratic_form_operator(const RealMatrix& h, const FockRep& rep) {
    ComplexMatrix r = ComplexMatrix::Zero(rep.dim(), rep.dim());
    const std::size_t d = rep.quadratures.size();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            if (h(a, b) != 0) r += (0.5 * h(a, b)) * (rep.quadratures[a] * rep.quadratures[b]);
    return r;
}

inline ComplexMatrix hamiltonian_operator(const QuadraticHamiltonian& H, const FockRep& rep) {
    if (H.h.rows() != 2 * rep.modes || H.h.cols() != 2 * rep.modes)
        fail_input("dimension_mismatch", "hamiltonian does not match the Fock representation");
    ComplexMatrix r = quadratic_form_operator(H.h, rep);
    RealVector f = linear_part(H);
    r += linear_operator(f, rep);
    r += H.c * ComplexMatrix::Identity(rep.dim(), rep.dim());
    return r;
}

inline ComplexMatrix number_operator(const FockRep& rep) {
    return rep.occupation.cast<Complex>().asDiagonal();
}

// D(z) = exp(i z^T omega xi), standard omega
inline ComplexMatrix displacement_operator(const PhaseSpaceVector& z, const FockRep& rep) {
    RealVector c = standard_kahler(rep.modes, Species::boson).symplectic_form_inv.transpose() * z;
    return mat_exp(ComplexMatrix(Complex(0, 1) * linear_operator(c, rep)));
}

// exp(K^) with K^ = -i/2 h xi xi and h = omega K
inline ComplexMatrix quadratic_unitary(const RealMatrix& K, const FockRep& rep) {
    RealMatrix h = hamiltonian_matrix(K, standard_kahler(rep.modes, Species::boson));
    return mat_exp(ComplexMatrix(Complex(0, -1) * quadratic_form_operator(h, rep)));
}

inline PhaseSpaceVector quadrature_expectation(const ComplexVector& psi, const FockRep& rep) {
    PhaseSpaceVector r(rep.quadratures.size());
    for (std::size_t a = 0; a < rep.quadratures.size(); ++a) r(a) = psi.dot(rep.quadratures[a] * psi).real();
    return r;
}

inline Real mean_excitation(const ComplexVector& psi, const FockRep& rep) {
    return (psi.cwiseAbs2().array() * rep.occupation.array()).sum() / psi.squaredNorm();
}

// e^{-iHt} through the eigendecomposition of the (Hermitian) truncated H.
class Propagator {
public:
    Propagator(const QuadraticHamiltonian& H, const FockRep& rep) {
        ComplexMatrix op = hamiltonian_operator(H, rep);
        op = (op + op.adjoint()).eval() / 2;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(op);
        if (es.info() != Eigen::Success) fail_domain("eigen_failure", "truncated Hamiltonian diagonalisation failed");
        energies_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
        vacuum_weights_ = vectors_.row(0).adjoint();
    }

    ComplexVector evolve(Real t, const ComplexVector& psi) const {
        ComplexVector c = vectors_.adjoint() * psi;
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * t);
        return vectors_ * c;
    }

    ComplexMatrix unitary(Real t) const {
        ComplexVector ph(energies_.size());
        for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::polar(1.0, -energies_(k) * t);
        return vectors_ * ph.asDiagonal() * vectors_.adjoint();
    }

    Complex vacuum_amplitude(Real t) const {
        Complex s = 0;
        for (Eigen::Index k = 0; k < energies_.size(); ++k)
            s += std::norm(vacuum_weights_(k)) * std::polar(1.0, -energies_(k) * t);
        return s;
    }

private:
    RealVector energies_;
    ComplexMatrix vectors_;
    ComplexVector vacuum_weights_;
};

inline bool within_cutoff(Real mean, const FockRep& rep) { return mean <= 0.5 * rep.n_max; }

struct OracleAmplitude {
    Complex value = 1.0;
    Real mean_excitation = 0;
    bool reliable = true;
};

// <N> of U|0> for U = (M, z): -1/4 tr(I - Delta_M) + 1/2 z g z
inline Real excitation_analytic(const RealMatrix& M, const PhaseSpaceVector& z, const KahlerStructure& k) {
    return -(k.identity() - delta_map(M, k)).trace() / 4 + z.dot(k.metric_inv * z) / 2;
}

inline Real excitation_analytic(const QuadraticHamiltonian& H, Real t, const KahlerStructure& k) {
    QuadraticHamiltonian a = scaled(H, t);
    validate_hamiltonian(a, k);
    return excitation_analytic(mat_exp(generator_matrix(a.h, k)), z_from_hf(a.h, linear_part(a), k), k);
}

// The truncated <N> saturates once truncation bites, so the flag also looks
// at the exact excitation.
inline OracleAmplitude vacuum_amplitude_gqh(const QuadraticHamiltonian& H, Real t, const FockRep& rep) {
    Propagator P(H, rep);
    ComplexVector psi = P.evolve(t, rep.vacuum);
    Real n = mean_excitation(psi, rep);
    Real exact = excitation_analytic(H, t, standard_kahler(rep.modes, Species::boson));
    return {psi(0), n, within_cutoff(std::max(n, exact), rep)};
}

struct PairSample {
    Complex amp1 = 1.0, amp2 = 1.0, amp12 = 1.0;
    Real zeta = 0;             // arg(amp1 amp2 / amp12), NaN when undefined
    bool defined = true;       // all amplitudes non-vanishing
    Real number = 0;           // <N> of U1 U2 |0>
    Real max_excitation = 0;   // largest <N> among U1|0>, U2|0>, U1U2|0>
    bool reliable = true;
};

// Two Hamiltonians evolved for the same t, as in the cocycle test U1(t) U2(t).
class PairOracle {
public:
    PairOracle(const QuadraticHamiltonian& H1, const QuadraticHamiltonian& H2, const FockRep& rep)
        : rep_(rep), p1_(H1, rep), p2_(H2, rep) {}

    PairSample at(Real t) const {
        PairSample s;
        ComplexVector a = p1_.evolve(t, rep_.vacuum);
        ComplexVector b = p2_.evolve(t, rep_.vacuum);
        ComplexVector ab = p1_.evolve(t, b);
        s.amp1 = a(0);
        s.amp2 = b(0);
        s.amp12 = ab(0);
        s.number = mean_excitation(ab, rep_);
        s.max_excitation = std::max({mean_excitation(a, rep_), mean_excitation(b, rep_), s.number});
        s.reliable = within_cutoff(s.max_excitation, rep_);
        s.defined = std::abs(s.amp1) > 1e-12 && std::abs(s.amp2) > 1e-12 && std::abs(s.amp12) > 1e-12;
        s.zeta = s.defined ? wrap_angle(std::arg(s.amp1 * s.amp2 / s.amp12)) : std::nan("");
        return s;
    }

private:
    const FockRep& rep_;
    Propagator p1_, p2_;
};

inline Real zeta_numeric(const QuadraticHamiltonian& H1, const QuadraticHamiltonian& H2, Real t, const FockRep& rep) {
    PairSample s = PairOracle(H1, H2, rep).at(t);
    if (!s.defined) fail_domain("undefined_phase", "a vacuum amplitude vanishes");
    return s.zeta;
}

inline Real number_expectation(const QuadraticHamiltonian& H1, const QuadraticHamiltonian& H2, Real t,
                               const FockRep& rep) {
    return PairOracle(H1, H2, rep).at(t).number;
}

// -1/4 tr(I - Delta_M) + 1/2 z g z for M = M1(t) M2(t), z = z1(t) + M1(t) z2(t)
inline Real number_expectation_analytic(const QuadraticHamiltonian& H1, const QuadraticHamiltonian& H2, Real t,
                                        const KahlerStructure& k) {
    require_boson(k, "number_expectation_analytic");
    QuadraticHamiltonian a = scaled(H1, t), b = scaled(H2, t);
    validate_hamiltonian(a, k);
    validate_hamiltonian(b, k);
    RealMatrix M1 = mat_exp(generator_matrix(a.h, k));
    RealMatrix M2 = mat_exp(generator_matrix(b.h, k));
    PhaseSpaceVector z = z_from_hf(a.h, linear_part(a), k) + M1 * z_from_hf(b.h, linear_part(b), k);
    return excitation_analytic(M1 * M2, z, k);
}

// max |e^{i pi (n + 1/2)} - i P| on one truncated mode
inline Real parity_check(const FockRep& rep) {
    if (rep.modes != 1) fail_input("invalid_argument", "parity_check needs a single mode");
    const Eigen::Index d = rep.dim();
    ComplexMatrix gen = (Complex(0, pi) * (rep.occupation.array() + 0.5).matrix().cast<Complex>()).asDiagonal();
    ComplexMatrix lhs = mat_exp(gen);
    ComplexMatrix parity = ComplexMatrix::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) parity(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return (lhs - Complex(0, 1) * parity).cwiseAbs().maxCoeff();
}

}  // namespace gphase
