#pragma once

#include <vector>

#include "fock_oracle.hpp"

namespace gphase {

inline void require_fermion(const KahlerStructure& k, const char* who) {
    if (k.species != Species::fermion) fail_input("species_mismatch", std::string(who) + " is defined for fermions only");
}

// Covector w with w G w = 2; w.xi is then a Hermitian unitary.
struct ReflectionVector {
    RealVector w;
};

inline ReflectionVector make_reflection_vector(const RealVector& w, const KahlerStructure& k, bool rescale = false) {
    require_dim(w, k, "reflection vector");
    Real n2 = w.dot(k.metric * w);
    if (!(n2 > 1e-300)) fail_input("zero_vector", "reflection vector vanishes");
    if (rescale) return {w * std::sqrt(2 / n2)};
    if (std::abs(n2 - 2) > 1e-12) fail_input("not_normalized", "reflection vector needs w G w = 2");
    return {w};
}

// First basis direction, scaled to w G w = 2. All Pin phases refer to it.
inline ReflectionVector reference_reflection(const KahlerStructure& k) {
    RealVector w = RealVector::Zero(k.dim());
    w(0) = std::sqrt(2 / k.metric(0, 0));
    return {w};
}

inline RealMatrix mw_reflection(const ReflectionVector& r, const KahlerStructure& k) {
    require_fermion(k, "mw_reflection");
    ReflectionVector w = make_reflection_vector(r.w, k);
    return (k.metric * w.w) * w.w.transpose() - k.identity();
}

inline void require_orthogonal(const RealMatrix& M, const KahlerStructure& k, const char* who) {
    require_dim(M, k, who);
    if ((M * k.metric * M.transpose() - k.metric).lpNorm<Eigen::Infinity>() > 1e-8)
        fail_input("not_group_element", std::string(who) + ": matrix does not preserve G");
}

// Circle value of the component representative: phi(M) for det = +1 and
// phi(M_w M) for det = -1. It is the square of the Pin phase label.
inline Complex pin_component_phase(const RealMatrix& M, const ReflectionVector& w, const KahlerStructure& k) {
    require_fermion(k, "pin_component_phase");
    require_orthogonal(M, k, "pin_component_phase");
    Real det = M.determinant();
    if (std::abs(det - 1) <= 1e-8) return circle_phi(M, k);
    if (std::abs(det + 1) <= 1e-8) return circle_phi(RealMatrix(mw_reflection(w, k) * M), k);
    fail_domain("determinant_margin", "determinant is not +-1 within 1e-8");
}

// Lift of the operator (w1.xi)(w2.xi), an element of the identity component.
// Its vacuum amplitude is the two-point function 1/2 w1 (G + i Omega) w2.
inline LiftedSymplectic reflection_pair_lift(const ReflectionVector& w1, const ReflectionVector& w2,
                                             const KahlerStructure& k) {
    require_fermion(k, "reflection_pair_lift");
    Complex amp = 0.5 * Complex(w1.w.dot(k.metric * w2.w), w1.w.dot(k.symplectic_form * w2.w));
    if (!(std::abs(amp) > 1e-13))
        fail_domain("unitarily_orthogonal", "reflection pair maps the reference state to an orthogonal state");
    RealMatrix M = mw_reflection(w1, k) * mw_reflection(w2, k);
    return {M, psi_from_reference_phase(amp / std::abs(amp), Species::fermion), k};
}

// Lift of e^{K^} for a fermionic generator, phase from branch tracking.
inline LiftedSymplectic fermion_generator_lift(const RealMatrix& K, const KahlerStructure& k) {
    require_fermion(k, "fermion_generator_lift");
    Complex phase = phase_expK_tracked(K, k);
    return {mat_exp(K), psi_from_reference_phase(phase, Species::fermion), k};
}

// Majorana operators on 2^N states (Jordan-Wigner), {xi^a, xi^b} = delta^ab.
struct MajoranaRep {
    int modes = 0;
    std::vector<ComplexMatrix> majoranas;  // q_1..q_N, p_1..p_N
    ComplexVector vacuum;
    Real anticommutator_residual = 0;

    Eigen::Index dim() const { return vacuum.size(); }
};

inline MajoranaRep build_majorana(int modes) {
    if (modes < 1 || modes > 5) fail_input("invalid_argument", "Majorana representation supports 1 <= N <= 5");
    ComplexMatrix lower(2, 2), parity(2, 2), id = ComplexMatrix::Identity(2, 2);
    lower << 0, 1, 0, 0;
    parity << 1, 0, 0, -1;
    MajoranaRep r;
    r.modes = modes;
    const Real s = 1 / std::sqrt(2.0);
    std::vector<ComplexMatrix> q, p;
    for (int j = 0; j < modes; ++j) {
        ComplexMatrix a = ComplexMatrix::Identity(1, 1);
        for (int m = 0; m < modes; ++m) a = kron(a, m < j ? parity : (m == j ? lower : id));
        ComplexMatrix ad = a.adjoint();
        q.push_back(s * (a + ad));
        p.push_back(Complex(0, s) * (ad - a));
    }
    for (auto& m : q) r.majoranas.push_back(m);
    for (auto& m : p) r.majoranas.push_back(m);
    const Eigen::Index d = Eigen::Index(1) << modes;
    for (std::size_t a = 0; a < r.majoranas.size(); ++a)
        for (std::size_t b = 0; b < r.majoranas.size(); ++b) {
            ComplexMatrix ac = r.majoranas[a] * r.majoranas[b] + r.majoranas[b] * r.majoranas[a];
            if (a == b) ac -= ComplexMatrix::Identity(d, d);
            r.anticommutator_residual = std::max(r.anticommutator_residual, ac.cwiseAbs().maxCoeff());
        }
    if (r.anticommutator_residual > 1e-10)
        fail_domain("construction_bug", "Majorana anticommutators are off by " + std::to_string(r.anticommutator_residual));
    r.vacuum = ComplexVector::Zero(d);
    r.vacuum(0) = 1;
    return r;
}

inline ComplexMatrix majorana_linear(const RealVector& w, const MajoranaRep& rep) {
    ComplexMatrix r = ComplexMatrix::Zero(rep.dim(), rep.dim());
    for (std::size_t a = 0; a < rep.majoranas.size(); ++a) r += w(a) * rep.majoranas[a];
    return r;
}

// K^ = 1/2 h_ab xi^a xi^b, the anti-Hermitian generator with e^{K^} = e^{-iH}
inline ComplexMatrix majorana_quadratic(const RealMatrix& h, const MajoranaRep& rep) {
    if (h.rows() != 2 * rep.modes || h.cols() != 2 * rep.modes)
        fail_input("dimension_mismatch", "generator does not match the Majorana representation");
    if ((h + h.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * std::max(1.0, h.lpNorm<Eigen::Infinity>()))
        fail_input("invalid_hamiltonian", "fermionic h must be antisymmetric");
    ComplexMatrix r = ComplexMatrix::Zero(rep.dim(), rep.dim());
    for (std::size_t a = 0; a < rep.majoranas.size(); ++a)
        for (std::size_t b = 0; b < rep.majoranas.size(); ++b)
            if (h(a, b) != 0) r += (0.5 * h(a, b)) * (rep.majoranas[a] * rep.majoranas[b]);
    return r;
}

inline Complex vacuum_amplitude(const ComplexMatrix& op, const MajoranaRep& rep) {
    return rep.vacuum.dot(op * rep.vacuum);
}

// <J|e^{K^}|J> with K = G h
inline Complex fermion_vacuum_amplitude(const RealMatrix& h, const MajoranaRep& rep) {
    return vacuum_amplitude(mat_exp(majorana_quadratic(h, rep)), rep);
}

}  // namespace gphase
