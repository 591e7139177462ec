#pragma once

#include "phase_space.hpp"

namespace gphase {

// Sign convention, calibrated against the truncated Fock and 2^N oracles:
// psi^2 = circle_phi(M) for both species, and the vacuum phase of S(M, psi)
// is conj(psi) for bosons but psi itself for fermions.
inline Complex reference_phase(Complex psi, Species s) { return s == Species::boson ? std::conj(psi) : psi; }
inline Complex psi_from_reference_phase(Complex phase, Species s) { return reference_phase(phase, s); }

inline Complex normalized(Complex z) { return z / std::abs(z); }

// principal root with sqrt(-1) = +i, also when the zero imaginary part is negative
inline Complex principal_sqrt(Complex z) {
    if (z.imag() == 0) z = Complex(z.real(), 0.0);
    return std::sqrt(z);
}

inline Complex circle_phi(const RealMatrix& M, const KahlerStructure& k) {
    if (exactly_identity(M)) return 1.0;
    CDSplit cd = split_cd(M, k);
    Complex d = bar_det(cd.C, k.complex_structure);
    if (!(std::abs(d) > 1e-13))
        fail_domain("unitarily_orthogonal", "bar_det(C_M) vanishes, the circle function is undefined");
    return d / std::abs(d);
}

// Im bar-Tr log(I - Z_{M1} Z_{M2^-1}), principal branch, not reduced mod 2 pi.
inline Real cocycle_eta(const RealMatrix& M1, const RealMatrix& M2, const KahlerStructure& k) {
    require_dim(M1, k, "cocycle_eta");
    require_dim(M2, k, "cocycle_eta");
    if (exactly_identity(M1) || exactly_identity(M2)) return 0.0;
    auto z1 = z_map(M1, k);
    auto z2 = z_map(invert_checked(M2, "group element"), k);
    if (!z1 || !z2) fail_domain("undefined_z_map", "cocycle_eta needs invertible C for M1 and M2^-1");
    return bar_trace_log(k.identity() - *z1 * *z2, k.complex_structure).imag();
}

// Same cocycle written with Y maps: Im bar-Tr log(I - Y_{M1^-1} Y_{M2}).
inline Real cocycle_eta_y(const RealMatrix& M1, const RealMatrix& M2, const KahlerStructure& k) {
    require_dim(M1, k, "cocycle_eta_y");
    require_dim(M2, k, "cocycle_eta_y");
    if (exactly_identity(M1) || exactly_identity(M2)) return 0.0;
    RealMatrix y1 = y_map(invert_checked(M1, "group element"), k);
    RealMatrix y2 = y_map(M2, k);
    return bar_trace_log(k.identity() - y1 * y2, k.complex_structure).imag();
}

// Y form by default, Z form when I + Delta is singular (reachable for fermions).
inline Real product_eta(const RealMatrix& M1, const RealMatrix& M2, const KahlerStructure& k) {
    try {
        return cocycle_eta_y(M1, M2, k);
    } catch (const Error& e) {
        if (e.tag() != "singular_resolvent") throw;
    }
    return cocycle_eta(M1, M2, k);
}

struct CartanFactors {
    RealMatrix T;  // squeeze, sqrt(Delta_M)
    RealMatrix u;  // passive part, commutes with J
};

inline CartanFactors cartan(const RealMatrix& M, const KahlerStructure& k) {
    RealMatrix T = mat_sqrt_principal(delta_map(M, k));
    RealMatrix u = T.partialPivLu().solve(M);
    return {T, u};
}

struct LiftedSymplectic {
    RealMatrix M;
    Complex psi = 1.0;
    KahlerStructure k;
};

enum class Branch { plus, minus };

inline void require_group_element(const RealMatrix& M, const KahlerStructure& k, const char* who) {
    require_dim(M, k, who);
    GroupCheck g = validate_group_element(M, k, 1e-9 * std::max(1.0, M.squaredNorm()));
    if (!g.valid) fail_input("not_group_element", std::string(who) + ": residual " + std::to_string(g.residual));
}

inline LiftedSymplectic mp_identity(const KahlerStructure& k) { return {k.identity(), 1.0, k}; }

inline LiftedSymplectic mp_lift(const RealMatrix& M, const KahlerStructure& k, Branch branch = Branch::plus) {
    require_group_element(M, k, "mp_lift");
    Complex psi = principal_sqrt(circle_phi(M, k));
    return {M, branch == Branch::plus ? psi : -psi, k};
}

inline LiftedSymplectic mp_multiply(const LiftedSymplectic& a, const LiftedSymplectic& b) {
    if (!same_structure(a.k, b.k)) fail_input("structure_mismatch", "factors use different Kahler structures");
    Real eta = product_eta(a.M, b.M, a.k);
    return {a.M * b.M, normalized(a.psi * b.psi * unit_phase(eta / 2)), a.k};
}

}  // namespace gphase
