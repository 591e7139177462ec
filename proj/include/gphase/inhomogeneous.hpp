#pragma once

#include "metaplectic.hpp"

namespace gphase {

inline void require_boson(const KahlerStructure& k, const char* who) {
    if (k.species != Species::boson)
        fail_input("species_mismatch", std::string(who) + " is defined for bosons only (fermions have no displacements)");
}

inline Real symplectic_area(const PhaseSpaceVector& z1, const PhaseSpaceVector& z2, const KahlerStructure& k) {
    return z1.dot(k.symplectic_form_inv * z2);
}

// e^{i phase} D(z)
struct Displacement {
    PhaseSpaceVector z;
    Real phase = 0;
};

inline Displacement disp_multiply(const Displacement& a, const Displacement& b, const KahlerStructure& k) {
    require_boson(k, "disp_multiply");
    require_dim(a.z, k, "disp_multiply");
    require_dim(b.z, k, "disp_multiply");
    return {a.z + b.z, a.phase + b.phase + symplectic_area(a.z, b.z, k) / 2};
}

// Phase of <J|D(z) S(T,1)|J>, the cross term of displacement and squeezing.
inline Real gamma_phase(const RealMatrix& M, const PhaseSpaceVector& z, const KahlerStructure& k) {
    require_dim(M, k, "gamma_phase");
    require_dim(z, k, "gamma_phase");
    if (exactly_zero(z) || exactly_identity(M)) return 0.0;
    return z.dot(k.symplectic_form_inv * (y_map(M, k) * z)) / 4;
}

// Full complex value of <J|D(z) S(M,1)|J> up to the passive phase.
inline Complex dsq_overlap(const RealMatrix& M, const PhaseSpaceVector& z, const KahlerStructure& k) {
    require_boson(k, "dsq_overlap");
    require_dim(M, k, "dsq_overlap");
    require_dim(z, k, "dsq_overlap");
    RealMatrix Y = y_map(M, k);
    const RealMatrix I = k.identity();
    Real det = (I - Y * Y).determinant();
    Real quad = z.dot(k.metric_inv * ((I + Y) * z));
    Real gamma = z.dot(k.symplectic_form_inv * (Y * z)) / 4;
    return std::pow(det, 0.125) * std::exp(-quad / 4) * unit_phase(gamma);
}

inline Real zeta_cocycle(const RealMatrix& M1, const PhaseSpaceVector& z1, const RealMatrix& M2,
                         const PhaseSpaceVector& z2, const KahlerStructure& k) {
    require_boson(k, "zeta_cocycle");
    require_dim(z1, k, "zeta_cocycle");
    require_dim(z2, k, "zeta_cocycle");
    Real eta = product_eta(M1, M2, k);
    if (exactly_zero(z1) && exactly_zero(z2)) return eta / 2;
    RealMatrix M12 = M1 * M2;
    PhaseSpaceVector m1z2 = M1 * z2;
    PhaseSpaceVector z12 = z1 + m1z2;
    return eta / 2 + gamma_phase(M1, z1, k) + gamma_phase(M2, z2, k) - gamma_phase(M12, z12, k) -
           symplectic_area(z1, m1z2, k) / 2;
}

// U(M, z, Psi) = e^{i theta} D(z) S(M, psi); the vacuum phase of U is conj(Psi).
struct LiftedGaussian {
    RealMatrix M;
    PhaseSpaceVector z;
    Complex Psi = 1.0;
    KahlerStructure k;
};

inline LiftedGaussian ig_identity(const KahlerStructure& k) {
    require_boson(k, "ig_identity");
    return {k.identity(), PhaseSpaceVector::Zero(k.dim()), 1.0, k};
}

inline LiftedGaussian as_lifted(const Displacement& d, const KahlerStructure& k) {
    require_boson(k, "as_lifted");
    require_dim(d.z, k, "as_lifted");
    return {k.identity(), d.z, unit_phase(-d.phase), k};
}

inline LiftedGaussian ig_multiply(const LiftedGaussian& a, const LiftedGaussian& b) {
    if (!same_structure(a.k, b.k)) fail_input("structure_mismatch", "factors use different Kahler structures");
    Real zeta = zeta_cocycle(a.M, a.z, b.M, b.z, a.k);
    return {a.M * b.M, a.z + a.M * b.z, normalized(a.Psi * b.Psi * unit_phase(zeta)), a.k};
}

struct GaussianParts {
    Real theta = 0;
    PhaseSpaceVector z;
    LiftedSymplectic lifted;  // principal lift
};

inline GaussianParts ig_decompose(const LiftedGaussian& U) {
    require_boson(U.k, "ig_decompose");
    LiftedSymplectic s = mp_lift(U.M, U.k, Branch::plus);
    Complex e = std::conj(U.Psi) * s.psi * unit_phase(-gamma_phase(U.M, U.z, U.k));
    return {std::arg(e), U.z, s};
}

inline LiftedGaussian ig_from_parts(Real theta, const PhaseSpaceVector& z, const LiftedSymplectic& s) {
    require_boson(s.k, "ig_from_parts");
    require_dim(z, s.k, "ig_from_parts");
    Complex psi = s.psi * unit_phase(-theta - gamma_phase(s.M, z, s.k));
    return {s.M, z, normalized(psi), s.k};
}

// Psi of the inverse follows from requiring U * U^-1 = (I, 0, 1).
inline LiftedGaussian ig_inverse(const LiftedGaussian& U) {
    require_boson(U.k, "ig_inverse");
    RealMatrix Mi = invert_checked(U.M, "group element");
    PhaseSpaceVector zi = -(Mi * U.z);
    Real zeta = zeta_cocycle(U.M, U.z, Mi, zi, U.k);
    return {Mi, zi, normalized(std::conj(U.Psi) * unit_phase(-zeta)), U.k};
}

// S(M) D(z) = D(Mz) S(M)
inline PhaseSpaceVector sd_commute(const RealMatrix& M, const PhaseSpaceVector& z) {
    if (M.cols() != z.size()) fail_input("dimension_mismatch", "sd_commute size mismatch");
    return M * z;
}

}  // namespace gphase
