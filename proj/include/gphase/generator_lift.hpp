#pragma once

#include "inhomogeneous.hpp"

namespace gphase {

// H = 1/2 h xi xi + f xi + c for bosons, (i/2) h xi xi + c for fermions.
struct QuadraticHamiltonian {
    RealMatrix h;
    RealVector f;  // empty means zero
    Real c = 0;
};

inline RealVector linear_part(const QuadraticHamiltonian& H) {
    return H.f.size() == 0 ? RealVector::Zero(H.h.rows()) : H.f;
}

inline void validate_hamiltonian(const QuadraticHamiltonian& H, const KahlerStructure& k) {
    require_dim(H.h, k, "hamiltonian");
    if (!std::isfinite(H.c)) fail_input("non_finite", "hamiltonian: scalar term is not finite");
    Real scale = std::max(1.0, H.h.lpNorm<Eigen::Infinity>());
    if (k.species == Species::boson) {
        if ((H.h - H.h.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * scale)
            fail_input("invalid_hamiltonian", "bosonic h must be symmetric");
        if (H.f.size() != 0) require_dim(H.f, k, "hamiltonian linear term");
    } else {
        if ((H.h + H.h.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * scale)
            fail_input("invalid_hamiltonian", "fermionic h must be antisymmetric");
        if (H.f.size() != 0 && !exactly_zero(H.f))
            fail_input("invalid_hamiltonian", "fermionic Hamiltonians carry no linear term");
    }
}

inline QuadraticHamiltonian scaled(const QuadraticHamiltonian& H, Real t) {
    return {H.h * t, H.f.size() == 0 ? H.f : RealVector(H.f * t), H.c * t};
}

// K with e^{K^} = e^{-i H_quad}: Omega h for bosons, G h for fermions.
inline RealMatrix generator_matrix(const RealMatrix& h, const KahlerStructure& k) {
    return k.species == Species::boson ? RealMatrix(k.symplectic_form * h) : RealMatrix(k.metric * h);
}

inline RealMatrix hamiltonian_matrix(const RealMatrix& K, const KahlerStructure& k) {
    return k.species == Species::boson ? RealMatrix(k.symplectic_form_inv * K) : RealMatrix(k.metric_inv * K);
}

namespace detail {
// f(K) loses rank when an eigenvalue of K hits a zero of f
inline bool resonant(const RealMatrix& fk) {
    Eigen::JacobiSVD<RealMatrix> svd(fk);
    const auto& s = svd.singularValues();
    return !(s(s.size() - 1) > 1e-12 * std::max(1.0, s(0)));
}
}  // namespace detail

// (K - sinh K)(I - cosh K)^-1 as K a(K) b(K)^-1 with the entire functions
// a(x) = (x - sinh x)/x^3 and b(x) = (1 - cosh x)/x^2.
inline RealMatrix sinh_cosh_ratio(const RealMatrix& K) {
    RealMatrix a = -(phi_function(K, 3) + phi_function(-K, 3)) / 2;
    RealMatrix b = -(phi_function(K, 2) + phi_function(-K, 2)) / 2;
    Eigen::PartialPivLU<RealMatrix> lu(b);
    if (detail::resonant(b))
        fail_domain("resonant_generator", "I - cosh K is singular beyond the kernel of K (eigenvalue 2 pi i k)");
    // a and b are functions of K and commute with it
    return K * lu.solve(a);
}

struct AlphaBeta {
    RealMatrix alpha;  // K (e^K - I)^-1
    RealMatrix beta;   // (K - sinh K)(I - cosh K)^-1 / 4
};

inline AlphaBeta alpha_beta(const RealMatrix& K) {
    RealMatrix p = phi1_entire(K);
    Eigen::PartialPivLU<RealMatrix> lu(p);
    if (detail::resonant(p))
        fail_domain("resonant_generator", "e^K - I is singular beyond the kernel of K (eigenvalue 2 pi i k)");
    return {lu.inverse(), sinh_cosh_ratio(K) / 4};
}

// Displacement of e^{-iH}: Omega phi_1(-K)^T f, regular also for singular h.
inline PhaseSpaceVector z_from_hf(const RealMatrix& h, const RealVector& f, const KahlerStructure& k) {
    require_boson(k, "z_from_hf");
    require_dim(h, k, "z_from_hf");
    require_dim(f, k, "z_from_hf");
    if (exactly_zero(f)) return PhaseSpaceVector::Zero(k.dim());
    RealMatrix K = generator_matrix(h, k);
    return k.symplectic_form * (phi1_entire(-K).transpose() * f);
}

// Same vector through h^-1 (e^{-K} - I)^T f; needs invertible h.
inline PhaseSpaceVector z_from_hf_inverse_form(const RealMatrix& h, const RealVector& f, const KahlerStructure& k) {
    require_boson(k, "z_from_hf_inverse_form");
    RealMatrix K = generator_matrix(h, k);
    RealMatrix e = mat_exp(RealMatrix(-K)) - k.identity();
    return invert_checked(h, "h") * (e.transpose() * f);
}

inline RealMatrix sigma_map(const RealMatrix& K, const KahlerStructure& k) {
    require_dim(K, k, "sigma_map");
    const RealMatrix I = k.identity();
    const RealMatrix& J = k.complex_structure;
    RealMatrix res = I - mat_exp(K) * J * mat_exp(RealMatrix(-K)) * J;
    Eigen::PartialPivLU<RealMatrix> lu(res);
    if (!(lu.rcond() > 1e-13)) fail_domain("singular_resolvent", "I - e^K J e^-K J is singular");
    return 2 * lu.inverse() - I + sinh_cosh_ratio(K);
}

// Specialisation at the standard Kahler point.
inline RealMatrix sigma_map_standard(const RealMatrix& K) {
    const RealMatrix I = RealMatrix::Identity(K.rows(), K.cols());
    RealMatrix e = mat_exp(K);
    return 2 * invert_checked(I + e * e.transpose(), "I + e^K e^K^T") - I + sinh_cosh_ratio(K);
}

// ---- phase of e^{K^} by continuous square-root tracking ----

namespace detail {

// unit phase of <J|e^{K^}|J>^2 at M = e^K; zero when the overlap vanishes
inline Complex squared_vacuum_unit(const RealMatrix& M, const KahlerStructure& k, bool& vanishing) {
    Complex d = bar_det(split_cd(M, k).C, k.complex_structure);
    vanishing = !(std::abs(d) > 1e-10);
    if (vanishing) return 1.0;
    Complex u = d / std::abs(d);
    return k.species == Species::boson ? std::conj(u) : u;
}

struct TrackAttempt {
    Complex value = 1.0;
    bool ok = false;
};

inline TrackAttempt track_once(const RealMatrix& K, const KahlerStructure& k, int steps) {
    RealMatrix step = mat_exp(RealMatrix(K / steps));
    RealMatrix Mt = k.identity();
    Complex prev = 1.0;
    for (int j = 1; j <= steps; ++j) {
        // re-anchor periodically so the running product does not drift
        Mt = (j % 64 == 0 || j == steps) ? mat_exp(RealMatrix(K * (Real(j) / steps))) : RealMatrix(Mt * step);
        bool vanishing = false;
        Complex u = squared_vacuum_unit(Mt, k, vanishing);
        if (vanishing) return {};
        Complex s = principal_sqrt(u);
        if (std::abs(s - prev) > std::abs(s + prev)) s = -s;
        if (std::abs(std::arg(s / prev)) >= pi / 4) return {};
        prev = s;
    }
    return {prev, true};
}

}  // namespace detail

struct TrackedPhase {
    Complex phase = 1.0;  // <J|e^{K^}|J> / |<J|e^{K^}|J>|
    int steps = 0;
};

inline TrackedPhase track_expK_phase(const RealMatrix& K, const KahlerStructure& k, int steps = 64) {
    require_dim(K, k, "phase_expK_tracked");
    if ((K.array() == 0.0).all()) return {1.0, 0};
    int n = std::max(steps, 1);
    detail::TrackAttempt last;
    int last_n = 0;
    for (; n <= 65536; n *= 2) {
        detail::TrackAttempt a = detail::track_once(K, k, n);
        if (a.ok && last.ok && std::abs(a.value - last.value) < 1e-10) return {a.value, n};
        last = a;
        last_n = n;
    }
    if (last.ok) return {last.value, last_n};
    fail_domain("path_singularity", "vacuum overlap vanishes along t -> e^{tK}; the phase cannot be tracked");
}

inline Complex phase_expK_tracked(const RealMatrix& K, const KahlerStructure& k, int steps = 64) {
    return track_expK_phase(K, k, steps).phase;
}

// Closed form for diagonalizable K with purely imaginary nonzero spectrum.
inline Complex phase_expK_stable(const RealMatrix& K, const KahlerStructure& k) {
    require_boson(k, "phase_expK_stable");
    require_dim(K, k, "phase_expK_stable");
    Eigen::EigenSolver<RealMatrix> es(K);
    if (es.info() != Eigen::Success) fail_domain("eigen_failure", "eigendecomposition failed");
    const ComplexVector& ev = es.eigenvalues();
    Real scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i).real()) > 1e-9 * scale)
            fail_input("unsupported_spectrum", "stable closed form needs a purely imaginary spectrum");
        if (std::abs(ev(i)) <= 1e-9 * std::max(1.0, scale))
            fail_input("unsupported_spectrum", "stable closed form needs an invertible generator");
    }
    ComplexMatrix V = es.eigenvectors();
    Eigen::PartialPivLU<ComplexMatrix> lu(V);
    if (!(lu.rcond() > 1e-10)) fail_input("unsupported_spectrum", "generator is not diagonalizable");
    // sign of each eigendirection from the symplectic (Krein) signature
    ComplexMatrix omega = k.symplectic_form_inv.cast<Complex>();
    ComplexVector d(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        Real krein = (V.col(i).adjoint() * omega * V.col(i))(0, 0).imag();
        d(i) = Complex(0, krein > 0 ? -1.0 : 1.0);
    }
    RealMatrix Jt = (V * d.asDiagonal() * lu.inverse()).real();
    const RealMatrix I = k.identity();
    if ((Jt * Jt + I).lpNorm<Eigen::Infinity>() > 1e-8)
        fail_domain("invalid_complex_structure", "adapted complex structure does not square to -I");
    RealMatrix metric = -Jt * k.symplectic_form;
    if ((metric - metric.transpose()).lpNorm<Eigen::Infinity>() > 1e-8 * std::max(1.0, metric.norm()) ||
        Eigen::LLT<RealMatrix>((metric + metric.transpose()) / 2).info() != Eigen::Success)
        fail_domain("invalid_complex_structure", "adapted complex structure is not compatible with Omega");
    // e^K = T u T^-1 with T J T^-1 = Jt and u passive for J; the vacuum is an
    // eigenstate of u^ with phase Tr(K Jt)/4 and phi(T) = 1, so only the two
    // cocycles of the conjugation remain.
    RealMatrix T = mat_sqrt_principal(RealMatrix(-Jt * k.complex_structure));
    RealMatrix Ti = invert_checked(T, "squeeze factor");
    RealMatrix u = Ti * mat_exp(K) * T;
    Real angle = (K * Jt).trace() / 4 - (product_eta(T, u, k) + product_eta(RealMatrix(T * u), Ti, k)) / 2;
    return unit_phase(angle);
}

// ---- lifting a Hamiltonian ----

struct GaussianLift {
    LiftedGaussian U;
    Complex vacuum_phase_quadratic = 1.0;  // phase of <J|e^{K^}|J>
    Real sigma_phase = 0;                  // 1/4 z omega Sigma z
    int tracking_steps = 0;
};

inline GaussianLift lift_with_diagnostics(const QuadraticHamiltonian& H, const KahlerStructure& k, int steps = 64) {
    require_boson(k, "lift_from_gqh");
    validate_hamiltonian(H, k);
    RealVector f = linear_part(H);
    RealMatrix K = generator_matrix(H.h, k);
    GaussianLift r;
    TrackedPhase tp = track_expK_phase(K, k, steps);
    r.vacuum_phase_quadratic = tp.phase;
    r.tracking_steps = tp.steps;
    PhaseSpaceVector z = z_from_hf(H.h, f, k);
    if (!exactly_zero(z)) r.sigma_phase = z.dot(k.symplectic_form_inv * (sigma_map(K, k) * z)) / 4;
    Complex psi = std::conj(tp.phase) * unit_phase(H.c - r.sigma_phase);
    r.U = {mat_exp(K), z, normalized(psi), k};
    return r;
}

inline LiftedGaussian lift_from_gqh(const QuadraticHamiltonian& H, const KahlerStructure& k, int steps = 64) {
    return lift_with_diagnostics(H, k, steps).U;
}

// |<J|e^{K^ + f^}|J>| from the displacement and the squeeze.
inline Real vacuum_modulus(const RealMatrix& M, const PhaseSpaceVector& z, const KahlerStructure& k) {
    require_boson(k, "vacuum_modulus");
    Complex d = bar_det(split_cd(M, k).C, k.complex_structure);
    RealMatrix res = k.identity() + delta_map(M, k);
    Real quad = z.dot(k.metric_inv * res.partialPivLu().solve(z));
    return std::sqrt(std::exp(-quad) / std::abs(d));
}

// Analytic <J|e^{-iH}|J>.
inline Complex vacuum_expectation(const QuadraticHamiltonian& H, const KahlerStructure& k, int steps = 64) {
    LiftedGaussian U = lift_from_gqh(H, k, steps);
    return vacuum_modulus(U.M, U.z, k) * std::conj(U.Psi);
}

}  // namespace gphase
