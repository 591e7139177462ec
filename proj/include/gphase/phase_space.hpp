#pragma once

#include <optional>

#include "linalg.hpp"

namespace gphase {

enum class Species { boson, fermion };
enum class Basis { real, complex };

inline const char* to_string(Species s) { return s == Species::boson ? "boson" : "fermion"; }

// Compatible triple (Omega, G, J) of one mode sector, stored in the real
// quadrature basis xi = (q_1..q_N, p_1..p_N). Upper-index forms act on
// covectors, the *_inv members are the lower-index inverses.
struct KahlerStructure {
    int modes = 0;
    Species species = Species::boson;
    Basis basis = Basis::real;
    RealMatrix symplectic_form;      // Omega^{ab}
    RealMatrix metric;               // G^{ab}
    RealMatrix complex_structure;    // J^a_b
    RealMatrix symplectic_form_inv;  // omega_ab
    RealMatrix metric_inv;           // g_ab

    int dim() const { return 2 * modes; }
    RealMatrix identity() const { return RealMatrix::Identity(dim(), dim()); }
    // commutator form for bosons, anticommutator form for fermions
    const RealMatrix& invariant_form() const { return species == Species::boson ? symplectic_form : metric; }
};

inline RealMatrix standard_block_form(int n) {
    RealMatrix j = RealMatrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n).setIdentity();
    j.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
    return j;
}

inline KahlerStructure standard_kahler(int n, Species species) {
    if (n < 1) fail_input("invalid_argument", "mode count must be positive");
    KahlerStructure k;
    k.modes = n;
    k.species = species;
    k.symplectic_form = standard_block_form(n);
    k.metric = RealMatrix::Identity(2 * n, 2 * n);
    k.complex_structure = standard_block_form(n);
    k.symplectic_form_inv = -standard_block_form(n);
    k.metric_inv = RealMatrix::Identity(2 * n, 2 * n);
    return k;
}

// Throws when the triple violates any compatibility relation.
inline void validate_kahler(const KahlerStructure& k, Real tol = 1e-9) {
    const int d = k.dim();
    auto bad = [&](const RealMatrix& m) { return m.lpNorm<Eigen::Infinity>() > tol; };
    for (const RealMatrix* m : {&k.symplectic_form, &k.metric, &k.complex_structure, &k.symplectic_form_inv, &k.metric_inv})
        if (m->rows() != d || m->cols() != d) fail_input("dimension_mismatch", "Kahler structure has inconsistent sizes");
    const RealMatrix& O = k.symplectic_form;
    const RealMatrix& G = k.metric;
    const RealMatrix& J = k.complex_structure;
    const RealMatrix I = k.identity();
    if (bad(O + O.transpose())) fail_input("invalid_kahler", "Omega is not antisymmetric");
    if (bad(G - G.transpose())) fail_input("invalid_kahler", "G is not symmetric");
    if (bad(J * J + I)) fail_input("invalid_kahler", "J*J differs from -I");
    if (bad(J * k.invariant_form() * J.transpose() - k.invariant_form()))
        fail_input("invalid_kahler", "J does not preserve the invariant form");
    if (bad(G * k.symplectic_form_inv + J)) fail_input("invalid_kahler", "G omega differs from -J");
    if (bad(O * k.metric_inv - J)) fail_input("invalid_kahler", "Omega g differs from J");
    if (bad(O * k.symplectic_form_inv - I) || bad(G * k.metric_inv - I))
        fail_input("invalid_kahler", "lower-index forms are not inverses");
    Eigen::LLT<RealMatrix> llt(G);
    if (llt.info() != Eigen::Success) fail_input("invalid_kahler", "G is not positive-definite");
}

// Push the structure forward along a linear change of coordinates S.
// With S symplectic (bosons) or orthogonal (fermions) the invariant form is
// unchanged and only the reference state moves.
inline KahlerStructure kahler_pushforward(const KahlerStructure& k, const RealMatrix& S) {
    if (S.rows() != k.dim() || S.cols() != k.dim()) fail_input("dimension_mismatch", "transformation size");
    KahlerStructure r = k;
    RealMatrix Sinv = S.inverse();
    r.symplectic_form = S * k.symplectic_form * S.transpose();
    r.metric = S * k.metric * S.transpose();
    r.complex_structure = S * k.complex_structure * Sinv;
    r.symplectic_form_inv = Sinv.transpose() * k.symplectic_form_inv * Sinv;
    r.metric_inv = Sinv.transpose() * k.metric_inv * Sinv;
    validate_kahler(r);
    return r;
}

inline bool same_structure(const KahlerStructure& a, const KahlerStructure& b) {
    if (a.modes != b.modes || a.species != b.species) return false;
    return (a.complex_structure - b.complex_structure).lpNorm<Eigen::Infinity>() <= 1e-12 &&
           (a.invariant_form() - b.invariant_form()).lpNorm<Eigen::Infinity>() <= 1e-12;
}

// Complex-basis forms (xi_c = U xi with U = [[I, iI], [I, -iI]]/sqrt 2).
struct ComplexBasisView {
    ComplexMatrix symplectic_form, symplectic_form_inv, metric, metric_inv, complex_structure;
};

inline ComplexBasisView complex_basis_view(const KahlerStructure& k) {
    const int n = k.modes;
    const Real s = 1 / std::sqrt(2.0);
    ComplexMatrix U(2 * n, 2 * n);
    ComplexMatrix I = ComplexMatrix::Identity(n, n);
    U << s * I, Complex(0, s) * I, s * I, Complex(0, -s) * I;
    ComplexMatrix Ui = U.inverse();
    ComplexBasisView v;
    v.symplectic_form = U * k.symplectic_form.cast<Complex>() * U.transpose();
    v.metric = U * k.metric.cast<Complex>() * U.transpose();
    v.symplectic_form_inv = Ui.transpose() * k.symplectic_form_inv.cast<Complex>() * Ui;
    v.metric_inv = Ui.transpose() * k.metric_inv.cast<Complex>() * Ui;
    v.complex_structure = U * k.complex_structure.cast<Complex>() * Ui;
    return v;
}

inline void require_dim(const RealMatrix& M, const KahlerStructure& k, const char* who) {
    if (M.rows() != k.dim() || M.cols() != k.dim())
        fail_input("dimension_mismatch", std::string(who) + ": matrix is not " + std::to_string(k.dim()) + "x" +
                                             std::to_string(k.dim()));
    if (!M.allFinite()) fail_input("non_finite", std::string(who) + ": non-finite entries");
}

inline void require_dim(const PhaseSpaceVector& z, const KahlerStructure& k, const char* who) {
    if (z.size() != k.dim())
        fail_input("dimension_mismatch", std::string(who) + ": vector length is not " + std::to_string(k.dim()));
    if (!z.allFinite()) fail_input("non_finite", std::string(who) + ": non-finite entries");
}

struct GroupCheck {
    bool valid = false;
    Real residual = 0;
};

inline GroupCheck validate_group_element(const RealMatrix& M, const KahlerStructure& k, Real tol = 1e-10) {
    require_dim(M, k, "validate_group_element");
    const RealMatrix& L = k.invariant_form();
    Real r = (M * L * M.transpose() - L).lpNorm<Eigen::Infinity>();
    return {r <= tol, r};
}

struct CDSplit {
    RealMatrix C;  // commutes with J
    RealMatrix D;  // anticommutes with J
};

inline CDSplit split_cd(const RealMatrix& M, const KahlerStructure& k) {
    require_dim(M, k, "split_cd");
    const RealMatrix& J = k.complex_structure;
    RealMatrix jmj = J * M * J;
    return {(M - jmj) / 2, (M + jmj) / 2};
}

inline RealMatrix invert_checked(const RealMatrix& A, const char* who) {
    Eigen::PartialPivLU<RealMatrix> lu(A);
    if (!(lu.rcond() > 1e-14)) fail_domain("singular_matrix", std::string(who) + " is singular");
    return lu.inverse();
}

inline RealMatrix delta_map(const RealMatrix& M, const KahlerStructure& k) {
    require_dim(M, k, "delta_map");
    const RealMatrix& J = k.complex_structure;
    return -M * J * invert_checked(M, "group element") * J;
}

inline RealMatrix y_map_from_delta(const RealMatrix& delta) {
    const RealMatrix I = RealMatrix::Identity(delta.rows(), delta.cols());
    Eigen::PartialPivLU<RealMatrix> lu(I + delta);
    if (!(lu.rcond() > 1e-13)) fail_domain("singular_resolvent", "I + Delta is singular");
    // (I - D)(I + D)^-1; the two factors commute, so solve on either side
    return lu.solve(I - delta);
}

inline RealMatrix y_map(const RealMatrix& M, const KahlerStructure& k) { return y_map_from_delta(delta_map(M, k)); }

// C^-1 D, absent when C is (numerically) singular.
inline std::optional<RealMatrix> z_map(const RealMatrix& M, const KahlerStructure& k) {
    CDSplit cd = split_cd(M, k);
    Eigen::PartialPivLU<RealMatrix> lu(cd.C);
    if (!(lu.rcond() > 1e-12)) return std::nullopt;
    return lu.solve(cd.D);
}

struct DeltaMaps {
    RealMatrix delta;
    RealMatrix y;
    std::optional<RealMatrix> z;
};

inline DeltaMaps delta_y_z(const RealMatrix& M, const KahlerStructure& k) {
    DeltaMaps r;
    r.delta = delta_map(M, k);
    r.y = y_map_from_delta(r.delta);
    r.z = z_map(M, k);
    return r;
}

}  // namespace gphase
