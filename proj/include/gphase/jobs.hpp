#pragma once

// Job documents, sweeps and result documents behind the command-line tool.

#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fermion.hpp"
#include "parallel.hpp"

namespace gphase {

using Json = nlohmann::ordered_json;

struct JobOptions {
    int n_max = 80;
    Real tol = 1e-5;
    int steps = 64;
    unsigned seed = 0;
};

struct TimeGrid {
    Real t0 = 0, t1 = 10, dt = 0.05;
    std::vector<int> n_max_list{80};
};

struct GridSpec {
    Real a_min = -3, a_max = 3, c_min = -3, c_max = 3;
    int na = 61, nc = 61;
    Real rho = 1, tau = pi / 4;  // radians
    int spot_checks = 0;
    int oracle_n_max = 40;
};

struct ElementInput {
    std::optional<RealMatrix> M;
    std::optional<RealVector> z;
    std::optional<Complex> Psi;
    std::optional<RealMatrix> h;  // fermionic generator
    std::optional<RealVector> w;  // fermionic reflection prefix
};

struct JobSpec {
    Species species = Species::boson;
    int modes = 1;
    Real t = 1;
    std::vector<QuadraticHamiltonian> hamiltonians;
    std::vector<ElementInput> elements;
    TimeGrid time;
    GridSpec grid;
    JobOptions options;

    KahlerStructure kahler() const { return standard_kahler(modes, species); }
};

// ---- parsing ----

namespace jobs_detail {

inline Real number(const Json& j, const char* what) {
    if (!j.is_number()) fail_input("schema", std::string(what) + " must be a number");
    Real v = j.get<Real>();
    if (!std::isfinite(v)) fail_input("schema", std::string(what) + " must be finite");
    return v;
}

inline Real number_or(const Json& j, const char* key, Real fallback) {
    return j.contains(key) ? number(j.at(key), key) : fallback;
}

inline int integer_or(const Json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) fail_input("schema", std::string(key) + " must be an integer");
    return j.at(key).get<int>();
}

inline RealVector vector(const Json& j, int size, const char* what) {
    if (!j.is_array() || int(j.size()) != size)
        fail_input("schema", std::string(what) + " must be an array of " + std::to_string(size) + " numbers");
    RealVector v(size);
    for (int i = 0; i < size; ++i) v(i) = number(j[i], what);
    return v;
}

// nested rows or a flat row-major list
inline RealMatrix matrix(const Json& j, int size, const char* what) {
    if (!j.is_array()) fail_input("schema", std::string(what) + " must be an array");
    RealMatrix m(size, size);
    if (int(j.size()) == size * size && (j.empty() || j[0].is_number())) {
        for (int i = 0; i < size * size; ++i) m(i / size, i % size) = number(j[i], what);
        return m;
    }
    if (int(j.size()) != size) fail_input("schema", std::string(what) + " must be " + std::to_string(size) + "x" + std::to_string(size));
    for (int r = 0; r < size; ++r) m.row(r) = vector(j[r], size, what).transpose();
    return m;
}

inline Complex complex_value(const Json& j, const char* what) {
    if (j.is_array() && j.size() == 2) return {number(j[0], what), number(j[1], what)};
    if (j.is_object() && j.contains("re") && j.contains("im")) return {number(j.at("re"), what), number(j.at("im"), what)};
    if (j.is_object() && j.contains("arg")) return unit_phase(number(j.at("arg"), what));
    fail_input("schema", std::string(what) + " must be [re, im], {re, im} or {arg}");
}

}  // namespace jobs_detail

inline JobSpec parse_job(const Json& doc) {
    using namespace jobs_detail;
    if (!doc.is_object()) fail_input("schema", "job document must be an object");
    JobSpec s;
    if (doc.contains("species")) {
        std::string sp = doc.at("species").is_string() ? doc.at("species").get<std::string>() : "";
        if (sp == "boson") s.species = Species::boson;
        else if (sp == "fermion") s.species = Species::fermion;
        else fail_input("schema", "species must be \"boson\" or \"fermion\"");
    }
    s.modes = integer_or(doc, "N", 1);
    if (s.modes < 1 || s.modes > 10) fail_input("schema", "N must be between 1 and 10");
    const int d = 2 * s.modes;
    s.t = number_or(doc, "t", 1.0);
    KahlerStructure k = s.kahler();
    if (doc.contains("hamiltonians")) {
        if (!doc.at("hamiltonians").is_array()) fail_input("schema", "hamiltonians must be an array");
        for (const auto& hj : doc.at("hamiltonians")) {
            if (!hj.is_object() || !hj.contains("h")) fail_input("schema", "each hamiltonian needs h");
            QuadraticHamiltonian H;
            H.h = matrix(hj.at("h"), d, "h");
            H.f = hj.contains("f") ? vector(hj.at("f"), d, "f") : RealVector::Zero(d);
            H.c = number_or(hj, "c", 0.0);
            validate_hamiltonian(H, k);
            s.hamiltonians.push_back(H);
        }
    }
    if (doc.contains("elements")) {
        if (!doc.at("elements").is_array()) fail_input("schema", "elements must be an array");
        for (const auto& ej : doc.at("elements")) {
            if (!ej.is_object()) fail_input("schema", "each element must be an object");
            ElementInput e;
            if (ej.contains("M")) e.M = matrix(ej.at("M"), d, "M");
            if (ej.contains("z")) e.z = vector(ej.at("z"), d, "z");
            if (ej.contains("Psi")) e.Psi = complex_value(ej.at("Psi"), "Psi");
            if (ej.contains("h")) e.h = matrix(ej.at("h"), d, "h");
            if (ej.contains("w")) e.w = vector(ej.at("w"), d, "w");
            if (!e.M && !e.h) fail_input("schema", "each element needs M or h");
            s.elements.push_back(e);
        }
    }
    if (doc.contains("time")) {
        const Json& tj = doc.at("time");
        s.time.t0 = number_or(tj, "t0", s.time.t0);
        s.time.t1 = number_or(tj, "t1", s.time.t1);
        s.time.dt = number_or(tj, "dt", s.time.dt);
        if (!(s.time.dt > 0) || s.time.t1 < s.time.t0) fail_input("schema", "time grid needs dt > 0 and t1 >= t0");
        if (tj.contains("nmax")) {
            s.time.n_max_list.clear();
            for (const auto& n : tj.at("nmax")) {
                if (!n.is_number_integer() || n.get<int>() < 1) fail_input("schema", "nmax entries must be positive integers");
                s.time.n_max_list.push_back(n.get<int>());
            }
        }
    }
    if (doc.contains("grid")) {
        const Json& gj = doc.at("grid");
        GridSpec& g = s.grid;
        g.a_min = number_or(gj, "a_min", g.a_min);
        g.a_max = number_or(gj, "a_max", g.a_max);
        g.c_min = number_or(gj, "c_min", g.c_min);
        g.c_max = number_or(gj, "c_max", g.c_max);
        g.na = integer_or(gj, "na", g.na);
        g.nc = integer_or(gj, "nc", g.nc);
        g.rho = number_or(gj, "rho", g.rho);
        g.tau = number_or(gj, "tau", g.tau);
        g.spot_checks = integer_or(gj, "spot_checks", g.spot_checks);
        g.oracle_n_max = integer_or(gj, "oracle_nmax", g.oracle_n_max);
        if (g.na < 1 || g.nc < 1) fail_input("schema", "grid needs na, nc >= 1");
    }
    if (doc.contains("options")) {
        const Json& oj = doc.at("options");
        s.options.n_max = integer_or(oj, "nmax", s.options.n_max);
        s.options.tol = number_or(oj, "tol", s.options.tol);
        s.options.steps = integer_or(oj, "steps", s.options.steps);
        s.options.seed = static_cast<unsigned>(integer_or(oj, "seed", int(s.options.seed)));
    }
    return s;
}

// ---- emitting ----

inline Json to_json(const RealMatrix& m) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        a.push_back(row);
    }
    return a;
}

inline Json to_json(const RealVector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}, {"arg", std::arg(z)}}; }

inline Json to_json(const LiftedGaussian& U) {
    return Json{{"M", to_json(U.M)}, {"z", to_json(U.z)}, {"Psi", to_json(U.Psi)}};
}

inline Json document_header(const JobSpec& s, const char* command) {
    return Json{{"command", command}, {"species", to_string(s.species)}, {"N", s.modes}};
}

// Fixed-header numeric table; NaN marks an undefined cell.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Real>> rows;
};

inline std::string format_number(Real v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << "\n";
    }
}

inline Json table_json(const Table& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (Real v : row) {
            if (std::isfinite(v)) r.push_back(v);
            else r.push_back(nullptr);
        }
        rows.push_back(r);
    }
    return Json{{"header", t.header}, {"rows", rows}};
}

// ---- element resolution ----

inline LiftedGaussian element_to_gaussian(const ElementInput& e, const KahlerStructure& k) {
    if (!e.M) fail_input("schema", "bosonic elements need M");
    require_group_element(*e.M, k, "element");
    PhaseSpaceVector z = e.z ? *e.z : PhaseSpaceVector::Zero(k.dim());
    if (e.Psi) {
        if (std::abs(std::abs(*e.Psi) - 1) > 1e-10) fail_input("schema", "Psi must have unit modulus");
        return {*e.M, z, *e.Psi, k};
    }
    return ig_from_parts(0.0, z, mp_lift(*e.M, k));
}

inline std::vector<LiftedGaussian> resolve_gaussians(const JobSpec& s) {
    KahlerStructure k = s.kahler();
    std::vector<LiftedGaussian> out;
    for (const auto& e : s.elements) out.push_back(element_to_gaussian(e, k));
    if (out.empty())
        for (const auto& H : s.hamiltonians) out.push_back(lift_from_gqh(scaled(H, s.t), k, s.options.steps));
    return out;
}

// ---- single-result commands ----

inline Json run_compose(const JobSpec& s) {
    require_boson(s.kahler(), "compose");
    std::vector<LiftedGaussian> us = resolve_gaussians(s);
    if (us.empty()) fail_input("schema", "compose needs elements or hamiltonians");
    LiftedGaussian acc = us[0];
    Json zetas = Json::array();
    for (std::size_t i = 1; i < us.size(); ++i) {
        zetas.push_back(zeta_cocycle(acc.M, acc.z, us[i].M, us[i].z, acc.k));
        acc = ig_multiply(acc, us[i]);
    }
    Json doc = document_header(s, "compose");
    doc["zeta"] = zetas;
    doc["elements"] = Json::array({to_json(acc)});
    return doc;
}

inline Json run_lift(const JobSpec& s) {
    KahlerStructure k = s.kahler();
    require_boson(k, "lift");
    if (s.hamiltonians.empty()) fail_input("schema", "lift needs hamiltonians");
    Json doc = document_header(s, "lift");
    doc["t"] = s.t;
    Json elems = Json::array(), diag = Json::array();
    for (const auto& H0 : s.hamiltonians) {
        QuadraticHamiltonian H = scaled(H0, s.t);
        GaussianLift g = lift_with_diagnostics(H, k, s.options.steps);
        elems.push_back(to_json(g.U));
        Json d{{"vacuum_phase_quadratic", to_json(g.vacuum_phase_quadratic)},
               {"sigma_phase", g.sigma_phase},
               {"tracking_steps", g.tracking_steps},
               {"modulus", vacuum_modulus(g.U.M, g.U.z, k)}};
        Eigen::JacobiSVD<RealMatrix> svd(H.h);
        Real smin = svd.singularValues().minCoeff(), smax = svd.singularValues().maxCoeff();
        if (smin > 1e-6 * std::max(smax, 1e-300))
            d["z_inverse_form"] = to_json(RealVector(z_from_hf_inverse_form(H.h, linear_part(H), k)));
        diag.push_back(d);
    }
    doc["elements"] = elems;
    doc["diagnostics"] = diag;
    return doc;
}

inline Json run_phase(const JobSpec& s) {
    KahlerStructure k = s.kahler();
    if (s.hamiltonians.empty()) fail_input("schema", "phase needs hamiltonians");
    Json doc = document_header(s, "phase");
    doc["t"] = s.t;
    Json out = Json::array();
    for (const auto& H0 : s.hamiltonians) {
        QuadraticHamiltonian H = scaled(H0, s.t);
        validate_hamiltonian(H, k);
        RealMatrix K = generator_matrix(H.h, k);
        TrackedPhase tp = track_expK_phase(K, k, s.options.steps);
        Json r{{"tracked", to_json(tp.phase)}, {"tracking_steps", tp.steps}};
        if (k.species == Species::boson) {
            try {
                r["stable"] = to_json(phase_expK_stable(K, k));
            } catch (const Error& e) {
                r["stable"] = nullptr;
                r["stable_unavailable"] = e.tag();
            }
        }
        out.push_back(r);
    }
    doc["phases"] = out;
    return doc;
}

struct CheckRow {
    std::string quantity;
    Real analytic, oracle, deviation;
    bool reliable;
};

inline Json check_json(const CheckRow& c, Real tol) {
    return Json{{"quantity", c.quantity},       {"analytic", c.analytic}, {"oracle", c.oracle},
                {"deviation", c.deviation},     {"reliable", c.reliable}, {"pass", c.reliable && c.deviation <= tol}};
}

// Returns the document; "pass" is false when any comparison misses tol.
inline Json run_verify(const JobSpec& s) {
    KahlerStructure k = s.kahler();
    require_boson(k, "verify");
    if (s.hamiltonians.empty() || s.hamiltonians.size() > 2) fail_input("schema", "verify needs one or two hamiltonians");
    FockRep rep = build_fock(s.modes, s.options.n_max);
    std::vector<CheckRow> rows;
    std::vector<LiftedGaussian> lifts;
    for (std::size_t i = 0; i < s.hamiltonians.size(); ++i) {
        QuadraticHamiltonian H = scaled(s.hamiltonians[i], s.t);
        LiftedGaussian U = lift_from_gqh(H, k, s.options.steps);
        lifts.push_back(U);
        OracleAmplitude o = vacuum_amplitude_gqh(H, 1.0, rep);
        std::string tag = "U" + std::to_string(i + 1);
        Real pa = std::arg(std::conj(U.Psi)), po = std::arg(o.value);
        rows.push_back({tag + " phase", pa, po, std::abs(wrap_angle(pa - po)), o.reliable});
        Real ma = vacuum_modulus(U.M, U.z, k), mo = std::abs(o.value);
        rows.push_back({tag + " modulus", ma, mo, std::abs(ma - mo), o.reliable});
    }
    if (s.hamiltonians.size() == 2) {
        PairSample p = PairOracle(s.hamiltonians[0], s.hamiltonians[1], rep).at(s.t);
        Real za = zeta_cocycle(lifts[0].M, lifts[0].z, lifts[1].M, lifts[1].z, k);
        rows.push_back({"zeta", wrap_angle(za), p.zeta, p.defined ? std::abs(wrap_angle(za - p.zeta)) : INFINITY, p.reliable});
        Real na = number_expectation_analytic(s.hamiltonians[0], s.hamiltonians[1], s.t, k);
        rows.push_back({"N", na, p.number, std::abs(na - p.number), p.reliable});
    }
    Json doc = document_header(s, "verify");
    doc["t"] = s.t;
    doc["nmax"] = s.options.n_max;
    doc["tol"] = s.options.tol;
    Json checks = Json::array();
    bool pass = true;
    for (const auto& r : rows) {
        Json c = check_json(r, s.options.tol);
        pass = pass && c["pass"].get<bool>();
        checks.push_back(c);
    }
    doc["checks"] = checks;
    doc["pass"] = pass;
    return doc;
}

// Fermionic elements U = (w.xi) e^{K^} (w optional) or bare matrices M.
inline Json run_fermion(const JobSpec& s) {
    KahlerStructure k = s.kahler();
    require_fermion(k, "fermion");
    if (s.elements.empty()) fail_input("schema", "fermion needs elements");
    ReflectionVector ref = reference_reflection(k);
    std::optional<MajoranaRep> rep;
    if (s.modes <= 5) rep = build_majorana(s.modes);
    Json doc = document_header(s, "fermion");
    doc["reference_w"] = to_json(ref.w);
    Json out = Json::array();
    bool pass = true;
    for (const auto& e : s.elements) {
        Json r;
        RealMatrix M;
        std::optional<ReflectionVector> w;
        if (e.w) w = make_reflection_vector(*e.w, k, true);
        if (e.h) {
            RealMatrix K = generator_matrix(*e.h, k);
            if ((*e.h + e.h->transpose()).lpNorm<Eigen::Infinity>() > 1e-12) fail_input("invalid_hamiltonian", "fermionic h must be antisymmetric");
            M = mat_exp(K);
            if (w) M = mw_reflection(*w, k) * M;
            // signed Pin phase of (w_ref.xi)^[reflected] U
            LiftedSymplectic lift = fermion_generator_lift(K, k);
            if (w) lift = mp_multiply(reflection_pair_lift(ref, *w, k), lift);
            Complex analytic = reference_phase(lift.psi, Species::fermion);
            r["pin_phase"] = to_json(analytic);
            if (rep) {
                ComplexMatrix op = mat_exp(majorana_quadratic(*e.h, *rep));
                if (w) op = majorana_linear(ref.w, *rep) * majorana_linear(w->w, *rep) * op;
                Complex amp = vacuum_amplitude(op, *rep);
                Real dev = std::abs(analytic - amp / std::abs(amp));
                r["oracle_phase"] = to_json(amp / std::abs(amp));
                r["deviation"] = dev;
                r["pass"] = dev <= s.options.tol;
                pass = pass && dev <= s.options.tol;
            }
        } else {
            M = *e.M;
            if (w) M = mw_reflection(*w, k) * M;
        }
        r["M"] = to_json(M);
        r["det"] = M.determinant();
        r["component_phase"] = to_json(pin_component_phase(M, ref, k));
        out.push_back(r);
    }
    doc["results"] = out;
    doc["pass"] = pass;
    return doc;
}

// ---- sweeps ----

inline std::vector<Real> time_points(const TimeGrid& g) {
    std::vector<Real> ts;
    const long n = std::lround(std::floor((g.t1 - g.t0) / g.dt + 1e-9));
    for (long i = 0; i <= n; ++i) ts.push_back(g.t0 + Real(i) * g.dt);
    return ts;
}

// Unreliable once the state's excitation, from the oracle or the exact value,
// exceeds half the cutoff: truncated <N> saturates as soon as truncation bites.
inline Table run_sweep_time(const JobSpec& s) {
    KahlerStructure k = s.kahler();
    require_boson(k, "sweep-time");
    if (s.hamiltonians.size() != 2) fail_input("schema", "sweep-time needs exactly two hamiltonians");
    const auto& H1 = s.hamiltonians[0];
    const auto& H2 = s.hamiltonians[1];
    std::vector<Real> ts = time_points(s.time);
    std::vector<FockRep> reps;
    for (int n : s.time.n_max_list) reps.push_back(build_fock(s.modes, n));
    std::vector<PairOracle> oracles;
    for (const auto& rep : reps) oracles.emplace_back(H1, H2, rep);

    Table t;
    t.header = {"t", "zeta_analytic"};
    for (int n : s.time.n_max_list) t.header.push_back("zeta_numeric_n" + std::to_string(n));
    t.header.push_back("N_analytic");
    for (int n : s.time.n_max_list) t.header.push_back("N_numeric_n" + std::to_string(n));
    for (int n : s.time.n_max_list) t.header.push_back("reliable_n" + std::to_string(n));
    t.rows.resize(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
        const Real tt = ts[i];
        LiftedGaussian U1 = lift_from_gqh(scaled(H1, tt), k, s.options.steps);
        LiftedGaussian U2 = lift_from_gqh(scaled(H2, tt), k, s.options.steps);
        Real za = wrap_angle(zeta_cocycle(U1.M, U1.z, U2.M, U2.z, k));
        Real na = number_expectation_analytic(H1, H2, tt, k);
        std::vector<PairSample> ps;
        for (const auto& o : oracles) ps.push_back(o.at(tt));
        std::vector<Real>& row = t.rows[i];
        row.push_back(tt);
        row.push_back(za);
        for (const auto& p : ps) row.push_back(p.zeta);
        row.push_back(na);
        for (const auto& p : ps) row.push_back(p.number);
        for (std::size_t j = 0; j < ps.size(); ++j)
            row.push_back(std::max(ps[j].max_excitation, na) <= 0.5 * reps[j].n_max ? 1.0 : 0.0);
    });
    return t;
}

// Hamiltonian with e^{-iH} = e^{K^ + f^} for K = aX + cZ, f = rho (cos tau, sin tau).
inline QuadraticHamiltonian grid_hamiltonian(Real a, Real c, Real rho, Real tau) {
    KahlerStructure k = standard_kahler(1, Species::boson);
    RealMatrix K(2, 2);
    K << 0, a + c, a - c, 0;
    RealVector f(2);
    f << rho * std::cos(tau), rho * std::sin(tau);
    return {hamiltonian_matrix(K, k), f, 0.0};
}

struct OracleConvergence {
    Complex value = 1.0;
    int n_max = 0;
    bool reliable = false;
};

// Grow the cutoff by 1.5x until the amplitude settles and the flag is clear.
inline OracleConvergence converged_vacuum_amplitude(const QuadraticHamiltonian& H, int modes, int n_start,
                                                    Real settle = 1e-9) {
    int n = std::max(n_start, 4);
    std::optional<Complex> prev;
    OracleConvergence r;
    for (;;) {
        Eigen::Index dim = 1;
        for (int j = 0; j < modes; ++j) dim *= (n + 1);
        if (dim > fock_size_limit) break;
        FockRep rep = build_fock(modes, n);
        OracleAmplitude a = vacuum_amplitude_gqh(H, 1.0, rep);
        r = {a.value, n, false};
        if (prev && a.reliable && std::abs(a.value - *prev) < settle) {
            r.reliable = true;
            return r;
        }
        prev = a.value;
        n = int(std::ceil(n * 1.5));
    }
    return r;
}

inline Table run_sweep_grid(const JobSpec& s) {
    const GridSpec& g = s.grid;
    if (s.species != Species::boson || s.modes != 1) fail_input("schema", "sweep-grid is a single bosonic mode job");
    KahlerStructure k = s.kahler();
    auto axis = [](Real lo, Real hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * Real(i) / Real(n - 1); };
    const std::size_t cells = std::size_t(g.na) * std::size_t(g.nc);
    std::vector<char> spot(cells, 0);
    if (g.spot_checks > 0) {
        std::mt19937_64 rng(s.options.seed);
        std::vector<std::size_t> idx(cells);
        for (std::size_t i = 0; i < cells; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int i = 0; i < std::min<int>(g.spot_checks, int(cells)); ++i) spot[idx[i]] = 1;
    }
    Table t;
    t.header = {"a", "c", "arg", "modulus", "status", "oracle_arg", "oracle_modulus", "oracle_nmax", "oracle_reliable"};
    t.rows.resize(cells);
    parallel_for(cells, [&](std::size_t i) {
        Real c = axis(g.c_min, g.c_max, g.nc, int(i / g.na));
        Real a = axis(g.a_min, g.a_max, g.na, int(i % g.na));
        QuadraticHamiltonian H = grid_hamiltonian(a, c, g.rho, g.tau);
        const Real nan = std::nan("");
        std::vector<Real> row{a, c, nan, nan, 0, nan, nan, nan, nan};
        try {
            LiftedGaussian U = lift_from_gqh(H, k, s.options.steps);
            row[2] = std::arg(std::conj(U.Psi));
            row[3] = vacuum_modulus(U.M, U.z, k);
        } catch (const Error& e) {
            row[4] = e.code() == ErrorCode::numerical_domain ? 1 : 2;
        }
        if (spot[i]) {
            OracleConvergence o = converged_vacuum_amplitude(H, 1, g.oracle_n_max);
            row[5] = std::arg(o.value);
            row[6] = std::abs(o.value);
            row[7] = o.n_max;
            row[8] = o.reliable ? 1 : 0;
        }
        t.rows[i] = row;
    });
    return t;
}

}  // namespace gphase
