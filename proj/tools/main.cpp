#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gphase/jobs.hpp"

using namespace gphase;

namespace {

// "0.785" is radians, "45deg" is degrees; anything else is rejected.
Real parse_angle(const std::string& text) {
    std::string body = text;
    bool degrees = false;
    if (body.size() > 3 && body.compare(body.size() - 3, 3, "deg") == 0) {
        degrees = true;
        body.resize(body.size() - 3);
    }
    std::size_t used = 0;
    Real v = 0;
    try {
        v = std::stod(body, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != body.size()) fail_input("invalid_angle", "cannot read angle '" + text + "'");
    return degrees ? v * pi / 180 : v;
}

Json read_document(const std::string& path) {
    std::stringstream buf;
    if (path.empty() || path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) fail_input("io", "cannot open " + path);
        buf << in.rdbuf();
    }
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        fail_input("schema", std::string("invalid JSON: ") + e.what());
    }
}

struct Overrides {
    std::string input;
    std::string out;
    std::string format;
    std::optional<int> n_max, steps;
    std::optional<Real> tol, t;
    std::optional<unsigned> seed;
    std::optional<std::string> rho, tau;
};

void apply(const Overrides& o, JobSpec& s) {
    if (o.n_max) {
        s.options.n_max = *o.n_max;
        s.time.n_max_list = {*o.n_max};
        s.grid.oracle_n_max = *o.n_max;
    }
    if (o.steps) s.options.steps = *o.steps;
    if (o.tol) s.options.tol = *o.tol;
    if (o.seed) s.options.seed = *o.seed;
    if (o.t) s.t = *o.t;
    if (o.rho) s.grid.rho = std::stod(*o.rho);
    if (o.tau) s.grid.tau = parse_angle(*o.tau);
}

int emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(out);
    if (!f) fail_input("io", "cannot write " + out);
    f << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-lifted inhomogeneous Gaussian unitaries"};
    app.require_subcommand(1);
    Overrides o;
    const char* names[][2] = {
        {"compose", "multiply lifted elements (M, z, Psi)"},
        {"lift", "lift Hamiltonians (h, f, c) at time t"},
        {"phase", "vacuum phase of e^{K^} by tracking and the stable closed form"},
        {"verify", "compare analytic results with the truncated Fock oracle"},
        {"sweep-time", "zeta(t) and <N>(t) for two Hamiltonians"},
        {"sweep-grid", "phase and modulus of <J|e^{K^+f^}|J> over K = aX + cZ"},
        {"fermion", "Pin-component phases of fermionic elements"},
    };
    for (auto& n : names) {
        CLI::App* sub = app.add_subcommand(n[0], n[1]);
        sub->add_option("input", o.input, "job document (JSON), '-' for stdin");
        sub->add_option("--nmax", o.n_max, "Fock cutoff");
        sub->add_option("--tol", o.tol, "verification tolerance");
        sub->add_option("--steps", o.steps, "initial branch-tracking steps");
        sub->add_option("--seed", o.seed, "seed for sampled spot checks");
        sub->add_option("--t", o.t, "evolution time");
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        if (std::string(n[0]) == "sweep-grid") {
            sub->add_option("--rho", o.rho, "displacement magnitude");
            sub->add_option("--tau", o.tau, "displacement angle, radians or with a 'deg' suffix");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        JobSpec s = parse_job(read_document(o.input));
        apply(o, s);
        const bool sweep = cmd == "sweep-time" || cmd == "sweep-grid";
        const std::string format = o.format.empty() ? (sweep ? "csv" : "json") : o.format;
        if (sweep) {
            Table t = cmd == "sweep-time" ? run_sweep_time(s) : run_sweep_grid(s);
            std::ostringstream os;
            if (format == "csv") write_csv(t, os);
            else os << table_json(t).dump(2) << "\n";
            return emit(os.str(), o.out);
        }
        if (format == "csv") fail_input("invalid_argument", cmd + " produces a JSON document");
        Json doc;
        if (cmd == "compose") doc = run_compose(s);
        else if (cmd == "lift") doc = run_lift(s);
        else if (cmd == "phase") doc = run_phase(s);
        else if (cmd == "verify") doc = run_verify(s);
        else doc = run_fermion(s);
        emit(doc.dump(2) + "\n", o.out);
        if (doc.contains("pass") && !doc["pass"].get<bool>()) return 1;
        return 0;
    } catch (const Error& e) {
        std::cerr << Json{{"error", e.tag()}, {"message", e.what()}}.dump() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::invalid_argument& e) {
        std::cerr << Json{{"error", "invalid_argument"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
}
