#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gphase {

using Real = double;
using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using PhaseSpaceVector = Eigen::VectorXd;

inline constexpr Real pi = 3.14159265358979323846;

// Codes double as CLI exit statuses.
enum class ErrorCode { invalid_input = 2, numerical_domain = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string tag, const std::string& what)
        : std::runtime_error(what), code_(code), tag_(std::move(tag)) {}

    ErrorCode code() const noexcept { return code_; }
    // short machine-readable identifier, e.g. "spectrum_on_cut"
    const std::string& tag() const noexcept { return tag_; }

private:
    ErrorCode code_;
    std::string tag_;
};

[[noreturn]] inline void fail_input(const std::string& tag, const std::string& what) {
    throw Error(ErrorCode::invalid_input, tag, tag + ": " + what);
}

[[noreturn]] inline void fail_domain(const std::string& tag, const std::string& what) {
    throw Error(ErrorCode::numerical_domain, tag, tag + ": " + what);
}

// Reduce an angle to (-pi, pi].
inline Real wrap_angle(Real x) {
    Real r = std::remainder(x, 2 * pi);
    if (r <= -pi) r += 2 * pi;
    return r;
}

inline Complex unit_phase(Real angle) { return std::polar(1.0, angle); }

inline bool exactly_zero(const RealVector& v) { return (v.array() == 0.0).all(); }

inline bool exactly_identity(const RealMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

}  // namespace gphase
