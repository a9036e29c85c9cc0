// reduced_state.hpp - Density matrix of the two modes restricted to zero and one
// excitation, ordered basis {|0,0>, |1,0>, |0,1>}

#pragma once

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "zeno/errors.hpp"
#include "zeno/model.hpp"

namespace zeno {

namespace basis {
inline constexpr Eigen::Index vacuum = 0;  // |0,0>
inline constexpr Eigen::Index m1 = 1;      // |1,0>, excitation in M1
inline constexpr Eigen::Index m2 = 2;      // |0,1>, excitation in M2
} // namespace basis

using Matrix3c = Eigen::Matrix3cd;

struct StateTolerance {
    double hermiticity{1e-12};
    double trace{1e-10};
    double positivity{1e-10};
};

struct StateDiagnostics {
    double hermiticity_error;  // max |rho - rho^dagger|
    double trace_error;        // |Tr rho - 1|
    double min_eigenvalue;

    bool within(const StateTolerance& tol) const {
        return hermiticity_error <= tol.hermiticity && trace_error <= tol.trace &&
               min_eigenvalue >= -tol.positivity;
    }

    std::string describe() const {
        return "hermiticity error " + detail::fmt_num(hermiticity_error) + ", trace error " +
               detail::fmt_num(trace_error) + ", min eigenvalue " + detail::fmt_num(min_eigenvalue);
    }
};

inline StateDiagnostics diagnose(const Matrix3c& rho) {
    StateDiagnostics d{};
    d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    d.trace_error = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
    const Matrix3c herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix3c> es(herm, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

class ReducedState {
public:
    // Throws DomainError when rho is not a density matrix within `tol`.
    explicit ReducedState(const Matrix3c& rho, const StateTolerance& tol = {}) : rho_(rho) {
        const StateDiagnostics d = diagnose(rho_);
        if (!d.within(tol)) throw DomainError("not a valid reduced state: " + d.describe());
    }

    static ReducedState basis_state(Eigen::Index k) {
        Matrix3c rho = Matrix3c::Zero();
        rho(k, k) = 1.0;
        return ReducedState(rho);
    }

    // Initial condition of every run: the excitation sits in M2.
    static ReducedState excitation_in_m2() { return basis_state(basis::m2); }

    const Matrix3c& matrix() const { return rho_; }
    double population(Eigen::Index k) const { return rho_(k, k).real(); }
    double survival() const { return population(basis::m2); }
    StateDiagnostics diagnostics() const { return diagnose(rho_); }

private:
    Matrix3c rho_;
};

} // namespace zeno
