// lindblad.hpp - Master-equation dynamics of two resonant modes, M1 damped at rate kappa
//
//   d rho/dt = kappa (2 a1 rho a1^+ - a1^+ a1 rho - rho a1^+ a1)
//              - i [Omega (n1 + n2) + G (a1^+ a2 + a2^+ a1), rho]
//
// Starting from |0,1><0,1| the dynamics never leaves {|0,0>, |1,0>, |0,1>}, so the 3x3
// reduced state is exact. Two solvers are provided: the closed-form amplitude solution
// and a fixed-step RK4 integration of the full density matrix (lab frame, Omega phases
// included). The closed form is the reference the integrator is checked against.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "zeno/model.hpp"
#include "zeno/reduced_state.hpp"

namespace zeno::lindblad {

enum class Regime { Dissipative, Critical, Zeno };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::Dissipative: return "dissipative";
    case Regime::Critical: return "critical";
    case Regime::Zeno: return "zeno";
    }
    return "unknown";
}

inline constexpr double critical_rel_tol = 1e-12;

inline bool is_critical(double kappa, double g_coupling) {
    const double turning = 2.0 * g_coupling;
    return std::abs(kappa - turning) <= critical_rel_tol * std::max(turning, kappa);
}

// Turning point between the two regimes sits at kappa = 2G.
inline Regime regime_of(const MasterSpec& spec) {
    if (is_critical(spec.kappa, spec.g_coupling)) return Regime::Critical;
    return spec.kappa < 2.0 * spec.g_coupling ? Regime::Dissipative : Regime::Zeno;
}

namespace detail {

inline double sinc(double x) {
    return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

inline double sinhc(double x) {
    return std::abs(x) < 1e-4 ? 1.0 + x * x / 6.0 : std::sinh(x) / x;
}

} // namespace detail

// Amplitude c2(t) of the excitation in M2, rotating frame. It solves
// c2'' + kappa c2' + G^2 c2 = 0 with c2(0) = 1, c2'(0) = 0.
inline double m2_amplitude(const MasterSpec& spec, double t) {
    const double k2 = 0.5 * spec.kappa;
    const double g = spec.g_coupling;
    if (is_critical(spec.kappa, g)) return std::exp(-k2 * t) * (1.0 + k2 * t);

    if (spec.kappa < 2.0 * g) {
        const double w = std::sqrt((g - k2) * (g + k2));
        return std::exp(-k2 * t) * (std::cos(w * t) + k2 * t * detail::sinc(w * t));
    }

    const double mu = std::sqrt((k2 - g) * (k2 + g));
    if (mu * t < 1e-3) return std::exp(-k2 * t) * (std::cosh(mu * t) + k2 * t * detail::sinhc(mu * t));
    // Split into the slow and fast exponentials so large kappa t does not overflow.
    // k2 - mu = G^2 / (k2 + mu) avoids cancellation.
    const double slow = (g * g) / (k2 + mu);
    const double fast = k2 + mu;
    return 0.5 * ((1.0 + k2 / mu) * std::exp(-slow * t) + (1.0 - k2 / mu) * std::exp(-fast * t));
}

inline double closed_form_p(const MasterSpec& spec, double t) {
    spec.validate();
    const double c = m2_amplitude(spec, t);
    return std::clamp(c * c, 0.0, 1.0);
}

inline TimeSeries closed_form_series(const MasterSpec& spec, std::span<const double> times) {
    spec.validate();
    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) values.push_back(closed_form_p(spec, t));
    return TimeSeries({times.begin(), times.end()}, std::move(values), EngineTag::LindbladClosed, spec.digest());
}

inline TimeSeries closed_form_series(const MasterSpec& spec, const TimeGrid& grid) {
    const std::vector<double> t = grid.times();
    return closed_form_series(spec, std::span<const double>(t));
}

// Right-hand side of the master equation on the 3x3 reduced state.
inline Matrix3c generator(const MasterSpec& spec, const Matrix3c& rho) {
    using namespace basis;
    Matrix3c h = Matrix3c::Zero();
    h(m1, m1) = spec.omega;
    h(m2, m2) = spec.omega;
    h(m1, m2) = h(m2, m1) = spec.g_coupling;

    Matrix3c a1 = Matrix3c::Zero();
    a1(vacuum, m1) = 1.0;
    Matrix3c n1 = Matrix3c::Zero();
    n1(m1, m1) = 1.0;

    const std::complex<double> i{0.0, 1.0};
    return spec.kappa * (2.0 * a1 * rho * a1.adjoint() - n1 * rho - rho * n1) - i * (h * rho - rho * h);
}

inline Matrix3c rk4_step(const MasterSpec& spec, const Matrix3c& rho, double h) {
    const Matrix3c k1 = generator(spec, rho);
    const Matrix3c k2 = generator(spec, rho + 0.5 * h * k1);
    const Matrix3c k3 = generator(spec, rho + 0.5 * h * k2);
    const Matrix3c k4 = generator(spec, rho + h * k3);
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Stiffest scale is the free phase Omega.
inline double default_step(const MasterSpec& spec) {
    const double scale = std::max({spec.g_coupling, spec.kappa, std::abs(spec.omega)});
    return scale > 0.0 ? 1e-3 / scale : 1e-3;
}

// Looser than the ReducedState type invariants; these bound accumulated error along a
// trajectory of up to ~1e6 steps.
inline constexpr StateTolerance trajectory_tolerance{1e-10, 1e-9, 1e-9};

struct Trajectory {
    TimeSeries series;
    std::vector<StateDiagnostics> diagnostics;  // one per sample
};

// Integrates from |0,1><0,1| with steps no longer than dt, landing exactly on every
// sample time. Throws NumericalError if the state drifts out of trajectory_tolerance.
inline Trajectory rk4_trajectory(const MasterSpec& spec, std::span<const double> times, double dt) {
    spec.validate();
    zeno::detail::require(dt > 0.0 && std::isfinite(dt), "rk4: dt must be > 0");
    Matrix3c rho = ReducedState::excitation_in_m2().matrix();

    std::vector<double> values;
    std::vector<StateDiagnostics> diags;
    values.reserve(times.size());
    diags.reserve(times.size());
    double t = 0.0;
    std::size_t steps = 0;
    for (double target : times) {
        zeno::detail::require(target >= t, "rk4: sample times must be non-negative and increasing");
        const double span = target - t;
        if (span > 0.0) {
            const auto n = static_cast<std::size_t>(std::ceil(span / dt * (1.0 - 1e-12)));
            const double h = span / static_cast<double>(n);
            for (std::size_t s = 0; s < n; ++s) rho = rk4_step(spec, rho, h);
            steps += n;
        }
        t = target;
        const StateDiagnostics d = diagnose(rho);
        if (!d.within(trajectory_tolerance))
            throw NumericalError("rk4: state left the physical set at t=" + zeno::detail::fmt_num(t) + " after " +
                                 std::to_string(steps) + " steps (dt=" + zeno::detail::fmt_num(dt) +
                                 "): " + d.describe() + " [" + spec.digest() + "]");
        diags.push_back(d);
        values.push_back(rho(basis::m2, basis::m2).real());
    }
    return {TimeSeries({times.begin(), times.end()}, std::move(values), EngineTag::LindbladIntegrated,
                       spec.digest() + ";dt=" + zeno::detail::fmt_num(dt)),
            std::move(diags)};
}

inline TimeSeries rk4_series(const MasterSpec& spec, std::span<const double> times, double dt) {
    return rk4_trajectory(spec, times, dt).series;
}

inline TimeSeries rk4_series(const MasterSpec& spec, const TimeGrid& grid, double dt) {
    const std::vector<double> t = grid.times();
    return rk4_series(spec, std::span<const double>(t), dt);
}

inline TimeSeries rk4_series(const MasterSpec& spec, const TimeGrid& grid) {
    return rk4_series(spec, grid, default_step(spec));
}

} // namespace zeno::lindblad
