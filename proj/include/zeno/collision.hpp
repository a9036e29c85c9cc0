// collision.hpp - Repeated-interaction (collision) model: a stream of ground-state
// two-level atoms, each coupled to mode M1 for t_int and then traced out
//
// Joint Hamiltonian during one collision:
//   H = Omega (n1 + n2) + G (a1^+ a2 + a2^+ a1) + (Omega/2) sigma_z + g (a1^+ sigma_- + a1 sigma_+)
// On {|0,0,g>, |1,0,g>, |0,1,g>, |0,0,e>} the vacuum |0,0,g> only picks up a phase and the
// one-excitation block is a real symmetric 3x3 matrix with common diagonal Omega/2.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/eigen_symmetric.hpp"
#include "zeno/model.hpp"
#include "zeno/reduced_state.hpp"

namespace zeno::collision {

// Traced-out collision channel rho -> K0 rho K0^+ + K1 rho K1^+ on the mode basis.
// K0 = <g|U|g>, K1 = <e|U|g>.
struct KrausPair {
    Matrix3c k0;
    Matrix3c k1;

    // max |K0^+ K0 + K1^+ K1 - I|
    double completeness_error() const {
        return (k0.adjoint() * k0 + k1.adjoint() * k1 - Matrix3c::Identity()).cwiseAbs().maxCoeff();
    }
};

inline constexpr double completeness_tol = 1e-10;

// Joint-space basis indices used by joint_unitary().
namespace joint {
inline constexpr Eigen::Index vacuum_g = 0;  // |0,0,g>
inline constexpr Eigen::Index m1_g = 1;      // |1,0,g>
inline constexpr Eigen::Index m2_g = 2;      // |0,1,g>
inline constexpr Eigen::Index vacuum_e = 3;  // |0,0,e>
} // namespace joint

// One-excitation block in the order {|1,0,g>, |0,1,g>, |0,0,e>}.
inline Eigen::Matrix3d one_excitation_block(const CollisionSpec& spec) {
    Eigen::Matrix3d b = Eigen::Matrix3d::Identity() * (0.5 * spec.omega);
    b(0, 1) = b(1, 0) = spec.g_coupling;
    b(0, 2) = b(2, 0) = spec.g_atom;
    return b;
}

// exp(-i H t_int) on the 4-dimensional joint space.
inline Eigen::Matrix4cd joint_unitary(const CollisionSpec& spec) {
    spec.validate();
    const SpectralDecomposition sd = eigendecompose(Eigen::MatrixXd(one_excitation_block(spec)));
    Eigen::Vector3cd phases;
    for (Eigen::Index j = 0; j < 3; ++j) phases(j) = std::polar(1.0, -sd.eigenvalues(j) * spec.t_int);
    const Eigen::Matrix3cd p = sd.eigenvectors.cast<std::complex<double>>();
    const Eigen::Matrix3cd block = p * phases.asDiagonal() * p.transpose();

    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(joint::vacuum_g, joint::vacuum_g) = std::polar(1.0, 0.5 * spec.omega * spec.t_int);
    u.bottomRightCorner<3, 3>() = block;
    return u;
}

inline KrausPair collision_unitary(const CollisionSpec& spec) {
    const Eigen::Matrix4cd u = joint_unitary(spec);
    KrausPair k{Matrix3c::Zero(), Matrix3c::Zero()};

    // Atom stays in |g>: mode-space block of U.
    k.k0 = u.topLeftCorner<3, 3>();
    // Atom ends in |e>: the only |e> state reachable is |0,0,e>, so K1 maps onto |0,0>.
    for (Eigen::Index c = 0; c < 3; ++c) k.k1(basis::vacuum, c) = u(joint::vacuum_e, c);
    return k;
}

inline Matrix3c apply_channel(const Matrix3c& rho, const KrausPair& k) {
    return k.k0 * rho * k.k0.adjoint() + k.k1 * rho * k.k1.adjoint();
}

inline ReducedState apply_collision(const ReducedState& rho, const KrausPair& k) {
    const double err = k.completeness_error();
    if (err > completeness_tol)
        throw DomainError("apply_collision: Kraus pair is not trace preserving (completeness error " +
                          zeno::detail::fmt_num(err) + ")");
    return ReducedState(apply_channel(rho.matrix(), k));
}

struct Trajectory {
    TimeSeries series;
    std::vector<StateDiagnostics> diagnostics;  // one per sample, sample 0 is the initial state
};

// p(t_k) for t_k = k t_int, k = 0..n_collisions.
inline Trajectory collision_trajectory(const CollisionSpec& spec) {
    spec.validate();
    const KrausPair kraus = collision_unitary(spec);
    ReducedState rho = ReducedState::excitation_in_m2();

    const std::size_t n = spec.n_collisions;
    std::vector<double> times(n + 1), values(n + 1);
    std::vector<StateDiagnostics> diags;
    diags.reserve(n + 1);
    times[0] = 0.0;
    values[0] = rho.survival();
    diags.push_back(rho.diagnostics());
    for (std::size_t c = 1; c <= n; ++c) {
        try {
            rho = apply_collision(rho, kraus);
        } catch (const DomainError& e) {
            throw NumericalError("collision " + std::to_string(c) + ": " + e.what() + " [" + spec.digest() + "]");
        }
        times[c] = static_cast<double>(c) * spec.t_int;
        values[c] = rho.survival();
        diags.push_back(rho.diagnostics());
    }
    return {TimeSeries(std::move(times), std::move(values), EngineTag::Collision, spec.digest()), std::move(diags)};
}

inline TimeSeries collision_series(const CollisionSpec& spec) { return collision_trajectory(spec).series; }

} // namespace zeno::collision
