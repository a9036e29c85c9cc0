// bath.hpp - Exact single-excitation dynamics of two modes coupled to a finite
// oscillator bath
//
// The quadratic Hamiltonian is fixed by an N x N real symmetric coupling matrix with
// arrowhead structure: row/column 0 (mode M1) couples to M2 through G and to every
// environment oscillator through Gamma/sqrt(N-2). Diagonalizing it gives the normal
// modes, and the amplitude for the excitation to stay in M2 is sum_j P(1,j)^2 e^{-i l_j t}.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeno/eigen_symmetric.hpp"
#include "zeno/model.hpp"

namespace zeno::bath {

struct CouplingMatrix {
    Eigen::MatrixXd entries;

    Eigen::Index dimension() const { return entries.rows(); }
};

// Environment frequencies in matrix order (rows 2..N-1).
inline std::vector<double> environment_frequencies(const BathSpec& spec) {
    spec.validate();
    const std::size_t m = spec.n_environment();
    std::vector<double> freq;
    freq.reserve(m);
    if (spec.layout == BathLayout::PairedEquispaced) {
        // Interleaved +1, -1, +2, -2, ... steps of delta/(N-2); the outermost pair sits
        // at omega +/- delta/2.
        const double spacing = spec.delta / static_cast<double>(m);
        for (std::size_t j = 1; j <= m / 2; ++j) {
            freq.push_back(spec.omega + static_cast<double>(j) * spacing);
            freq.push_back(spec.omega - static_cast<double>(j) * spacing);
        }
    } else {
        // 53-bit mantissa draw from the raw engine output; std::uniform_real_distribution
        // is not reproducible across standard libraries.
        std::mt19937_64 rng(spec.seed);
        const double lo = spec.omega - 0.5 * spec.delta;
        for (std::size_t k = 0; k < m; ++k) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            freq.push_back(lo + spec.delta * u);
        }
    }
    return freq;
}

inline CouplingMatrix build_hamiltonian(const BathSpec& spec) {
    const std::vector<double> env = environment_frequencies(spec);
    const auto n = static_cast<Eigen::Index>(spec.n_total);
    const double gamma_k = spec.gamma / std::sqrt(static_cast<double>(spec.n_environment()));

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    h(0, 0) = spec.omega;
    h(1, 1) = spec.omega;
    h(0, 1) = h(1, 0) = spec.g_coupling;
    for (Eigen::Index k = 2; k < n; ++k) {
        h(k, k) = env[static_cast<std::size_t>(k - 2)];
        h(0, k) = h(k, 0) = gamma_k;
    }
    return {std::move(h)};
}

inline SpectralDecomposition eigendecompose(const CouplingMatrix& h) {
    return zeno::eigendecompose(h.entries);
}

// Weights P(1,j)^2 of mode M2 on each normal mode; they sum to one.
inline Eigen::VectorXd m2_weights(const SpectralDecomposition& sd) {
    return sd.eigenvectors.row(1).transpose().cwiseAbs2();
}

namespace detail {

inline double survival_from_weights(const Eigen::VectorXd& w, const Eigen::VectorXd& lambda, double center,
                                    double t) {
    std::complex<double> amp{0.0, 0.0};
    for (Eigen::Index j = 0; j < w.size(); ++j) amp += w(j) * std::polar(1.0, -(lambda(j) - center) * t);
    return std::norm(amp);
}

} // namespace detail

// |sum_j P(1,j)^2 e^{-i l_j t}|^2. The phases are taken relative to the M2 frequency
// (sum_j w_j l_j); the common factor drops out of the modulus.
inline double survival_probability(const SpectralDecomposition& sd, double t) {
    const Eigen::VectorXd w = m2_weights(sd);
    return detail::survival_from_weights(w, sd.eigenvalues, w.dot(sd.eigenvalues), t);
}

struct RecurrenceTime {
    double time;      // 2 pi (N-2) / delta
    bool heuristic;   // true for the random layout, where the spacing is only on average
};

inline RecurrenceTime recurrence_time(const BathSpec& spec) {
    spec.validate();
    return {2.0 * std::numbers::pi * static_cast<double>(spec.n_environment()) / spec.delta,
            spec.layout == BathLayout::RandomUniform};
}

// Samples beyond this fraction of the recurrence time are flagged in the provenance.
inline constexpr double recurrence_guard_fraction = 0.5;

inline TimeSeries survival_series(const BathSpec& spec, std::span<const double> times) {
    spec.validate();
    const SpectralDecomposition sd = eigendecompose(build_hamiltonian(spec));
    const Eigen::VectorXd w = m2_weights(sd);
    const double center = w.dot(sd.eigenvalues);

    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) {
        zeno::detail::require(t >= 0.0, "survival_series: negative time");
        values.push_back(detail::survival_from_weights(w, sd.eigenvalues, center, t));
    }

    std::string digest = spec.digest();
    const RecurrenceTime rt = recurrence_time(spec);
    if (!times.empty() && times.back() > recurrence_guard_fraction * rt.time)
        digest += ";warning=beyond-recurrence-guard(t_rec=" + zeno::detail::fmt_num(rt.time) +
                  (rt.heuristic ? ";heuristic)" : ")");
    return TimeSeries({times.begin(), times.end()}, std::move(values), EngineTag::Bath, std::move(digest));
}

inline TimeSeries survival_series(const BathSpec& spec, const TimeGrid& grid) {
    const std::vector<double> t = grid.times();
    return survival_series(spec, std::span<const double>(t));
}

} // namespace zeno::bath
