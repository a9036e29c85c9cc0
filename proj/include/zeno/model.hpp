// model.hpp - Domain types shared by the three engines and the analytic maps between
// the bath coupling Gamma, the damping rate kappa and the atom coupling g.
//
// Units: the mode-mode coupling G sets the scale. Every frequency and rate is quoted
// in units of G and every time in units of 1/G, so the reference values read directly
// (omega = 100, delta = 20, kappa = 2, ...).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

namespace detail {

// Shortest round-trippable-at-12-digits decimal form, locale independent.
inline std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

} // namespace detail

enum class BathLayout { PairedEquispaced, RandomUniform };

inline std::string_view to_string(BathLayout l) {
    return l == BathLayout::PairedEquispaced ? "paired-equispaced" : "random-uniform";
}

// Finite oscillator bath: two resonant modes M1, M2 plus n_total - 2 environment
// oscillators that couple to M1 only.
struct BathSpec {
    std::size_t n_total{500};   // oscillators including M1 and M2
    double omega{100.0};        // common mode frequency
    double g_coupling{1.0};     // M1-M2 coupling; 0 is allowed for the decoupled limit
    double delta{20.0};         // environment bandwidth
    double gamma{0.0};          // collective environment coupling
    BathLayout layout{BathLayout::PairedEquispaced};
    std::uint64_t seed{0};      // random-uniform layout only

    std::size_t n_environment() const { return n_total - 2; }

    void validate() const {
        if (layout == BathLayout::PairedEquispaced) {
            detail::require(n_total >= 4, "n_total must be >= 4 for the paired-equispaced layout");
            detail::require(n_total % 2 == 0,
                            "odd environment count: n_total - 2 = " + std::to_string(n_total - 2) +
                                " cannot be split into +/- pairs");
        } else {
            detail::require(n_total >= 3, "n_total must be >= 3 (at least one environment oscillator)");
        }
        detail::require(std::isfinite(omega), "omega must be finite");
        detail::require(delta > 0.0 && std::isfinite(delta), "delta must be > 0");
        detail::require(gamma >= 0.0 && std::isfinite(gamma), "gamma must be >= 0");
        detail::require(g_coupling >= 0.0 && std::isfinite(g_coupling), "g_coupling must be >= 0");
    }

    std::string digest() const {
        std::string d = "N=" + std::to_string(n_total) + ";omega=" + detail::fmt_num(omega) +
                        ";G=" + detail::fmt_num(g_coupling) + ";delta=" + detail::fmt_num(delta) +
                        ";gamma=" + detail::fmt_num(gamma) + ";layout=" + std::string(to_string(layout));
        if (layout == BathLayout::RandomUniform) d += ";seed=" + std::to_string(seed);
        return d;
    }
};

// Master equation for the two modes with amplitude damping kappa on M1.
struct MasterSpec {
    double kappa{2.0};
    double omega{100.0};
    double g_coupling{1.0};

    void validate() const {
        detail::require(kappa >= 0.0 && std::isfinite(kappa), "kappa must be >= 0");
        detail::require(g_coupling >= 0.0 && std::isfinite(g_coupling), "g_coupling must be >= 0");
        detail::require(std::isfinite(omega), "omega must be finite");
    }

    std::string digest() const {
        return "kappa=" + detail::fmt_num(kappa) + ";omega=" + detail::fmt_num(omega) +
               ";G=" + detail::fmt_num(g_coupling);
    }
};

// Repeated-interaction protocol: n_collisions ground-state atoms, each coupled to M1
// for t_int, back to back.
struct CollisionSpec {
    double g_atom{20.0};
    double t_int{1e-3};
    std::size_t n_collisions{5000};
    double omega{100.0};
    double g_coupling{1.0};

    double total_time() const { return static_cast<double>(n_collisions) * t_int; }

    void validate() const {
        detail::require(g_atom >= 0.0 && std::isfinite(g_atom), "g_atom must be >= 0");
        detail::require(t_int > 0.0 && std::isfinite(t_int), "t_int must be > 0");
        detail::require(n_collisions >= 1, "n_collisions must be >= 1");
        detail::require(g_coupling >= 0.0 && std::isfinite(g_coupling), "g_coupling must be >= 0");
        detail::require(std::isfinite(omega), "omega must be finite");
    }

    std::string digest() const {
        return "g=" + detail::fmt_num(g_atom) + ";t_int=" + detail::fmt_num(t_int) +
               ";n_collisions=" + std::to_string(n_collisions) + ";omega=" + detail::fmt_num(omega) +
               ";G=" + detail::fmt_num(g_coupling);
    }
};

// Uniform sampling of [0, t_max] with `samples` points, both ends included.
struct TimeGrid {
    double t_max{5.0};
    std::size_t samples{500};

    void validate() const {
        detail::require(t_max > 0.0 && std::isfinite(t_max), "t_max must be > 0");
        detail::require(samples >= 2, "samples must be >= 2");
    }

    std::vector<double> times() const {
        validate();
        std::vector<double> t(samples);
        const double step = t_max / static_cast<double>(samples - 1);
        for (std::size_t i = 0; i < samples; ++i) t[i] = step * static_cast<double>(i);
        t.back() = t_max;
        return t;
    }
};

enum class EngineTag { Bath, LindbladClosed, LindbladIntegrated, Collision };

inline std::string_view to_string(EngineTag e) {
    switch (e) {
    case EngineTag::Bath: return "bath";
    case EngineTag::LindbladClosed: return "lindblad-closed";
    case EngineTag::LindbladIntegrated: return "lindblad-integrated";
    case EngineTag::Collision: return "collision";
    }
    return "unknown";
}

inline EngineTag engine_tag_from_string(std::string_view s) {
    if (s == "bath") return EngineTag::Bath;
    if (s == "lindblad-closed") return EngineTag::LindbladClosed;
    if (s == "lindblad-integrated") return EngineTag::LindbladIntegrated;
    if (s == "collision") return EngineTag::Collision;
    throw DomainError("unknown engine tag '" + std::string(s) + "'");
}

// Sampled survival probability of the excitation in M2.
class TimeSeries {
public:
    // Values within 1e-9 of [0, 1] are clamped (round-off of |sum|^2); anything further
    // out is a domain error.
    TimeSeries(std::vector<double> times, std::vector<double> values, EngineTag engine,
               std::string params_digest)
        : times_(std::move(times)), values_(std::move(values)), engine_(engine),
          digest_(std::move(params_digest)) {
        detail::require(times_.size() == values_.size(), "time series: times and values differ in length");
        for (std::size_t i = 1; i < times_.size(); ++i)
            detail::require(times_[i] > times_[i - 1], "time series: times must be strictly increasing");
        for (double& v : values_) {
            detail::require(std::isfinite(v) && v >= -1e-9 && v <= 1.0 + 1e-9,
                            "time series: probability " + detail::fmt_num(v) + " outside [0,1]");
            v = std::clamp(v, 0.0, 1.0);
        }
    }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    EngineTag engine() const { return engine_; }
    const std::string& params_digest() const { return digest_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }

private:
    std::vector<double> times_;
    std::vector<double> values_;
    EngineTag engine_;
    std::string digest_;
};

// ---------------------------------------------------------------------------------
// Parameter maps between the three pictures.

// Markov limit of the finite bath: kappa = pi Gamma^2 / Delta.
inline double kappa_from_gamma(double gamma, double delta) {
    detail::require(delta > 0.0, "kappa_from_gamma: delta must be > 0");
    detail::require(gamma >= 0.0, "kappa_from_gamma: gamma must be >= 0");
    return std::numbers::pi * gamma * gamma / delta;
}

inline double gamma_from_kappa(double kappa, double delta) {
    detail::require(delta > 0.0, "gamma_from_kappa: delta must be > 0");
    detail::require(kappa >= 0.0, "gamma_from_kappa: kappa must be >= 0");
    return std::sqrt(kappa * delta / std::numbers::pi);
}

// Bath coupling giving kappa = eta * G.
inline double gamma_from_eta(double eta, double delta, double g_coupling = 1.0) {
    detail::require(eta >= 0.0, "gamma_from_eta: eta must be >= 0");
    detail::require(delta > 0.0, "gamma_from_eta: delta must be > 0");
    detail::require(g_coupling > 0.0, "gamma_from_eta: g_coupling must be > 0");
    return std::sqrt(eta * delta * g_coupling / std::numbers::pi);
}

// Atom coupling giving kappa = eta * G for collisions of length t_int (g ~ 1/sqrt(t_int)).
inline double g_from_eta(double eta, double g_coupling, double t_int) {
    detail::require(eta >= 0.0, "g_from_eta: eta must be >= 0");
    detail::require(t_int > 0.0, "g_from_eta: t_int must be > 0");
    return std::sqrt(2.0 * eta * g_coupling / t_int);
}

// Which effective rate the collision coupling maps to. Half (g^2 t_int / 2) matches the
// amplitude-damping convention of the master equation; Full (g^2 t_int) is kept for exploration.
enum class CollisionKappaConvention { Half, Full };

inline double kappa_from_collision(double g_atom, double t_int,
                                   CollisionKappaConvention convention = CollisionKappaConvention::Half) {
    detail::require(g_atom >= 0.0, "kappa_from_collision: g_atom must be >= 0");
    detail::require(t_int > 0.0, "kappa_from_collision: t_int must be > 0");
    const double k = g_atom * g_atom * t_int;
    return convention == CollisionKappaConvention::Half ? 0.5 * k : k;
}

} // namespace zeno
