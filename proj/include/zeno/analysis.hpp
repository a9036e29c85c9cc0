// analysis.hpp - Cross-engine deviations, excitation retention, the regime sweep and
// the collision-model convergence study

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zeno/collision.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/model.hpp"

namespace zeno::analysis {

// Linear interpolation of a series at t inside its time range.
inline double interpolate(const TimeSeries& s, double t) {
    const auto& ts = s.times();
    const auto& ps = s.values();
    zeno::detail::require(!ts.empty() && t >= ts.front() && t <= ts.back(),
                          "interpolate: t=" + zeno::detail::fmt_num(t) + " outside the series range");
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    const auto i = static_cast<std::size_t>(it - ts.begin());
    if (ts[i] == t) return ps[i];
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return (1.0 - w) * ps[i - 1] + w * ps[i];
}

struct DeviationReport {
    double max_abs{0.0};
    double l2{0.0};              // root-mean-square deviation over `grid`
    std::vector<double> grid;
    EngineTag engine_a{};
    EngineTag engine_b{};
    bool resampled{false};       // true when the input grids differed and both were interpolated
};

// Deviation of two series over their common time range. Identical grids are compared
// pointwise; otherwise both are interpolated onto the union of their sample times inside
// the overlap, which keeps the report symmetric in (a, b).
inline DeviationReport compare(const TimeSeries& a, const TimeSeries& b) {
    zeno::detail::require(!a.empty() && !b.empty(), "compare: empty series");
    const double lo = std::max(a.times().front(), b.times().front());
    const double hi = std::min(a.times().back(), b.times().back());
    zeno::detail::require(lo <= hi, "compare: series time ranges are disjoint");

    DeviationReport r;
    r.engine_a = a.engine();
    r.engine_b = b.engine();
    std::vector<double> pa, pb;
    if (a.times() == b.times()) {
        r.grid = a.times();
        pa = a.values();
        pb = b.values();
    } else {
        r.resampled = true;
        for (const auto* s : {&a, &b})
            for (double t : s->times())
                if (t >= lo && t <= hi) r.grid.push_back(t);
        std::sort(r.grid.begin(), r.grid.end());
        r.grid.erase(std::unique(r.grid.begin(), r.grid.end()), r.grid.end());
        for (double t : r.grid) {
            pa.push_back(interpolate(a, t));
            pb.push_back(interpolate(b, t));
        }
    }

    double sq = 0.0;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        const double d = std::abs(pa[i] - pb[i]);
        r.max_abs = std::max(r.max_abs, d);
        sq += d * d;
    }
    r.l2 = std::sqrt(sq / static_cast<double>(r.grid.size()));
    return r;
}

struct Window {
    double t0{0.0};
    double t1{5.0};
};

// Time average of p over the window, trapezoidal rule on the samples (window edges are
// interpolated when they fall between samples).
inline double retention(const TimeSeries& s, Window w) {
    zeno::detail::require(w.t1 > w.t0, "retention: empty window [" + zeno::detail::fmt_num(w.t0) + ", " +
                                           zeno::detail::fmt_num(w.t1) + "]");
    zeno::detail::require(!s.empty() && w.t0 >= s.times().front() && w.t1 <= s.times().back(),
                          "retention: window outside the series range");
    std::vector<double> ts{w.t0};
    std::vector<double> ps{interpolate(s, w.t0)};
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.times()[i] > w.t0 && s.times()[i] < w.t1) {
            ts.push_back(s.times()[i]);
            ps.push_back(s.values()[i]);
        }
    }
    ts.push_back(w.t1);
    ps.push_back(interpolate(s, w.t1));

    double area = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) area += 0.5 * (ps[i] + ps[i - 1]) * (ts[i] - ts[i - 1]);
    return area / (w.t1 - w.t0);
}

struct SweepResult {
    std::vector<double> kappas;
    std::vector<double> retention;
    std::vector<lindblad::Regime> regimes;
    std::optional<double> kappa_star;  // empty when the metric has no interior minimum
};

// Sample count of the closed-form series each retention value is computed from.
inline constexpr std::size_t sweep_samples = 2001;

// Retention of the closed-form survival probability for each kappa. The turning point
// estimate kappa* is the vertex of the parabola through the discrete minimum and its
// two neighbours (in kappa).
inline SweepResult turning_point_sweep(double g_coupling, std::span<const double> kappas, Window window,
                                       double omega = 100.0) {
    zeno::detail::require(kappas.size() >= 5, "turning_point_sweep: need at least 5 kappa values");
    for (std::size_t i = 1; i < kappas.size(); ++i)
        zeno::detail::require(kappas[i] > kappas[i - 1], "turning_point_sweep: kappas must be strictly increasing");
    zeno::detail::require(kappas.front() < 2.0 * g_coupling && kappas.back() > 2.0 * g_coupling,
                          "turning_point_sweep: kappas must span both sides of 2G");
    zeno::detail::require(window.t1 > window.t0 && window.t0 >= 0.0, "turning_point_sweep: invalid window");

    std::vector<double> times(sweep_samples);
    for (std::size_t i = 0; i < sweep_samples; ++i)
        times[i] = window.t0 + (window.t1 - window.t0) * static_cast<double>(i) / static_cast<double>(sweep_samples - 1);
    times.back() = window.t1;

    SweepResult r;
    r.kappas.assign(kappas.begin(), kappas.end());
    for (double k : kappas) {
        const MasterSpec spec{k, omega, g_coupling};
        r.retention.push_back(retention(lindblad::closed_form_series(spec, std::span<const double>(times)), window));
        r.regimes.push_back(lindblad::regime_of(spec));
    }

    const auto imin = static_cast<std::size_t>(
        std::min_element(r.retention.begin(), r.retention.end()) - r.retention.begin());
    if (imin == 0 || imin + 1 == r.retention.size()) return r;

    const double x0 = r.kappas[imin - 1], x1 = r.kappas[imin], x2 = r.kappas[imin + 1];
    const double y0 = r.retention[imin - 1], y1 = r.retention[imin], y2 = r.retention[imin + 1];
    const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
    const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    r.kappa_star = den != 0.0 ? x1 - 0.5 * num / den : x1;
    return r;
}

struct ConvergenceRow {
    double t_int;
    double g_atom;
    std::size_t n_collisions;
    double max_abs;
    double l2;
};

struct ConvergenceResult {
    double eta;
    std::vector<ConvergenceRow> rows;
    bool monotone{true};  // false flags a non-decreasing deviation (an implementation bug)

    std::vector<double> ratios() const {
        std::vector<double> out;
        for (std::size_t i = 1; i < rows.size(); ++i) out.push_back(rows[i - 1].max_abs / rows[i].max_abs);
        return out;
    }
};

// For each t_int: collision series at g = g_from_eta(eta, G, t_int) over [0, t_max],
// compared against the closed form at kappa = eta G on the collision boundaries.
inline ConvergenceResult convergence_study(double eta, std::span<const double> t_ints, double t_max = 5.0,
                                           double g_coupling = 1.0, double omega = 100.0) {
    zeno::detail::require(t_ints.size() >= 3, "convergence_study: need at least 3 interaction times");
    for (std::size_t i = 1; i < t_ints.size(); ++i)
        zeno::detail::require(t_ints[i] < t_ints[i - 1], "convergence_study: t_ints must be strictly decreasing");
    zeno::detail::require(t_max > 0.0, "convergence_study: t_max must be > 0");

    ConvergenceResult res{eta, {}, true};
    const MasterSpec master{eta * g_coupling, omega, g_coupling};
    for (double t_int : t_ints) {
        CollisionSpec spec;
        spec.t_int = t_int;
        spec.g_atom = g_from_eta(eta, g_coupling, t_int);
        spec.n_collisions = static_cast<std::size_t>(std::llround(t_max / t_int));
        spec.omega = omega;
        spec.g_coupling = g_coupling;
        const TimeSeries coll = collision::collision_series(spec);
        const TimeSeries ref = lindblad::closed_form_series(master, std::span<const double>(coll.times()));
        const DeviationReport d = compare(coll, ref);
        res.rows.push_back({t_int, spec.g_atom, spec.n_collisions, d.max_abs, d.l2});
    }
    for (std::size_t i = 1; i < res.rows.size(); ++i)
        if (!(res.rows[i].max_abs < res.rows[i - 1].max_abs)) res.monotone = false;
    return res;
}

} // namespace zeno::analysis
