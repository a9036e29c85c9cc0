// app.hpp - Command dispatch for the zeno-lab front end
//
// Commands: simulate (survival-probability series), sweep (retention table and turning
// point), compare (deviation of each engine from the master-equation closed form) and
// converge (collision model vs closed form as t_int shrinks).
// Exit status: 0 success, 1 configuration or parameter error, 2 numerical or I/O error.

#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/bath.hpp"
#include "zeno/collision.hpp"
#include "zeno/config.hpp"
#include "zeno/csv.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/model.hpp"

namespace zeno::app {

enum class Command { Simulate, Sweep, Compare, Converge };

inline std::optional<Command> command_from_string(std::string_view s) {
    if (s == "simulate") return Command::Simulate;
    if (s == "sweep") return Command::Sweep;
    if (s == "compare") return Command::Compare;
    if (s == "converge") return Command::Converge;
    return std::nullopt;
}

enum ExitCode : int { Ok = 0, ConfigFailure = 1, NumericalFailure = 2 };

namespace detail {

using config::Engine;
using config::RunConfig;
using zeno::detail::fmt_num;

// A coupling strength with the label used in file names.
struct Strength {
    double value;
    std::string label;
};

inline std::vector<Strength> etas_of(const RunConfig& c) {
    std::vector<Strength> out;
    if (c.eta) out.push_back({*c.eta, "eta" + fmt_num(*c.eta)});
    for (double e : c.etas) out.push_back({e, "eta" + fmt_num(e)});
    // For the combined engine a kappa list reads as eta = kappa / G.
    if (c.engine == Engine::All)
        for (double k : c.kappas) out.push_back({k / c.g_coupling, "eta" + fmt_num(k / c.g_coupling)});
    return out;
}

struct BathRun {
    BathSpec spec;
    std::string label;
};

inline std::vector<BathRun> bath_runs(const RunConfig& c) {
    BathSpec base;
    base.n_total = *c.n_total;
    base.omega = c.omega;
    base.g_coupling = c.g_coupling;
    base.delta = *c.delta;
    base.layout = c.layout;
    base.seed = c.seed;
    std::vector<BathRun> out;
    if (c.gamma) {
        base.gamma = *c.gamma;
        out.push_back({base, "gamma" + fmt_num(*c.gamma)});
    }
    for (const auto& s : etas_of(c)) {
        base.gamma = gamma_from_eta(s.value, base.delta, c.g_coupling);
        out.push_back({base, s.label});
    }
    for (auto& r : out) r.spec.validate();
    return out;
}

struct MasterRun {
    MasterSpec spec;
    std::string label;
};

inline std::vector<MasterRun> master_runs(const RunConfig& c) {
    std::vector<MasterRun> out;
    const auto add = [&](double kappa, std::string label) {
        out.push_back({MasterSpec{kappa, c.omega, c.g_coupling}, std::move(label)});
    };
    if (c.kappa) add(*c.kappa, "kappa" + fmt_num(*c.kappa));
    if (c.engine != Engine::All)
        for (double k : c.kappas) add(k, "kappa" + fmt_num(k));
    for (const auto& s : etas_of(c)) add(s.value * c.g_coupling, s.label);
    return out;
}

struct CollisionRun {
    CollisionSpec spec;
    std::string label;
};

inline std::vector<CollisionRun> collision_runs(const RunConfig& c) {
    CollisionSpec base;
    base.t_int = c.t_int;
    base.n_collisions = c.collision_count(c.t_int);
    base.omega = c.omega;
    base.g_coupling = c.g_coupling;
    std::vector<CollisionRun> out;
    if (c.g_atom) {
        base.g_atom = *c.g_atom;
        out.push_back({base, "g" + fmt_num(*c.g_atom)});
    }
    for (const auto& s : etas_of(c)) {
        base.g_atom = g_from_eta(s.value, c.g_coupling, c.t_int);
        out.push_back({base, s.label});
    }
    return out;
}

inline TimeSeries master_series(const RunConfig& c, const MasterSpec& spec) {
    if (c.method == config::LindbladMethod::Rk4)
        return lindblad::rk4_series(spec, c.grid, c.dt ? *c.dt : lindblad::default_step(spec));
    return lindblad::closed_form_series(spec, c.grid);
}

struct LabelledSeries {
    TimeSeries series;
    std::string label;
};

inline std::string labelled_path(const std::string& out, const std::string& label) {
    const std::filesystem::path p(out);
    const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
    return (p.parent_path() / (p.stem().string() + "_" + label + ext)).string();
}

template <class T>
void emit(const T& value, const std::optional<std::string>& path, std::ostream& out) {
    if (path) csv::write_file(*path, value);
    else csv::write(out, value);
}

inline int simulate(const RunConfig& c, const std::optional<std::string>& path, std::ostream& out) {
    std::vector<LabelledSeries> all;
    const bool combined = c.engine == Engine::All;
    if (c.engine == Engine::Bath || combined)
        for (const auto& r : bath_runs(c))
            all.push_back({bath::survival_series(r.spec, c.grid), combined ? "bath_" + r.label : r.label});
    if (c.engine == Engine::Lindblad || combined)
        for (const auto& r : master_runs(c)) {
            TimeSeries s = master_series(c, r.spec);
            const std::string tag(to_string(s.engine()));
            all.push_back({std::move(s), combined ? tag + "_" + r.label : r.label});
        }
    if (c.engine == Engine::Collision || combined)
        for (const auto& r : collision_runs(c))
            all.push_back({collision::collision_series(r.spec), combined ? "collision_" + r.label : r.label});

    if (all.size() == 1) {
        emit(all.front().series, path, out);
        return Ok;
    }
    if (!path) throw ConfigError(0, "simulate produces " + std::to_string(all.size()) +
                                        " series; set 'output' or --out to a file path");
    for (const auto& s : all) {
        const std::string p = labelled_path(*path, s.label);
        csv::write_file(p, s.series);
        out << p << '\n';
    }
    return Ok;
}

inline int sweep(const RunConfig& c, const std::optional<std::string>& path, std::ostream& out) {
    if (c.engine != Engine::Lindblad && c.engine != Engine::All)
        throw ConfigError(0, "sweep evaluates the master-equation closed form; use engine = lindblad or all");
    std::vector<double> kappas;
    for (const auto& r : master_runs(c)) kappas.push_back(r.spec.kappa);
    const analysis::SweepResult res =
        analysis::turning_point_sweep(c.g_coupling, kappas, {0.0, c.grid.t_max}, c.omega);
    emit(res, path, out);
    return Ok;
}

inline int compare(const RunConfig& c, const std::optional<std::string>& path, std::ostream& out) {
    std::vector<csv::DeviationRow> rows;
    const bool combined = c.engine == Engine::All;
    if (c.engine == Engine::Bath || combined)
        for (const auto& r : bath_runs(c)) {
            const double kappa = kappa_from_gamma(r.spec.gamma, r.spec.delta);
            const TimeSeries b = bath::survival_series(r.spec, c.grid);
            const TimeSeries ref = lindblad::closed_form_series({kappa, c.omega, c.g_coupling}, c.grid);
            rows.push_back({analysis::compare(b, ref), kappa});
        }
    if (c.engine == Engine::Lindblad || combined)
        for (const auto& r : master_runs(c)) {
            const TimeSeries num =
                lindblad::rk4_series(r.spec, c.grid, c.dt ? *c.dt : lindblad::default_step(r.spec));
            const TimeSeries ref = lindblad::closed_form_series(r.spec, c.grid);
            rows.push_back({analysis::compare(num, ref), r.spec.kappa});
        }
    if (c.engine == Engine::Collision || combined)
        for (const auto& r : collision_runs(c)) {
            const double kappa = kappa_from_collision(r.spec.g_atom, r.spec.t_int, c.kappa_convention);
            const TimeSeries col = collision::collision_series(r.spec);
            // Reference sampled on the collision boundaries: no interpolation.
            const TimeSeries ref = lindblad::closed_form_series({kappa, c.omega, c.g_coupling},
                                                                std::span<const double>(col.times()));
            rows.push_back({analysis::compare(col, ref), kappa});
        }
    emit(rows, path, out);
    return Ok;
}

inline int converge(const RunConfig& c, const std::optional<std::string>& path, std::ostream& out,
                    std::ostream& err) {
    if (c.engine != Engine::Collision && c.engine != Engine::All)
        throw ConfigError(0, "converge runs the collision model; use engine = collision or all");
    if (!c.eta) throw ConfigError(0, "converge needs a single 'eta'");
    if (c.n_collisions) throw ConfigError(0, "converge derives the collision count from t_max; drop 'n_collisions'");
    const std::vector<double> t_ints = c.t_ints.empty() ? std::vector<double>{4e-3, 2e-3, 1e-3} : c.t_ints;
    const analysis::ConvergenceResult res =
        analysis::convergence_study(*c.eta, t_ints, c.grid.t_max, c.g_coupling, c.omega);
    if (!res.monotone)
        err << "warning: collision deviation does not decrease monotonically with t_int " << c.describe() << '\n';
    emit(res, path, out);
    return Ok;
}

} // namespace detail

// Runs one command. `out_override` (the --out flag) takes precedence over the config's
// `output` key; with neither, a single result is written to `out`.
inline int run(Command cmd, const config::RunConfig& cfg, const std::optional<std::string>& out_override,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const std::optional<std::string> path = out_override ? out_override : cfg.output;
    try {
        switch (cmd) {
        case Command::Simulate: return detail::simulate(cfg, path, out);
        case Command::Sweep: return detail::sweep(cfg, path, out);
        case Command::Compare: return detail::compare(cfg, path, out);
        case Command::Converge: return detail::converge(cfg, path, out, err);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n  parameters: " << cfg.describe() << '\n';
        return ConfigFailure;
    } catch (const DomainError& e) {
        err << "parameter error: " << e.what() << "\n  parameters: " << cfg.describe() << '\n';
        return ConfigFailure;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n  parameters: " << cfg.describe() << '\n';
        return NumericalFailure;
    }
    return ConfigFailure;
}

} // namespace zeno::app
