// config.hpp - Flat `key = value` run configuration
//
//   # bath run, three couplings
//   engine  = bath
//   n_total = 500
//   delta   = 20
//   etas    = 2, 8, 32
//
// One pair per line, `#` starts a comment, numbers may be written as fractions (1/8).
// Keys that do not apply to the selected engine are rejected, as are unknown keys,
// duplicates and values violating the engine invariants. Every error carries the line.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/model.hpp"

namespace zeno::config {

enum class Engine { Bath, Lindblad, Collision, All };
enum class LindbladMethod { Closed, Rk4 };

inline std::string_view to_string(Engine e) {
    switch (e) {
    case Engine::Bath: return "bath";
    case Engine::Lindblad: return "lindblad";
    case Engine::Collision: return "collision";
    case Engine::All: return "all";
    }
    return "unknown";
}

struct RunConfig {
    Engine engine{Engine::Lindblad};
    double g_coupling{1.0};  // fixed: the unit of frequency
    double omega{100.0};
    TimeGrid grid{};
    bool t_max_given{false};

    // bath
    std::optional<std::size_t> n_total;
    std::optional<double> delta;
    std::optional<double> gamma;
    BathLayout layout{BathLayout::PairedEquispaced};
    std::uint64_t seed{0};

    // lindblad
    std::optional<double> kappa;
    std::vector<double> kappas;
    LindbladMethod method{LindbladMethod::Closed};
    std::optional<double> dt;

    // collision
    std::optional<double> g_atom;
    double t_int{1e-3};
    std::optional<std::size_t> n_collisions;
    std::vector<double> t_ints;
    CollisionKappaConvention kappa_convention{CollisionKappaConvention::Half};

    // shared dimensionless strength: kappa = eta G
    std::optional<double> eta;
    std::vector<double> etas;

    std::optional<std::string> output;

    // Original `key = value` pairs in file order, for error reports.
    std::vector<std::pair<std::string, std::string>> entries;

    std::string describe() const {
        std::string s;
        for (const auto& [k, v] : entries) s += (s.empty() ? "" : ", ") + k + "=" + v;
        return "{" + s + "}";
    }

    // Collisions per run: explicit, else enough back-to-back collisions to reach t_max.
    std::size_t collision_count(double t_int_value) const {
        if (n_collisions) return *n_collisions;
        return static_cast<std::size_t>(std::max(1LL, std::llround(grid.t_max / t_int_value)));
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_plain_double(std::string_view s) {
    double v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// Decimal or a/b fraction.
inline std::optional<double> parse_number(std::string_view s) {
    const std::string t = trim(s);
    const auto slash = t.find('/');
    if (slash == std::string::npos) return parse_plain_double(t);
    const auto num = parse_plain_double(trim(std::string_view(t).substr(0, slash)));
    const auto den = parse_plain_double(trim(std::string_view(t).substr(slash + 1)));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
}

inline std::optional<std::uint64_t> parse_unsigned(std::string_view s) {
    const std::string t = trim(s);
    std::uint64_t v{};
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size() || t.empty()) return std::nullopt;
    return v;
}

struct Entry {
    std::string value;
    std::size_t line;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& k) const { return entries_.count(k) != 0; }
    std::size_t line(const std::string& k) const { return has(k) ? entries_.at(k).line : 0; }

    double number(const std::string& k) const {
        const Entry& e = entries_.at(k);
        const auto v = parse_number(e.value);
        if (!v) throw ConfigError(e.line, "'" + k + "' expects a number, got '" + e.value + "'");
        return *v;
    }

    std::uint64_t integer(const std::string& k) const {
        const Entry& e = entries_.at(k);
        const auto v = parse_unsigned(e.value);
        if (!v) throw ConfigError(e.line, "'" + k + "' expects a non-negative integer, got '" + e.value + "'");
        return *v;
    }

    std::vector<double> list(const std::string& k) const {
        const Entry& e = entries_.at(k);
        std::vector<double> out;
        std::string_view rest = e.value;
        while (true) {
            const auto comma = rest.find(',');
            const std::string item = trim(rest.substr(0, comma));
            const auto v = parse_number(item);
            if (!v) throw ConfigError(e.line, "'" + k + "' expects a comma-separated list of numbers, bad item '" +
                                                  item + "'");
            out.push_back(*v);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        return out;
    }

    const std::string& text(const std::string& k) const { return entries_.at(k).value; }

    void check(const std::string& k, bool ok, const std::string& what) const {
        if (!ok) throw ConfigError(line(k), "'" + k + "': " + what);
    }

private:
    std::map<std::string, Entry> entries_;
};

inline const std::set<std::string>& common_keys() {
    static const std::set<std::string> k{"engine", "omega", "t_max", "output"};
    return k;
}

inline const std::set<std::string>& engine_keys(Engine e) {
    static const std::set<std::string> bath{"n_total", "delta", "gamma", "eta", "etas", "layout", "seed", "samples"};
    static const std::set<std::string> lindblad{"kappa", "kappas", "eta", "etas", "method", "dt", "samples"};
    static const std::set<std::string> collision{"g_atom", "eta", "etas", "t_int", "n_collisions", "t_ints",
                                                 "kappa_convention"};
    static const std::set<std::string> all{"n_total", "delta", "eta", "etas", "layout", "seed", "kappas",
                                           "method", "dt", "t_int", "n_collisions", "t_ints", "samples"};
    switch (e) {
    case Engine::Bath: return bath;
    case Engine::Lindblad: return lindblad;
    case Engine::Collision: return collision;
    case Engine::All: return all;
    }
    return all;
}

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> k = [] {
        std::set<std::string> s = common_keys();
        for (Engine e : {Engine::Bath, Engine::Lindblad, Engine::Collision, Engine::All})
            s.insert(engine_keys(e).begin(), engine_keys(e).end());
        return s;
    }();
    return k;
}

} // namespace detail

inline RunConfig parse_config(std::string_view text) {
    using detail::trim;
    RunConfig cfg;
    std::map<std::string, detail::Entry> entries;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "missing key before '='");
        if (value.empty()) throw ConfigError(line_no, "missing value for '" + key + "'");
        if (!detail::known_keys().count(key)) throw ConfigError(line_no, "unknown key '" + key + "'");
        if (entries.count(key))
            throw ConfigError(line_no, "duplicate key '" + key + "' (first set on line " +
                                           std::to_string(entries.at(key).line) + ")");
        entries.emplace(key, detail::Entry{value, line_no});
        cfg.entries.emplace_back(key, value);
    }

    const detail::Reader r(entries);
    if (!r.has("engine")) throw ConfigError(0, "missing required key 'engine'");
    {
        const std::string& e = r.text("engine");
        if (e == "bath") cfg.engine = Engine::Bath;
        else if (e == "lindblad") cfg.engine = Engine::Lindblad;
        else if (e == "collision") cfg.engine = Engine::Collision;
        else if (e == "all") cfg.engine = Engine::All;
        else r.check("engine", false, "expected one of bath, lindblad, collision, all; got '" + e + "'");
    }
    for (const auto& [key, entry] : entries) {
        if (!detail::common_keys().count(key) && !detail::engine_keys(cfg.engine).count(key))
            throw ConfigError(entry.line, "key '" + key + "' does not apply to engine '" +
                                              std::string(to_string(cfg.engine)) + "'");
    }

    // Mutually exclusive ways of giving the coupling strength.
    const auto exclusive = [&](std::initializer_list<const char*> keys) {
        const char* first = nullptr;
        for (const char* k : keys) {
            if (!r.has(k)) continue;
            if (first)
                throw ConfigError(r.line(k), "'" + std::string(k) + "' and '" + first +
                                                 "' are mutually exclusive");
            first = k;
        }
    };
    exclusive({"gamma", "kappa", "kappas", "g_atom", "eta", "etas"});

    // Values and per-key invariants, in the order they constrain each other.
    if (r.has("layout")) {
        const std::string& l = r.text("layout");
        if (l == "paired-equispaced") cfg.layout = BathLayout::PairedEquispaced;
        else if (l == "random-uniform") cfg.layout = BathLayout::RandomUniform;
        else r.check("layout", false, "expected paired-equispaced or random-uniform, got '" + l + "'");
    }
    if (r.has("seed")) cfg.seed = r.integer("seed");
    if (r.has("n_total")) {
        const std::uint64_t n = r.integer("n_total");
        if (cfg.layout == BathLayout::PairedEquispaced) {
            r.check("n_total", n >= 4, "must be >= 4 for the paired-equispaced layout");
            r.check("n_total", n % 2 == 0,
                    "odd environment count: n_total - 2 = " + std::to_string(n - 2) +
                        " cannot be split into +/- pairs (paired-equispaced layout)");
        } else {
            r.check("n_total", n >= 3, "must be >= 3");
        }
        cfg.n_total = static_cast<std::size_t>(n);
    }
    if (r.has("omega")) cfg.omega = r.number("omega");
    if (r.has("delta")) {
        cfg.delta = r.number("delta");
        r.check("delta", *cfg.delta > 0.0, "must be > 0");
    }
    if (r.has("gamma")) {
        cfg.gamma = r.number("gamma");
        r.check("gamma", *cfg.gamma >= 0.0, "must be >= 0");
    }
    if (r.has("eta")) {
        cfg.eta = r.number("eta");
        r.check("eta", *cfg.eta >= 0.0, "must be >= 0");
    }
    if (r.has("etas")) {
        cfg.etas = r.list("etas");
        for (double e : cfg.etas) r.check("etas", e >= 0.0, "every value must be >= 0");
    }
    if (r.has("kappa")) {
        cfg.kappa = r.number("kappa");
        r.check("kappa", *cfg.kappa >= 0.0, "must be >= 0");
    }
    if (r.has("kappas")) {
        cfg.kappas = r.list("kappas");
        for (double k : cfg.kappas) r.check("kappas", k >= 0.0, "every value must be >= 0");
    }
    if (r.has("method")) {
        const std::string& m = r.text("method");
        if (m == "closed") cfg.method = LindbladMethod::Closed;
        else if (m == "rk4") cfg.method = LindbladMethod::Rk4;
        else r.check("method", false, "expected closed or rk4, got '" + m + "'");
    }
    if (r.has("dt")) {
        cfg.dt = r.number("dt");
        r.check("dt", *cfg.dt > 0.0, "must be > 0");
    }
    if (r.has("g_atom")) {
        cfg.g_atom = r.number("g_atom");
        r.check("g_atom", *cfg.g_atom >= 0.0, "must be >= 0");
    }
    if (r.has("t_int")) {
        cfg.t_int = r.number("t_int");
        r.check("t_int", cfg.t_int > 0.0, "must be > 0");
    }
    if (r.has("n_collisions")) {
        cfg.n_collisions = static_cast<std::size_t>(r.integer("n_collisions"));
        r.check("n_collisions", *cfg.n_collisions >= 1, "must be >= 1");
        if (r.has("t_max"))
            throw ConfigError(r.line("n_collisions"), "'n_collisions' and 't_max' both fix the run length; give one");
    }
    if (r.has("t_ints")) {
        cfg.t_ints = r.list("t_ints");
        for (double t : cfg.t_ints) r.check("t_ints", t > 0.0, "every value must be > 0");
    }
    if (r.has("kappa_convention")) {
        const std::string& c = r.text("kappa_convention");
        if (c == "half") cfg.kappa_convention = CollisionKappaConvention::Half;
        else if (c == "full") cfg.kappa_convention = CollisionKappaConvention::Full;
        else r.check("kappa_convention", false, "expected half or full, got '" + c + "'");
    }
    if (r.has("t_max")) {
        cfg.grid.t_max = r.number("t_max");
        cfg.t_max_given = true;
        r.check("t_max", cfg.grid.t_max > 0.0, "must be > 0");
    }
    if (r.has("samples")) {
        cfg.grid.samples = static_cast<std::size_t>(r.integer("samples"));
        r.check("samples", cfg.grid.samples >= 2, "must be >= 2");
    }
    if (r.has("output")) cfg.output = r.text("output");

    // Required keys per engine.
    const auto require_key = [&](const char* k) {
        if (!r.has(k))
            throw ConfigError(0, "missing required key '" + std::string(k) + "' for engine '" +
                                     std::string(to_string(cfg.engine)) + "'");
    };
    const auto require_one = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys)
            if (r.has(k)) return;
        std::string names;
        for (const char* k : keys) names += (names.empty() ? "" : ", ") + std::string(k);
        throw ConfigError(0, "engine '" + std::string(to_string(cfg.engine)) + "' needs one of: " + names);
    };
    switch (cfg.engine) {
    case Engine::Bath:
        require_key("n_total");
        require_key("delta");
        require_one({"gamma", "eta", "etas"});
        break;
    case Engine::Lindblad: require_one({"kappa", "kappas", "eta", "etas"}); break;
    case Engine::Collision: require_one({"g_atom", "eta", "etas"}); break;
    case Engine::All:
        require_key("n_total");
        require_key("delta");
        require_one({"eta", "etas", "kappas"});
        break;
    }
    return cfg;
}

} // namespace zeno::config
