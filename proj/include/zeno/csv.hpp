// csv.hpp - Deterministic CSV output for series and result tables
//
// Numbers are printed with 12 significant digits ("%.12g", C locale), lines end in LF,
// and the same input always produces the same bytes.

#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/errors.hpp"
#include "zeno/lindblad.hpp"
#include "zeno/model.hpp"

namespace zeno::csv {

using zeno::detail::fmt_num;

inline constexpr const char* series_header = "t,p,engine,params_digest";
inline constexpr const char* sweep_header = "kappa,retention,regime,kappa_star";
inline constexpr const char* deviation_header = "engine_a,engine_b,kappa,max_abs,l2,points,resampled";
inline constexpr const char* convergence_header = "t_int,g_atom,n_collisions,max_abs,l2,ratio";

inline void write(std::ostream& os, const TimeSeries& s) {
    os << series_header << '\n';
    const std::string tag(to_string(s.engine()));
    for (std::size_t i = 0; i < s.size(); ++i)
        os << fmt_num(s.times()[i]) << ',' << fmt_num(s.values()[i]) << ',' << tag << ',' << s.params_digest()
           << '\n';
}

inline void write(std::ostream& os, const analysis::SweepResult& r) {
    os << sweep_header << '\n';
    const std::string star = r.kappa_star ? fmt_num(*r.kappa_star) : "none";
    for (std::size_t i = 0; i < r.kappas.size(); ++i)
        os << fmt_num(r.kappas[i]) << ',' << fmt_num(r.retention[i]) << ',' << lindblad::to_string(r.regimes[i])
           << ',' << star << '\n';
}

// One comparison per row; `kappa` is the master-equation rate the engine was mapped to.
struct DeviationRow {
    analysis::DeviationReport report;
    double kappa;
};

inline void write(std::ostream& os, const std::vector<DeviationRow>& rows) {
    os << deviation_header << '\n';
    for (const auto& [d, kappa] : rows)
        os << to_string(d.engine_a) << ',' << to_string(d.engine_b) << ',' << fmt_num(kappa) << ','
           << fmt_num(d.max_abs) << ',' << fmt_num(d.l2) << ',' << d.grid.size() << ','
           << (d.resampled ? "true" : "false") << '\n';
}

// First row has an empty ratio field.
inline void write(std::ostream& os, const analysis::ConvergenceResult& r) {
    os << convergence_header << '\n';
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        os << fmt_num(row.t_int) << ',' << fmt_num(row.g_atom) << ',' << row.n_collisions << ','
           << fmt_num(row.max_abs) << ',' << fmt_num(row.l2) << ',';
        if (i > 0) os << fmt_num(r.rows[i - 1].max_abs / row.max_abs);
        os << '\n';
    }
}

// Writes to `path` in binary mode. I/O failure is reported as a NumericalError.
template <class T>
void write_file(const std::string& path, const T& value) {
    std::ostringstream buf;
    write(buf, value);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw NumericalError("cannot open '" + path + "' for writing");
    const std::string bytes = buf.str();
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.close();
    if (!f) throw NumericalError("failed writing '" + path + "'");
}

// A series file as read back from disk.
struct SeriesRecord {
    std::vector<double> times;
    std::vector<double> values;
    std::string engine;
    std::string params_digest;
};

inline SeriesRecord read_series(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != series_header)
        throw DomainError("series csv: missing or unexpected header");
    SeriesRecord rec;
    std::size_t n = 1;
    while (std::getline(is, line)) {
        ++n;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 4) throw DomainError("series csv: line " + std::to_string(n) + " has " +
                                                  std::to_string(fields.size()) + " fields");
        rec.times.push_back(std::stod(fields[0]));
        rec.values.push_back(std::stod(fields[1]));
        rec.engine = fields[2];
        rec.params_digest = fields[3];
    }
    return rec;
}

inline SeriesRecord read_series_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open '" + path + "'");
    return read_series(f);
}

} // namespace zeno::csv
