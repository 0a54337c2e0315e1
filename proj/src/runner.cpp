#include "crjc/runner.hpp"

#include "crjc/fidelity.hpp"
#include "crjc/observables.hpp"
#include "crjc/parallel.hpp"
#include "crjc/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace crjc {

std::vector<double> TimeSeries::column(Output o) const
{
    const auto it = std::find(columns.begin(), columns.end(), o);
    if (it == columns.end())
        throw std::invalid_argument(std::string("TimeSeries: column not present: ") + output_key(o));
    const auto c = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r[c].value_or(std::numeric_limits<double>::quiet_NaN()));
    return out;
}

TimeSeries compute_timeseries(const Scenario& sc, const std::vector<double>& times,
                              const std::vector<Output>& columns)
{
    TimeSeries ts{columns, times, {}};
    ts.rows.resize(times.size());
    const QubitFieldState initial = sc.initial.state();
    const double n0 = initial.norm2();
    const auto c_obs = DiagonalObservable::excitation_c(sc.params.k);

    parallel_for(times.size(), [&](std::size_t i) {
        const double t = times[i];
        std::optional<double> n1, n2;
        auto moments = [&] {
            if (!n1) {
                n1 = expect_n_power(sc, t, 1);
                n2 = expect_n_power(sc, t, 2);
            }
        };
        auto& row = ts.rows[i];
        row.reserve(columns.size());
        for (Output o : columns) {
            switch (o) {
            case Output::inversion:
                row.emplace_back(atomic_inversion(sc, t));
                break;
            case Output::n_mean:
                moments();
                row.emplace_back(*n1);
                break;
            case Output::mandel_q:
                moments();
                row.push_back(mandel_q_from_moments(*n1, *n2));
                break;
            case Output::fidelity:
                row.emplace_back(fidelity_closed(sc, t));
                break;
            case Output::c_expectation:
                row.emplace_back(expect_diagonal_closed(sc, t, c_obs));
                break;
            case Output::norm_drift:
                row.emplace_back(std::abs(propagate_counter(initial, t, sc.params).value.norm2() - n0));
                break;
            }
        }
    });
    return ts;
}

void write_timeseries_csv(std::ostream& os, const TimeSeries& ts)
{
    os << "t";
    for (Output o : ts.columns)
        os << ',' << output_column(o);
    os << '\n';
    for (std::size_t i = 0; i < ts.times.size(); ++i) {
        os << format_double(ts.times[i]);
        for (const auto& v : ts.rows[i])
            os << ',' << (v ? format_double(*v) : std::string("nan"));
        os << '\n';
    }
}

std::string format_short(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::string> tail_warnings(const ScenarioFile& sc, const BuiltScenario& built)
{
    std::vector<std::string> w;
    if (built.tail_warning)
        w.push_back("tail mass " + format_double(built.tail_mass) + " exceeds tolerance " +
                    format_double(sc.tail_tolerance) + " at cutoff " + std::to_string(sc.cutoff) +
                    "; rerun with a larger cutoff (suggested: " + std::to_string(2 * sc.cutoff) + ")");
    return w;
}

void write_run_info(const std::filesystem::path& dir, const ScenarioFile& sc,
                    const std::vector<std::string>& warnings)
{
    std::ostringstream os;
    os << "crjc " << CRJC_VERSION << "\n";
    for (const auto& w : warnings)
        os << "warning: " << w << "\n";
    os << "\n" << emit_scenario(sc);
    write_file(dir / "run_info.txt", os.str());
}

void emit_wigner(const Scenario& sc, double t, const GridSpec& grid,
                 const std::filesystem::path& dir, RunReport& report)
{
    const auto w = wigner_closed(sc, t, grid);
    const std::string stem = "wigner_t" + format_short(t);
    std::ostringstream csv, pgm;
    write_wigner_csv(csv, w);
    write_wigner_pgm(pgm, w);
    write_file(dir / (stem + ".csv"), csv.str());
    write_file(dir / (stem + ".pgm"), pgm.str());
    report.files.push_back(dir / (stem + ".csv"));
    report.files.push_back(dir / (stem + ".pgm"));
}

} // namespace

RunReport run_scenario(const ScenarioFile& sc, const std::filesystem::path& out_dir)
{
    const auto built = build_scenario(sc);
    std::filesystem::create_directories(out_dir);
    RunReport report;
    report.tail_mass = built.tail_mass;
    report.warnings = tail_warnings(sc, built);

    if (!sc.outputs.empty()) {
        const auto ts = compute_timeseries(built.scenario, sc.time.samples(), sc.outputs);
        std::ostringstream os;
        write_timeseries_csv(os, ts);
        write_file(out_dir / "timeseries.csv", os.str());
        report.files.push_back(out_dir / "timeseries.csv");
    }
    if (sc.wigner)
        for (double t : sc.wigner->times)
            emit_wigner(built.scenario, t, sc.wigner->grid, out_dir, report);
    write_run_info(out_dir, sc, report.warnings);
    return report;
}

RunReport run_wigner(const ScenarioFile& sc, const std::vector<double>& times,
                     const GridSpec& grid, const std::filesystem::path& out_dir)
{
    grid.validate();
    if (times.empty())
        throw std::invalid_argument("wigner: no snapshot times");
    const auto built = build_scenario(sc);
    std::filesystem::create_directories(out_dir);
    RunReport report;
    report.tail_mass = built.tail_mass;
    report.warnings = tail_warnings(sc, built);
    for (double t : times)
        emit_wigner(built.scenario, t, grid, out_dir, report);
    return report;
}

ScenarioFile with_axis_value(const ScenarioFile& tmpl, const std::string& axis, double value)
{
    ScenarioFile sc = tmpl;
    auto as_int = [&] {
        if (value != std::floor(value))
            throw std::invalid_argument("axis '" + axis + "' takes integer values");
        return static_cast<int>(value);
    };
    if (axis == "delta")
        sc.params.delta = value;
    else if (axis == "g")
        sc.params.g = value;
    else if (axis == "chi")
        sc.params.chi = value;
    else if (axis == "k")
        sc.params.k = as_int();
    else if (axis == "cutoff")
        sc.cutoff = as_int();
    else if (axis == "gamma") {
        const auto open = sc.initial.find('(');
        const auto close = sc.initial.rfind(')');
        if (open == std::string::npos || close == std::string::npos)
            throw std::invalid_argument("gamma sweep: malformed initial state");
        std::string name = sc.initial.substr(0, open);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        std::vector<std::string> args;
        std::stringstream body(sc.initial.substr(open + 1, close - open - 1));
        for (std::string item; std::getline(body, item, ',');) {
            const auto b = item.find_first_not_of(" \t");
            const auto e = item.find_last_not_of(" \t");
            args.push_back(b == std::string::npos ? std::string{} : item.substr(b, e - b + 1));
        }
        const std::string g = format_double(value);
        if (name == "excited-coherent" || name == "ground-coherent")
            args = {g};
        else if (name == "superposition" && args.size() == 4)
            args[2] = args[3] = g;
        else
            throw std::invalid_argument("gamma sweep: initial state '" + sc.initial +
                                        "' has no coherent amplitude");
        std::string spec = name + "(";
        for (std::size_t i = 0; i < args.size(); ++i)
            spec += (i ? "," : "") + args[i];
        sc.initial = spec + ")";
    } else {
        throw std::invalid_argument("unknown sweep axis '" + axis +
                                    "' (expected delta, g, chi, k, gamma or cutoff)");
    }
    sc.validate();
    return sc;
}

SweepReport run_sweep(const ScenarioFile& tmpl, const std::string& axis,
                      const std::vector<double>& values, const std::filesystem::path& out_dir)
{
    if (values.empty())
        throw std::invalid_argument("sweep: no values");
    std::vector<ScenarioFile> runs;
    for (double v : values)
        runs.push_back(with_axis_value(tmpl, axis, v));
    std::filesystem::create_directories(out_dir);

    SweepReport report;
    report.points.resize(values.size());
    std::vector<RunReport> run_reports(values.size());
    parallel_for(values.size(), [&](std::size_t i) {
        ScenarioFile sc = runs[i];
        if (!sc.wants(Output::mandel_q)) {
            sc.outputs.push_back(Output::mandel_q);
            std::sort(sc.outputs.begin(), sc.outputs.end());
        }
        const auto dir = out_dir / (axis + "=" + format_short(values[i]));
        run_reports[i] = run_scenario(sc, dir);
        const auto built = build_scenario(sc);
        const auto ts = compute_timeseries(built.scenario, sc.time.samples(), {Output::mandel_q});
        const auto q = ts.column(Output::mandel_q);
        SweepPoint& pt = report.points[i];
        pt.value = values[i];
        pt.tail_mass = run_reports[i].tail_mass;
        if (q.size() >= 3)
            pt.first_q_min = first_local_min(ts.times, q);
    });

    std::ostringstream os;
    os << axis << ",first_min_t,first_min_q,tail_mass\n";
    for (const auto& pt : report.points) {
        os << format_double(pt.value) << ',';
        if (pt.first_q_min)
            os << format_double(pt.first_q_min->t) << ',' << format_double(pt.first_q_min->value);
        else
            os << ',';
        os << ',' << format_double(pt.tail_mass) << '\n';
    }
    write_file(out_dir / "summary.csv", os.str());
    for (std::size_t i = 0; i < run_reports.size(); ++i) {
        for (auto& f : run_reports[i].files)
            report.files.push_back(f);
        for (auto& w : run_reports[i].warnings)
            report.warnings.push_back(axis + "=" + format_short(values[i]) + ": " + w);
    }
    report.files.push_back(out_dir / "summary.csv");
    return report;
}

} // namespace crjc
