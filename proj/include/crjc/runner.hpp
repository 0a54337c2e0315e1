#pragma once

// Simulation drivers behind the command-line tool: time series, Wigner
// snapshots and parameter sweeps, written as deterministic data files.

#include "crjc/observables.hpp"
#include "crjc/phase_space.hpp"
#include "crjc/scenario_file.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace crjc {

struct TimeSeries
{
    std::vector<Output> columns;
    std::vector<double> times;
    /// rows[i][c] for times[i], columns[c]; empty optional = undefined value
    std::vector<std::vector<std::optional<double>>> rows;

    std::vector<double> column(Output o) const;  ///< undefined entries as NaN
};

TimeSeries compute_timeseries(const Scenario& sc, const std::vector<double>& times,
                              const std::vector<Output>& columns);

/// Header "t,<columns...>", 17 significant digits, "nan" for undefined.
void write_timeseries_csv(std::ostream& os, const TimeSeries& ts);

struct RunReport
{
    std::vector<std::filesystem::path> files;
    double tail_mass = 0.0;
    std::vector<std::string> warnings;
};

/// Writes timeseries.csv (when series outputs are requested), Wigner
/// snapshots, and the run_info.txt sidecar into out_dir.
RunReport run_scenario(const ScenarioFile& sc, const std::filesystem::path& out_dir);

/// wigner_t<time>.csv and .pgm for each time.
RunReport run_wigner(const ScenarioFile& sc, const std::vector<double>& times,
                     const GridSpec& grid, const std::filesystem::path& out_dir);

/// Sweepable axes: delta, g, chi, k, gamma, cutoff.
ScenarioFile with_axis_value(const ScenarioFile& tmpl, const std::string& axis, double value);

struct SweepPoint
{
    double value;
    std::optional<LocalMin> first_q_min;
    double tail_mass = 0.0;
};

struct SweepReport
{
    std::vector<SweepPoint> points;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
};

/// One run per value in <out_dir>/<axis>=<value>/, evaluated concurrently,
/// plus summary.csv with the first local minimum of the Mandel Q series.
SweepReport run_sweep(const ScenarioFile& tmpl, const std::string& axis,
                      const std::vector<double>& values, const std::filesystem::path& out_dir);

/// Output file name fragment for a number ("2.1", "11", "0.04").
std::string format_short(double v);

} // namespace crjc
