#pragma once

// Run descriptions: a flat "key = value" text format with [section]
// headers. See docs/scenario-format.md for the schema.

#include "crjc/fock.hpp"
#include "crjc/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crjc {

/// Time-series columns, in CSV column order.
enum class Output { inversion, n_mean, mandel_q, fidelity, c_expectation, norm_drift };

const char* output_key(Output o);     ///< name used in scenario files
const char* output_column(Output o);  ///< CSV header name

struct TimeGrid
{
    double start = 0.0;
    double end = 10.0;
    int steps = 100;  ///< number of intervals; steps + 1 samples

    std::vector<double> samples() const;
    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct WignerRequest
{
    GridSpec grid;
    std::vector<double> times;
    friend bool operator==(const WignerRequest&, const WignerRequest&) = default;
};

struct ScenarioFile
{
    ModelParams params;
    std::string initial = "excited-coherent(2)";
    int cutoff = 350;
    double tail_tolerance = 1e-12;
    TimeGrid time;
    std::vector<Output> outputs;
    std::optional<WignerRequest> wigner;

    void validate() const;
    bool wants(Output o) const;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Errors carry "<source>:<line>: <message>".
class ScenarioError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

ScenarioFile parse_scenario(std::istream& in, const std::string& source = "<scenario>");
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);
std::string emit_scenario(const ScenarioFile& sc);

struct BuiltScenario
{
    Scenario scenario;
    double tail_mass = 0.0;
    bool tail_warning = false;
};
BuiltScenario build_scenario(const ScenarioFile& sc);

/// "re_min:re_max:n_re,im_min:im_max:n_im"
GridSpec parse_grid_spec(const std::string& text);
std::string format_grid_spec(const GridSpec& g);

/// Comma-separated numbers; an item "a:b:step" expands to a, a+step, ..., b.
std::vector<double> parse_value_list(const std::string& text);

/// %.17g
std::string format_double(double v);

} // namespace crjc
