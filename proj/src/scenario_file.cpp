#include "crjc/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace crjc {

namespace {

constexpr Output all_outputs[] = {Output::inversion,     Output::n_mean,     Output::mandel_q,
                                  Output::fidelity,      Output::c_expectation, Output::norm_drift};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        parts.push_back(trim(item));
    return parts;
}

double to_number(const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("expected a number, got '" + text + "'");
    }
    if (used != text.size())
        throw std::invalid_argument("expected a number, got '" + text + "'");
    return v;
}

int to_int(const std::string& text)
{
    const double v = to_number(text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw std::invalid_argument("expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

// Splits at commas that are not nested inside parentheses.
std::vector<std::string> split_top_level(const std::string& s)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(')
            ++depth;
        if (ch == ')')
            --depth;
        if (ch == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty() || !parts.empty())
        parts.push_back(trim(cur));
    return parts;
}

} // namespace

const char* output_key(Output o)
{
    switch (o) {
    case Output::inversion: return "inversion";
    case Output::n_mean: return "n_mean";
    case Output::mandel_q: return "mandel_q";
    case Output::fidelity: return "fidelity";
    case Output::c_expectation: return "c_expectation";
    case Output::norm_drift: return "norm_drift";
    }
    return "?";
}

const char* output_column(Output o)
{
    switch (o) {
    case Output::inversion: return "sigma_z";
    case Output::n_mean: return "n_mean";
    case Output::mandel_q: return "mandel_q";
    case Output::fidelity: return "fidelity";
    case Output::c_expectation: return "c_expect";
    case Output::norm_drift: return "norm_drift";
    }
    return "?";
}

std::vector<double> TimeGrid::samples() const
{
    std::vector<double> t(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i)
        t[static_cast<std::size_t>(i)] = i == steps ? end : start + (end - start) * i / steps;
    return t;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

GridSpec parse_grid_spec(const std::string& text)
{
    const auto axes = split(text, ',');
    if (axes.size() != 2)
        throw std::invalid_argument("grid '" + text + "': expected re_min:re_max:n_re,im_min:im_max:n_im");
    GridSpec g;
    for (int a = 0; a < 2; ++a) {
        const auto f = split(axes[static_cast<std::size_t>(a)], ':');
        if (f.size() != 3)
            throw std::invalid_argument("grid '" + text + "': each axis is min:max:count");
        (a == 0 ? g.re_min : g.im_min) = to_number(f[0]);
        (a == 0 ? g.re_max : g.im_max) = to_number(f[1]);
        (a == 0 ? g.n_re : g.n_im) = to_int(f[2]);
    }
    g.validate();
    return g;
}

std::string format_grid_spec(const GridSpec& g)
{
    return format_double(g.re_min) + ":" + format_double(g.re_max) + ":" + std::to_string(g.n_re) +
           "," + format_double(g.im_min) + ":" + format_double(g.im_max) + ":" +
           std::to_string(g.n_im);
}

std::vector<double> parse_value_list(const std::string& text)
{
    std::vector<double> values;
    for (const auto& item : split(text, ',')) {
        if (item.empty())
            continue;
        const auto f = split(item, ':');
        if (f.size() == 1) {
            values.push_back(to_number(f[0]));
        } else if (f.size() == 3) {
            const double a = to_number(f[0]), b = to_number(f[1]), step = to_number(f[2]);
            if (!(step > 0.0) || b < a)
                throw std::invalid_argument("range '" + item + "': need a <= b and step > 0");
            const long count = std::lround((b - a) / step);
            for (long i = 0; i <= count; ++i)
                values.push_back(i == count ? b : a + static_cast<double>(i) * step);
        } else {
            throw std::invalid_argument("value '" + item + "': expected x or a:b:step");
        }
    }
    if (values.empty())
        throw std::invalid_argument("empty value list");
    return values;
}

bool ScenarioFile::wants(Output o) const
{
    return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

void ScenarioFile::validate() const
{
    params.validate();
    if (cutoff < 2 * params.k + 2)
        throw std::invalid_argument("cutoff must be >= 2k + 2");
    if (!(time.start <= time.end))
        throw std::invalid_argument("time: start must not exceed end");
    if (time.steps < 1)
        throw std::invalid_argument("time: steps must be >= 1");
    if (outputs.empty() && !wigner)
        throw std::invalid_argument("no outputs requested");
    if (wigner) {
        wigner->grid.validate();
        if (wigner->times.empty())
            throw std::invalid_argument("wigner: no snapshot times");
    }
    if (!(tail_tolerance > 0.0))
        throw std::invalid_argument("tail_tolerance must be positive");
}

ScenarioFile parse_scenario(std::istream& in, const std::string& source)
{
    ScenarioFile sc;
    std::string section;
    std::string line;
    int line_no = 0;
    std::optional<GridSpec> grid;
    std::optional<std::vector<double>> wigner_times;
    std::map<std::string, int> seen;

    auto fail = [&](const std::string& msg) {
        throw ScenarioError(source + ":" + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty())
            continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                fail("unterminated section header");
            section = trim(body.substr(1, body.size() - 2));
            if (section != "model" && section != "initial" && section != "time" &&
                section != "outputs")
                fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            fail("expected 'key = value'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (section.empty())
            fail("key '" + key + "' outside of a section");
        const std::string full = section + "." + key;
        if (seen.count(full))
            fail("duplicate key '" + key + "' (first on line " + std::to_string(seen[full]) + ")");
        seen[full] = line_no;

        try {
            if (full == "model.delta")
                sc.params.delta = to_number(value);
            else if (full == "model.g")
                sc.params.g = to_number(value);
            else if (full == "model.chi")
                sc.params.chi = to_number(value);
            else if (full == "model.k")
                sc.params.k = to_int(value);
            else if (full == "model.F")
                sc.params.F = DiagonalFn::parse(value);
            else if (full == "model.G")
                sc.params.G = DiagonalFn::parse(value);
            else if (full == "model.f")
                sc.params.f = DiagonalFn::parse(value);
            else if (full == "initial.state")
                sc.initial = value;
            else if (full == "initial.cutoff")
                sc.cutoff = to_int(value);
            else if (full == "initial.tail_tolerance")
                sc.tail_tolerance = to_number(value);
            else if (full == "time.start")
                sc.time.start = to_number(value);
            else if (full == "time.end")
                sc.time.end = to_number(value);
            else if (full == "time.steps")
                sc.time.steps = to_int(value);
            else if (full == "outputs.series") {
                for (const auto& item : split_top_level(value)) {
                    auto it = std::find_if(std::begin(all_outputs), std::end(all_outputs),
                                           [&](Output o) { return item == output_key(o); });
                    if (it == std::end(all_outputs))
                        fail("unknown output '" + item + "'");
                    if (!sc.wants(*it))
                        sc.outputs.push_back(*it);
                }
                std::sort(sc.outputs.begin(), sc.outputs.end());
            } else if (full == "outputs.wigner_times")
                wigner_times = parse_value_list(value);
            else if (full == "outputs.wigner_grid")
                grid = parse_grid_spec(value);
            else
                fail("unknown key '" + key + "' in [" + section + "]");
        } catch (const ScenarioError&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("field '") + key + "': " + e.what());
        }
    }

    if (grid.has_value() != wigner_times.has_value())
        throw ScenarioError(source + ": wigner_times and wigner_grid must be given together");
    if (grid)
        sc.wigner = WignerRequest{*grid, *wigner_times};
    try {
        sc.validate();
    } catch (const std::exception& e) {
        throw ScenarioError(source + ": " + e.what());
    }
    return sc;
}

ScenarioFile parse_scenario_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_scenario(in);
}

ScenarioFile load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ScenarioError(path.string() + ": cannot open");
    return parse_scenario(in, path.string());
}

std::string emit_scenario(const ScenarioFile& sc)
{
    std::ostringstream os;
    os << "[model]\n";
    os << "delta = " << format_double(sc.params.delta) << "\n";
    os << "g = " << format_double(sc.params.g) << "\n";
    os << "chi = " << format_double(sc.params.chi) << "\n";
    os << "k = " << sc.params.k << "\n";
    if (sc.params.F)
        os << "F = " << sc.params.F->to_string() << "\n";
    if (sc.params.G)
        os << "G = " << sc.params.G->to_string() << "\n";
    if (sc.params.f)
        os << "f = " << sc.params.f->to_string() << "\n";
    os << "\n[initial]\n";
    os << "state = " << sc.initial << "\n";
    os << "cutoff = " << sc.cutoff << "\n";
    os << "tail_tolerance = " << format_double(sc.tail_tolerance) << "\n";
    os << "\n[time]\n";
    os << "start = " << format_double(sc.time.start) << "\n";
    os << "end = " << format_double(sc.time.end) << "\n";
    os << "steps = " << sc.time.steps << "\n";
    os << "\n[outputs]\n";
    if (!sc.outputs.empty()) {
        os << "series = ";
        for (std::size_t i = 0; i < sc.outputs.size(); ++i)
            os << (i ? ", " : "") << output_key(sc.outputs[i]);
        os << "\n";
    }
    if (sc.wigner) {
        os << "wigner_times = ";
        for (std::size_t i = 0; i < sc.wigner->times.size(); ++i)
            os << (i ? ", " : "") << format_double(sc.wigner->times[i]);
        os << "\n";
        os << "wigner_grid = " << format_grid_spec(sc.wigner->grid) << "\n";
    }
    return os.str();
}

BuiltScenario build_scenario(const ScenarioFile& sc)
{
    sc.validate();
    auto parsed = parse_initial_spec(sc.initial, sc.cutoff, sc.params.k, sc.tail_tolerance);
    return BuiltScenario{Scenario{sc.params, std::move(parsed.condition)}, parsed.tail_mass,
                         parsed.tail_warning};
}

} // namespace crjc
