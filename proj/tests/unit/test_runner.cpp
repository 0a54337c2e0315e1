#include "crjc/runner.hpp"

#include "doctest.h"

#include <fstream>
#include <sstream>

using namespace crjc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("crjc-test-" + name);
    fs::remove_all(dir);
    return dir;
}

ScenarioFile small()
{
    return parse_scenario_text(R"([model]
k = 2
g = 0.1
[initial]
state = excited-coherent(2)
cutoff = 60
[time]
end = 20
steps = 40
[outputs]
series = inversion, n_mean, mandel_q, fidelity, c_expectation, norm_drift
)");
}

} // namespace

TEST_CASE("time series file")
{
    const auto dir = scratch("series");
    const auto report = run_scenario(small(), dir);
    const std::string csv = slurp(dir / "timeseries.csv");
    CHECK(csv.rfind("t,sigma_z,n_mean,mandel_q,fidelity,c_expect,norm_drift\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 42);
    const auto row0 = csv.find("\n0,1,");
    REQUIRE(row0 != std::string::npos);
    CHECK(std::stod(csv.substr(row0 + 5)) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(fs::exists(dir / "run_info.txt"));
    CHECK(report.warnings.empty());

    auto only = small();
    only.outputs = {Output::fidelity};
    run_scenario(only, dir);
    CHECK(slurp(dir / "timeseries.csv").rfind("t,fidelity\n", 0) == 0);
}

TEST_CASE("identical runs produce identical bytes")
{
    auto sc = small();
    sc.wigner = WignerRequest{parse_grid_spec("-3:3:9,-3:3:9"), {0.0, 2.5}};
    const auto a = scratch("det-a"), b = scratch("det-b");
    run_scenario(sc, a);
    run_scenario(sc, b);
    for (const char* f : {"timeseries.csv", "wigner_t0.csv", "wigner_t2.5.pgm", "run_info.txt"})
        CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("undefined values and warnings")
{
    auto sc = small();
    sc.initial = "fock(g, 0)";
    sc.outputs = {Output::mandel_q};
    const auto dir = scratch("nan");
    run_scenario(sc, dir);
    CHECK(slurp(dir / "timeseries.csv").find("\n0,nan\n") != std::string::npos);

    auto tight = small();
    tight.initial = "excited-coherent(4)";
    tight.cutoff = 20;
    const auto r = run_scenario(tight, scratch("tail"));
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("larger cutoff") != std::string::npos);
}

TEST_CASE("sweep axes")
{
    const auto base = small();
    CHECK(with_axis_value(base, "gamma", 3.5).initial == "excited-coherent(3.5)");
    CHECK(with_axis_value(base, "k", 3).params.k == 3);
    CHECK(with_axis_value(base, "chi", 0.5).params.chi == 0.5);
    auto sup = base;
    sup.initial = "superposition(1, 1, 2, 2)";
    CHECK(with_axis_value(sup, "gamma", 3).initial == "superposition(1,1,3,3)");
    auto fock = base;
    fock.initial = "fock(e, 2)";
    CHECK_THROWS(with_axis_value(fock, "gamma", 3));
    CHECK_THROWS(with_axis_value(base, "k", 1.5));
    CHECK_THROWS(with_axis_value(base, "omega", 1));
}

TEST_CASE("sweep")
{
    auto sc = small();
    sc.time = TimeGrid{0.0, 3.0, 300};
    sc.outputs = {Output::inversion};
    const auto dir = scratch("sweep");
    const auto r = run_sweep(sc, "gamma", parse_value_list("2:2.4:0.2"), dir);
    REQUIRE(r.points.size() == 3);
    for (const auto& pt : r.points) {
        REQUIRE(pt.first_q_min);
        CHECK(pt.first_q_min->value < 0.0);
    }
    CHECK(fs::exists(dir / "gamma=2.2" / "timeseries.csv"));
    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind("gamma,first_min_t,first_min_q,tail_mass\n", 0) == 0);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 4);

    SUBCASE("single value equals a plain run")
    {
        const auto one = scratch("sweep-one"), plain = scratch("plain");
        run_sweep(sc, "gamma", {2.0}, one);
        auto direct = with_axis_value(sc, "gamma", 2.0);
        direct.outputs = {Output::inversion, Output::mandel_q};
        run_scenario(direct, plain);
        CHECK(slurp(one / "gamma=2" / "timeseries.csv") == slurp(plain / "timeseries.csv"));
    }
}

TEST_CASE("wigner snapshots")
{
    const auto dir = scratch("wigner");
    const auto r = run_wigner(small(), {0.0, 1.5}, parse_grid_spec("-3:3:5,-3:3:5"), dir);
    CHECK(r.files.size() == 4);
    CHECK(fs::exists(dir / "wigner_t1.5.pgm"));
    CHECK(slurp(dir / "wigner_t0.csv").rfind("re,im,W\n", 0) == 0);
    CHECK_THROWS(run_wigner(small(), {}, parse_grid_spec("-3:3:5,-3:3:5"), dir));
}
