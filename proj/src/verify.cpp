#include "crjc/verify.hpp"

#include "crjc/fidelity.hpp"
#include "crjc/observables.hpp"
#include "crjc/oracle.hpp"
#include "crjc/phase_space.hpp"
#include "crjc/propagator.hpp"
#include "crjc/scenario.hpp"

#include "hp_reference.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace crjc {

namespace {

struct GridPoint
{
    ModelParams params;
    std::string label;
};

std::string label_of(const ModelParams& p)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "k=%d chi=%g delta=%g g=%g", p.k, p.chi, p.delta, p.g);
    return buf;
}

std::vector<GridPoint> parameter_grid(VerifyLevel level)
{
    const bool full = level == VerifyLevel::full;
    const std::vector<int> ks = full ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2};
    const std::vector<double> chis = full ? std::vector<double>{0.0, 0.1, 0.5}
                                          : std::vector<double>{0.0, 0.5};
    const std::vector<double> deltas{0.0, 0.2};
    const std::vector<double> gs = full ? std::vector<double>{0.05, 0.1} : std::vector<double>{0.1};
    std::vector<GridPoint> grid;
    for (int k : ks)
        for (double chi : chis)
            for (double delta : deltas)
                for (double g : gs) {
                    ModelParams p;
                    p.k = k;
                    p.chi = chi;
                    p.delta = delta;
                    p.g = g;
                    grid.push_back({p, label_of(p)});
                }
    return grid;
}

Scenario coherent_scenario(const ModelParams& p, int cutoff, double gamma)
{
    char spec[64];
    std::snprintf(spec, sizeof spec, "excited-coherent(%.17g)", gamma);
    return Scenario{p, parse_initial_spec(spec, cutoff, p.k).condition};
}

class Recorder
{
public:
    explicit Recorder(VerifyReport& r) : report_(r) {}

    void add(const std::string& name, const std::string& component, double tol, double observed)
    {
        report_.checks.push_back({name, component, tol, observed, std::isfinite(observed) && observed < tol});
    }

private:
    VerifyReport& report_;
};

void check_propagators(const VerifyOptions& opts, int N, Recorder& rec)
{
    const std::vector<double> times = opts.level == VerifyLevel::full
                                          ? std::vector<double>{1.0, 5.0, 20.0}
                                          : std::vector<double>{1.0, 5.0};
    for (const auto& gp : parameter_grid(opts.level)) {
        const ModelParams& p = gp.params;
        const auto sc = coherent_scenario(p, N, 2.0);
        const auto psi0 = sc.initial.state();

        rec.add("build_H", gp.label + " hermiticity", 1e-12, hermiticity_residual(build_H(p, N)));
        rec.add("intertwining_residual", gp.label + " guard=2k", 1e-10,
                intertwining_residual(p, N, 2 * p.k));

        const EigenPropagator counter(build_H(p, N));
        const EigenPropagator rotating(build_H0_shifted_kerr(p, N));
        for (double t : times) {
            auto u = counter_propagator(p, N, t);
            if (opts.flip_g_sign) {
                for (auto& w : u.e_from_g)
                    w = -w;
                for (auto& w : u.g_from_e)
                    w = -w;
            }
            const auto closed = u.apply(psi0).value;
            const auto reference = counter.evolve(psi0, t);
            char comp[32];
            std::snprintf(comp, sizeof comp, " t=%g", t);
            rec.add("propagate_counter", gp.label + comp, 1e-8,
                    phase_align(reference, closed).second);

            const auto closed_rot = propagate_rotating(psi0, t, p).value;
            rec.add("propagate_rotating", gp.label + comp, 1e-8,
                    phase_align(rotating.evolve(psi0, t), closed_rot).second);
        }
    }
}

ModelParams two_photon_params()
{
    ModelParams p;
    p.k = 2;
    p.g = 0.1;
    return p;
}

void check_observables(int N, Recorder& rec)
{
    const auto sc = coherent_scenario(two_photon_params(), N, std::sqrt(14.0));
    const auto psi0 = sc.initial.state();
    const auto sz = DiagonalObservable::sigma_z();
    const auto n1 = DiagonalObservable::n_power(1);
    const auto n2 = DiagonalObservable::n_power(2);
    const auto c = DiagonalObservable::excitation_c(sc.params.k);
    const double c0 = expect_diagonal_direct(psi0, c);

    double d_sz = 0, d_n1 = 0, d_n2 = 0, d_q = 0, drift = 0;
    for (int i = 0; i < 25; ++i) {
        const double t = 2.0 * i;
        const auto psi = propagate_counter(psi0, t, sc.params).value;
        d_sz = std::max(d_sz, std::abs(atomic_inversion(sc, t) - expect_diagonal_direct(psi, sz)));
        const double a1 = expect_n_power(sc, t, 1), a2 = expect_n_power(sc, t, 2);
        const double b1 = expect_diagonal_direct(psi, n1), b2 = expect_diagonal_direct(psi, n2);
        d_n1 = std::max(d_n1, std::abs(a1 - b1));
        d_n2 = std::max(d_n2, std::abs(a2 - b2) / std::max(1.0, std::abs(b2)));
        d_q = std::max(d_q, std::abs(*mandel_q_from_moments(a1, a2) - *mandel_q_from_moments(b1, b2)));
        drift = std::max(drift, std::abs(expect_diagonal_closed(sc, t, c) - c0));
    }
    rec.add("atomic_inversion", "closed vs direct", 1e-10, d_sz);
    rec.add("expect_n_power", "n closed vs direct", 1e-10, d_n1);
    rec.add("expect_n_power", "n^2 closed vs direct (relative)", 1e-10, d_n2);
    rec.add("mandel_q", "closed vs direct", 1e-10, d_q);
    rec.add("constant_of_motion", "<C> drift", 1e-8, drift);
}

void check_fidelity(int N, Recorder& rec)
{
    ModelParams p;
    p.k = 1;
    p.chi = 0.5;
    p.g = 0.1;
    const auto sc = coherent_scenario(p, N, 3.1);
    const auto psi0 = sc.initial.state();
    double diff = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double t = 3.0 * i;
        const auto rho = reduced_density(propagate_counter(psi0, t, p).value);
        diff = std::max(diff, std::abs(fidelity_closed(sc, t) - fidelity_pure_vs_state(sc.initial.field(), rho)));
    }
    rec.add("fidelity_closed", "vs reduced-density route", 1e-10, diff);
    rec.add("fidelity_closed", "F(0) = 1", 1e-12, std::abs(fidelity_closed(sc, 0.0) - 1.0));
}

void check_special_functions(Recorder& rec)
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> idx(0, 60);
    double sym = 0.0;
    for (int i = 0; i < 200; ++i) {
        const cplx alpha = std::polar(6.0 * std::sqrt(uni(rng)), 2.0 * std::numbers::pi * uni(rng));
        const int n = idx(rng), s = idx(rng);
        const cplx ref = reference::mu(alpha, n, s);
        const double scale = std::max(std::abs(ref), 1e-300);
        sym = std::max(sym, std::abs(mu(alpha, n, s) - ref) / scale);
        sym = std::max(sym, std::abs(mu(alpha, n, s) - std::conj(mu(-alpha, s, n))) / scale);
    }
    rec.add("mu", "200 random cases vs 50-digit reference", 1e-10, sym);

    double lag = 0.0;
    for (int s = 0; s <= 12; ++s)
        for (int a = -s; a <= 12; ++a)
            for (double x : {0.5, 2.0, 10.0}) {
                const double ref = static_cast<double>(reference::laguerre(s, a, x));
                lag = std::max(lag, std::abs(assoc_laguerre(s, a, x) - ref) / std::max(std::abs(ref), 1.0));
            }
    rec.add("assoc_laguerre", "recurrence vs series", 1e-10, lag);

    double fr = 0.0;
    for (long n = 0; n < 60; ++n)
        for (int k = 1; k <= 4; ++k)
            fr = std::max(fr, std::abs(factorial_ratio(n + 1, k) / factorial_ratio(n, k) -
                                       double(n + 1 + k) / double(n + 1)));
    rec.add("factorial_ratio", "(n+1+k)/(n+1) recurrence", 1e-10, fr);

    double unit = 0.0;
    ModelParams p;
    p.g = 0.1;
    p.chi = 0.3;
    p.delta = 0.2;
    for (int k = 1; k <= 3; ++k) {
        p.k = k;
        for (long n = -k; n < 40; ++n)
            for (double t : {0.0, 0.7, 13.0, 111.0}) {
                const auto e = efg(n, t, p);
                const double weight = n >= 0 ? factorial_ratio(n, k) : 0.0;
                unit = std::max(unit, std::abs(std::norm(e.F) + weight * std::norm(e.G) - 1.0));
            }
    }
    rec.add("efg", "|F|^2 + (n+k)!/n! |G|^2 = 1", 1e-10, unit);

    double jump = 0.0;
    for (double omega : {0.5, 2.0, 7.0}) {
        const double edge = 1e-4 / omega;
        jump = std::max(jump, std::abs(sin_over_omega(omega, std::nextafter(edge, 0.0)) -
                                       sin_over_omega(omega, std::nextafter(edge, 1.0))));
    }
    rec.add("sin_over_omega", "continuity at |omega t| = 1e-4", 1e-12, jump);
}

void check_wigner(VerifyLevel level, int N, Recorder& rec)
{
    ModelParams p;
    p.k = 3;
    p.g = 0.1;
    const double gamma = 3.1;
    const auto sc = coherent_scenario(p, N, gamma);
    const int pts = level == VerifyLevel::full ? 61 : 31;
    const GridSpec grid{-6.0, 6.0, -6.0, 6.0, pts, pts};

    const auto w0 = wigner_closed(sc, 0.0, grid);
    double diff = 0.0;
    for (int j = 0; j < grid.n_im; ++j)
        for (int i = 0; i < grid.n_re; ++i) {
            const cplx a(grid.re(i), grid.im(j));
            const double ref = std::exp(-2.0 * std::norm(a - gamma)) / std::numbers::pi;
            diff = std::max(diff, std::abs(w0.at(i, j) - ref));
        }
    rec.add("wigner_closed", "t=0 coherent state", 1e-6, diff);

    const double t = 0.12;
    const auto closed = wigner_closed(sc, t, grid);
    const auto oracle = wigner_oracle(reduced_density(propagate_counter(sc.initial.state(), t, p).value), grid);
    rec.add("wigner_closed", "vs displaced parity, t=0.12", 1e-6, closed.max_abs_diff(oracle));
    rec.add("wigner_closed", "grid integral = 1/2", 1e-3, std::abs(closed.integral() - 0.5));
}

} // namespace

bool VerifyReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string VerifyReport::to_json() const
{
    nlohmann::json j;
    j["level"] = level == VerifyLevel::full ? "full" : "fast";
    j["cutoff"] = cutoff;
    j["ok"] = ok();
    j["seconds"] = seconds;
    auto& arr = j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name},
                       {"component", c.component},
                       {"tolerance", c.tolerance},
                       {"observed", std::isfinite(c.observed) ? nlohmann::json(c.observed) : nlohmann::json()},
                       {"pass", c.pass}});
    return j.dump(2);
}

VerifyReport run_verify(const VerifyOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    report.level = opts.level;
    report.cutoff = opts.level == VerifyLevel::full ? 128 : 64;
    Recorder rec(report);

    check_propagators(opts, report.cutoff, rec);
    check_observables(report.cutoff, rec);
    check_fidelity(report.cutoff, rec);
    check_special_functions(rec);
    check_wigner(opts.level, report.cutoff, rec);

    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace crjc
