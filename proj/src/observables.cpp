#include "crjc/observables.hpp"

#include "crjc/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace crjc {

DiagonalObservable DiagonalObservable::sigma_z()
{
    return {[](long) { return 1.0; }, [](long) { return -1.0; }};
}

DiagonalObservable DiagonalObservable::n_power(int j)
{
    if (j < 1)
        throw std::invalid_argument("n_power: j must be >= 1");
    auto pw = [j](long n) { return std::pow(static_cast<double>(n), j); };
    return {pw, pw};
}

DiagonalObservable DiagonalObservable::excitation_c(int k)
{
    const double half = 0.5 * k;
    return {[half](long n) { return n - half; }, [half](long n) { return n + half; }};
}

double expect_diagonal_closed(const Scenario& sc, double t, const DiagonalObservable& obs)
{
    const auto& p = sc.params;
    const auto& ic = sc.initial;
    const int N = ic.cutoff();
    const int k = p.k;
    if (!p.kerr_family())
        throw std::invalid_argument("closed-form observables: F/G/f overrides not supported");

    // E/F/G on n = -k..N
    std::vector<EFGTriple> tab;
    tab.reserve(static_cast<std::size_t>(N + k + 1));
    for (long n = -k; n <= N; ++n)
        tab.push_back(efg(n, t, p));
    auto at = [&](long n) -> const EFGTriple& { return tab[static_cast<std::size_t>(n + k)]; };

    const cplx cross = ic.alpha_e * std::conj(ic.alpha_g);
    double sum_q = 0.0, sum_r = 0.0, sum_t = 0.0;
    for (long n = 0; n <= N; ++n) {
        const auto& here = at(n);
        const double cn2 = std::norm(ic.c.at_or_zero(n));
        const double dn2 = std::norm(ic.d.at_or_zero(n));
        const double pn = obs.p(n), qn = obs.q(n);
        sum_q += pn * cn2 * std::norm(at(n - k).F);
        sum_r += qn * dn2 * std::norm(here.F);
        if (n + k > N)
            continue;
        // H_n = -i sqrt((n+k)!/n!) G_n is real because G_n is imaginary
        const double h = std::real(cplx(0.0, -1.0) * sqrt_factorial_ratio(n, k) * here.G);
        const double h2 = h * h;
        const cplx cnk = ic.c.at_or_zero(n + k);
        const double pnk = obs.p(n + k);
        sum_q += qn * std::norm(cnk) * h2;
        sum_r += pnk * dn2 * h2;
        sum_t += h * (pnk - qn) *
                 std::imag(cross * cnk * std::conj(ic.d.at_or_zero(n)) * std::conj(here.F));
    }
    const double w2 = std::norm(ic.alpha_e) + std::norm(ic.alpha_g);
    return (std::norm(ic.alpha_e) * sum_q + std::norm(ic.alpha_g) * sum_r + 2.0 * sum_t) / w2;
}

double expect_diagonal_direct(const QubitFieldState& s, const DiagonalObservable& obs)
{
    double acc = 0.0;
    for (int n = 0; n <= s.cutoff(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        acc += obs.p(n) * std::norm(s.e[i]) + obs.q(n) * std::norm(s.g[i]);
    }
    return acc;
}

double atomic_inversion(const Scenario& sc, double t)
{
    return expect_diagonal_closed(sc, t, DiagonalObservable::sigma_z());
}

double expect_n_power(const Scenario& sc, double t, int j)
{
    return expect_diagonal_closed(sc, t, DiagonalObservable::n_power(j));
}

std::optional<double> mandel_q_from_moments(double n1, double n2)
{
    if (!(n1 > 1e-9))
        return std::nullopt;
    return (n2 - n1 * n1) / n1 - 1.0;
}

std::optional<double> mandel_q(const Scenario& sc, double t)
{
    return mandel_q_from_moments(expect_n_power(sc, t, 1), expect_n_power(sc, t, 2));
}

std::optional<LocalMin> first_local_min(std::span<const double> times,
                                        std::span<const double> values)
{
    if (times.size() != values.size())
        throw std::invalid_argument("first_local_min: length mismatch");
    if (values.size() < 3)
        throw std::invalid_argument("first_local_min: need at least 3 samples");
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] < values[i - 1] && values[i] < values[i + 1])
            return LocalMin{times[i], values[i]};
    return std::nullopt;
}

} // namespace crjc
