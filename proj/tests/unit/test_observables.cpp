#include "crjc/observables.hpp"
#include "crjc/propagator.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace crjc;

namespace {

ModelParams params(int k, double chi, double delta, double g)
{
    ModelParams p;
    p.k = k;
    p.chi = chi;
    p.delta = delta;
    p.g = g;
    return p;
}

Scenario scenario(const ModelParams& p, const std::string& spec, int cutoff)
{
    return Scenario{p, parse_initial_spec(spec, cutoff, p.k).condition};
}

// <psi| diag(p, q) |psi> with the observable written out by hand.
double expect_by_hand(const QubitFieldState& s, double (*pe)(int), double (*qg)(int))
{
    double sum = 0.0;
    for (int n = 0; n <= s.cutoff(); ++n)
        sum += pe(n) * std::norm(s.e[std::size_t(n)]) + qg(n) * std::norm(s.g[std::size_t(n)]);
    return sum;
}

} // namespace

TEST_CASE("initial values")
{
    const auto sc = scenario(params(2, 0.0, 0.0, 0.1), "excited-coherent(4)", 200);
    CHECK(atomic_inversion(sc, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(expect_n_power(sc, 0.0, 1) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(std::abs(*mandel_q(sc, 0.0)) < 1e-10);

    const auto vac = scenario(params(1, 0.0, 0.0, 0.1), "fock(g, 0)", 20);
    CHECK(atomic_inversion(vac, 0.0) == doctest::Approx(-1.0));
    CHECK(expect_n_power(vac, 0.0, 1) == 0.0);
    CHECK_FALSE(mandel_q(vac, 0.0).has_value());

    const auto five = scenario(params(1, 0.0, 0.0, 0.1), "fock(g, 5)", 20);
    CHECK(*mandel_q(five, 0.0) == doctest::Approx(-1.0));
}

TEST_CASE("closed form against the exponential oracle")
{
    const int N = 45;
    const char* specs[] = {"excited-coherent(2)", "superposition(1, 0.5-0.5i, 1.5, 2i)",
                           "superposition(0.3, 1, 2, 2)", "ground-coherent(1.7)"};
    for (int k = 1; k <= 3; ++k)
        for (double chi : {0.0, 0.2})
            for (const char* spec : specs) {
                const auto p = params(k, chi, 0.2, 0.1);
                const auto sc = scenario(p, spec, N);
                const auto h = oracle::counter_hamiltonian(0.2, 0.1, chi, k, N);
                for (double t : {0.5, 7.0, 40.0}) {
                    const auto psi = oracle::evolve_expm(h, sc.initial.state(), t);
                    INFO("k=" << k << " chi=" << chi << " " << spec << " t=" << t);
                    const double sz = expect_by_hand(psi, [](int) { return 1.0; }, [](int) { return -1.0; });
                    const double n1 = expect_by_hand(psi, [](int n) { return double(n); }, [](int n) { return double(n); });
                    const double n2 = expect_by_hand(psi, [](int n) { return double(n) * n; },
                                                     [](int n) { return double(n) * n; });
                    CHECK(std::abs(atomic_inversion(sc, t) - sz) < 1e-9);
                    CHECK(std::abs(expect_n_power(sc, t, 1) - n1) < 1e-9);
                    CHECK(std::abs(expect_n_power(sc, t, 2) - n2) < 1e-8);
                }
            }
}

TEST_CASE("closed form against the propagated state, collapse-revival parameters")
{
    const auto sc = scenario(params(2, 0.0, 0.0, 0.1), "excited-coherent(3.7416573867739413)", 350);
    for (double t : {5.0, 31.0, 77.0}) {
        const auto psi = propagate_counter(sc.initial.state(), t, sc.params).value;
        CHECK(std::abs(atomic_inversion(sc, t) - expect_diagonal_direct(psi, DiagonalObservable::sigma_z())) < 1e-10);
        CHECK(std::abs(expect_n_power(sc, t, 1) - expect_diagonal_direct(psi, DiagonalObservable::n_power(1))) < 1e-10);
        CHECK(std::abs(expect_n_power(sc, t, 2) - expect_diagonal_direct(psi, DiagonalObservable::n_power(2))) < 1e-10);
        const double s = atomic_inversion(sc, t);
        CHECK(s <= 1.0);
        CHECK(s >= -1.0);
    }
}

TEST_CASE("excitation number is conserved")
{
    for (int k = 1; k <= 3; ++k) {
        const auto sc = scenario(params(k, 0.1, 0.2, 0.1), "superposition(1, 1i, 2.5, 1)", 150);
        const auto c = DiagonalObservable::excitation_c(k);
        const double c0 = expect_diagonal_closed(sc, 0.0, c);
        for (double t = 0.0; t <= 50.0; t += 2.5) {
            CHECK(std::abs(expect_diagonal_closed(sc, t, c) - c0) < 1e-8);
            const double via_parts = expect_n_power(sc, t, 1) - 0.5 * k * atomic_inversion(sc, t);
            CHECK(std::abs(via_parts - c0) < 1e-8);
        }
    }
}

TEST_CASE("collapse and revival of the inversion")
{
    const auto sc = scenario(params(2, 0.0, 0.0, 0.1), "excited-coherent(3.7416573867739413)", 350);
    auto envelope = [&](double a, double b) {
        double m = 0.0;
        for (double t = a; t <= b; t += 0.05)
            m = std::max(m, std::abs(atomic_inversion(sc, t)));
        return m;
    };
    const double collapsed = envelope(12.0, 18.0);
    const double revived = envelope(55.0, 70.0);
    CHECK(collapsed < 0.2);
    CHECK(revived > 2.0 * collapsed);
}

TEST_CASE("first local minimum")
{
    const std::vector<double> t{0, 1, 2}, v{3, 1, 2};
    const auto m = first_local_min(t, v);
    REQUIRE(m);
    CHECK(m->t == 1.0);
    CHECK(m->value == 1.0);
    const std::vector<double> mono{1, 2, 3};
    CHECK_FALSE(first_local_min(t, mono));
    const std::vector<double> t5{0, 1, 2, 3, 4}, v5{5, 2, 2, 1, 3};
    CHECK(first_local_min(t5, v5)->t == 3.0);
    const std::vector<double> two{0, 1};
    CHECK_THROWS(first_local_min(two, two));
}

TEST_CASE("mandel Q from moments")
{
    CHECK(*mandel_q_from_moments(4.0, 20.0) == doctest::Approx(0.0));
    CHECK(*mandel_q_from_moments(5.0, 25.0) == doctest::Approx(-1.0));
    CHECK_FALSE(mandel_q_from_moments(0.0, 0.0));
}
