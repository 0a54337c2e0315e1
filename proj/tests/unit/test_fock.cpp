#include "crjc/fock.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace crjc;
using hp = reference::hp;

TEST_CASE("factorial ratios")
{
    CHECK(factorial_ratio(3, 2) == doctest::Approx(20.0));
    CHECK(factorial_ratio(0, 1) == 1.0);
    CHECK(sqrt_factorial_ratio(120, 3) == doctest::Approx(std::sqrt(121.0 * 122.0 * 123.0)).epsilon(1e-15));

    SUBCASE("recurrence in k")
    {
        for (long n = 0; n <= 300; ++n)
            for (int k = 2; k <= 5; ++k) {
                const double lhs = factorial_ratio(n, k);
                const double rhs = factorial_ratio(n, k - 1) * double(n + k);
                REQUIRE(std::abs(lhs - rhs) <= 1e-14 * lhs);
            }
    }
    SUBCASE("against high precision")
    {
        for (long n : {0L, 7L, 64L, 349L})
            for (int k = 1; k <= 6; ++k) {
                hp r = 1;
                for (int j = 1; j <= k; ++j)
                    r *= hp(n + j);
                const double ref = static_cast<double>(sqrt(r));
                CHECK(std::abs(sqrt_factorial_ratio(n, k) - ref) <= 1e-14 * ref);
            }
    }
    CHECK_THROWS_AS(factorial_ratio(1000000, 60), std::overflow_error);
    CHECK_THROWS(factorial_ratio(3, 0));
}

TEST_CASE("associated Laguerre polynomials")
{
    CHECK(assoc_laguerre(0, 5, 3.0) == 1.0);
    CHECK(assoc_laguerre(1, 0, 2.0) == doctest::Approx(-1.0));
    CHECK(assoc_laguerre(2, 1, 2.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(assoc_laguerre(2, -3, 1.0), std::domain_error);

    for (int s = 0; s <= 12; ++s)
        for (int a = -s; a <= 12; ++a)
            for (double x : {0.5, 2.0, 10.0}) {
                const double ref = static_cast<double>(reference::laguerre(s, a, hp(x)));
                const double got = assoc_laguerre(s, a, x);
                INFO("s=" << s << " a=" << a << " x=" << x);
                REQUIRE(std::abs(got - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
            }
}

TEST_CASE("mu kernel")
{
    for (int n = 0; n < 10; ++n)
        CHECK(std::abs(mu(0.0, n, n) - 1.0) < 1e-15);
    CHECK(std::abs(mu(0.0, 2, 0)) == 0.0);
    CHECK(std::abs(mu(1.0, 1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(std::conj(mu(-1.0, 0, 1)) - 1.0) < 1e-15);

    SUBCASE("symmetry and 50-digit reference, 200 random cases")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<int> idx(0, 60);
        for (int i = 0; i < 200; ++i) {
            const cplx alpha = std::polar(6.0 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
            const int n = idx(rng), s = idx(rng);
            const cplx ref = reference::mu(alpha, n, s);
            const cplx got = mu(alpha, n, s);
            INFO("alpha=" << alpha << " n=" << n << " s=" << s);
            REQUIRE(std::abs(got - ref) <= 1e-10 * std::abs(ref));
            REQUIRE(std::abs(got - std::conj(mu(-alpha, s, n))) <= 1e-10 * std::abs(ref));
        }
    }
    SUBCASE("direct route agrees where the negative superscript is mild")
    {
        for (int n = 0; n < 6; ++n)
            for (int s = 0; s < 6; ++s) {
                const cplx alpha(1.3, -0.7);
                CHECK(std::abs(mu(alpha, n, s) - mu_direct(alpha, n, s)) < 1e-12);
            }
        CHECK_THROWS_AS(mu_direct(0.0, 1, 3), std::domain_error);
    }
}

TEST_CASE("coherent amplitudes")
{
    const auto c = coherent_amplitudes(2.0, 350);
    CHECK(c.amps[0].real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(std::abs(c.amps.norm2() - 1.0) < 1e-12);
    double mean = 0.0;
    for (int n = 0; n <= 350; ++n)
        mean += n * std::norm(c.amps[std::size_t(n)]);
    CHECK(std::abs(mean - 4.0) < 1e-10);
    CHECK_FALSE(c.tail_warning);

    const auto ref = oracle::coherent(cplx(1.5, -2.5), 120);
    const auto got = coherent_amplitudes(cplx(1.5, -2.5), 120);
    for (int n = 0; n <= 120; ++n)
        CHECK(std::abs(got.amps[std::size_t(n)] - ref[std::size_t(n)]) < 1e-13);

    const auto tight = coherent_amplitudes(4.0, 20, 2);
    CHECK(tight.tail_warning);
    CHECK(tight.tail_mass > 1e-12);
    const auto loose = coherent_amplitudes(1.0, 60, 2);
    CHECK(loose.tail_mass < 1e-12);
    CHECK(std::abs(loose.amps.norm2() - 1.0) < 1e-10);
}

TEST_CASE("k-photon ladder actions")
{
    const auto up = apply_raise_k(FockVector::basis(5, 0), 1);
    CHECK(std::abs(up.value[1] - 1.0) < 1e-15);
    CHECK(up.leaked == 0.0);

    CHECK(apply_lower_k(FockVector::basis(5, 1), 2).value.norm2() == 0.0);

    const auto round = apply_lower_k(apply_raise_k(FockVector::basis(8, 3), 2).value, 2).value;
    CHECK(std::abs(round[3] - 20.0) < 1e-12);

    FockVector top = FockVector::basis(4, 4);
    const auto lost = apply_raise_k(top, 1);
    CHECK(lost.value.norm2() == 0.0);
    CHECK(lost.leaked == doctest::Approx(5.0));

    SUBCASE("matches dense ladder matrices")
    {
        std::mt19937_64 rng(3);
        std::normal_distribution<double> nd;
        const int N = 20;
        for (int k = 1; k <= 3; ++k) {
            FockVector v(N);
            oracle::Vec dv(N + 1);
            for (int n = 0; n <= N; ++n)
                dv(n) = v[std::size_t(n)] = cplx(nd(rng), nd(rng));
            const oracle::Mat ak = oracle::power(oracle::annihilation(N), k);
            const oracle::Vec lo = ak * dv, hi = ak.adjoint() * dv;
            const auto l = apply_lower_k(v, k).value, h = apply_raise_k(v, k).value;
            for (int n = 0; n <= N; ++n) {
                CHECK(std::abs(l[std::size_t(n)] - lo(n)) < 1e-12 * (1 + std::abs(lo(n))));
                CHECK(std::abs(h[std::size_t(n)] - hi(n)) < 1e-12 * (1 + std::abs(hi(n))));
            }
        }
    }
}

TEST_CASE("grid spec")
{
    GridSpec g{-1.0, 1.0, -2.0, 2.0, 3, 5};
    CHECK_NOTHROW(g.validate());
    CHECK(g.re(2) == 1.0);
    CHECK(g.im(1) == -1.0);
    g.n_re = 1;
    CHECK_THROWS(g.validate());
}
