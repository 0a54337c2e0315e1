#include "crjc/model.hpp"

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

} // namespace

TEST_CASE("diagonal functions")
{
    const auto poly = DiagonalFn::parse("poly(1, -0.5, 0.25)");
    CHECK(poly(2) == doctest::Approx(1.0 - 1.0 + 1.0));
    CHECK(poly(-2) == doctest::Approx(1.0 + 1.0 + 1.0));
    const auto par = DiagonalFn::parse("parity(0.3)");
    CHECK(par(3) == doctest::Approx(-0.3));
    CHECK(par(4) == doctest::Approx(0.3));
    CHECK(DiagonalFn::parse(poly.to_string()) == poly);
    CHECK(DiagonalFn::parse(par.to_string()) == par);
    CHECK_THROWS(DiagonalFn::parse("exp(1)"));
    CHECK_THROWS(DiagonalFn::parse("poly(1, x)"));
}

TEST_CASE("counter-rotating Hamiltonian matches Kronecker construction")
{
    const int N = 24;
    for (int k = 1; k <= 3; ++k)
        for (double chi : {0.0, 0.5})
            for (double delta : {0.0, 0.2}) {
                const auto p = params(k, chi, delta, 0.1);
                const JointMatrix h = build_H(p, N);
                const auto ref = oracle::counter_hamiltonian(delta, 0.1, chi, k, N);
                CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-12);
                CHECK(hermiticity_residual(h) < 1e-12);

                const JointMatrix h0 = build_H0_shifted_kerr(p, N);
                const auto ref0 = oracle::rotating_shifted_hamiltonian(delta, 0.1, chi, k, N);
                CHECK((h0 - ref0).cwiseAbs().maxCoeff() < 1e-12);
            }
}

TEST_CASE("rotating Hamiltonian")
{
    const int N = 10;
    SUBCASE("g = 0 is block diagonal")
    {
        auto p = params(2, 0.0, 0.4, 0.0);
        p.F = DiagonalFn::polynomial({0.1, 0.2});
        p.G = DiagonalFn::polynomial({0.0, 0.0, 0.3});
        const auto h = build_H0(p, N);
        for (int n = 0; n <= N; ++n) {
            CHECK(h(e_index(n), e_index(n)).real() == doctest::Approx(0.2 + 0.3 * n * n + 0.1 + 0.2 * n));
            CHECK(h(g_index(N, n), g_index(N, n)).real() == doctest::Approx(-0.2 + 0.3 * n * n - 0.1 - 0.2 * n));
        }
        CHECK(h.block(0, N + 1, N + 1, N + 1).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("resonant Jaynes-Cummings structure")
    {
        auto p = params(1, 0.0, 0.0, 0.1);
        p.F = DiagonalFn::constant(0.0);
        p.G = DiagonalFn::constant(0.0);
        const auto h = build_H0(p, N);
        for (int n = 0; n < N; ++n)
            CHECK(h(e_index(n), g_index(N, n + 1)).real() == doctest::Approx(0.1 * std::sqrt(n + 1.0)));
        CHECK(hermiticity_residual(h) < 1e-12);
    }
    SUBCASE("deformation function f")
    {
        auto p = params(2, 0.0, 0.0, 0.1);
        p.f = DiagonalFn::polynomial({1.0, 0.1});
        const auto h = build_H0(p, N);
        const oracle::Mat a2 = oracle::power(oracle::annihilation(N), 2);
        oracle::Mat fdiag = oracle::Mat::Zero(N + 1, N + 1);
        for (int n = 0; n <= N; ++n)
            fdiag(n, n) = 1.0 + 0.1 * n;
        const oracle::Mat c = 0.1 * oracle::kron(oracle::sigma_plus(), a2 * fdiag);
        const oracle::Mat off = c + c.adjoint();
        CHECK((h.block(0, N + 1, N + 1, N + 1) - off.block(0, N + 1, N + 1, N + 1)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("shifted Kerr at chi = 0 equals plain rotating form")
    {
        const auto p = params(2, 0.0, 0.3, 0.1);
        auto q = p;
        q.F = DiagonalFn::constant(0.0);
        q.G = DiagonalFn::constant(0.0);
        CHECK((build_H0_shifted_kerr(p, N) - build_H0(q, N)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("shifted Kerr diagonal")
    {
        const auto h = build_H0_shifted_kerr(params(1, 0.5, 0.0, 0.1), N);
        for (int n = 0; n <= N; ++n)
            CHECK(h(n, n).real() == doctest::Approx(0.5 * (n + 1) * (n + 1)));
    }
    CHECK_THROWS(build_H0(params(3, 0.0, 0.0, 0.1), 6));
}

TEST_CASE("counter-rotating diagonal at g = 0")
{
    const auto h = build_H(params(1, 0.5, 0.0, 0.0), 8);
    for (int n = 0; n <= 8; ++n) {
        CHECK(h(e_index(n), e_index(n)).real() == doctest::Approx(0.5 * n * n));
        CHECK(h(g_index(8, n), g_index(8, n)).real() == doctest::Approx(0.5 * n * n));
    }
}

TEST_CASE("intertwiner")
{
    const int N = 10;
    const auto b1 = build_Bk(1, N);
    oracle::Vec e0 = oracle::Vec::Zero(2 * (N + 1));
    e0(e_index(0)) = 1.0;
    CHECK(std::abs((b1 * e0)(e_index(1)) - 1.0) < 1e-15);
    oracle::Vec g0 = oracle::Vec::Zero(2 * (N + 1));
    g0(g_index(N, 0)) = 1.0;
    CHECK((b1 * g0).norm() == 0.0);
    oracle::Vec g5 = oracle::Vec::Zero(2 * (N + 1));
    g5(g_index(N, 5)) = 1.0;
    CHECK(std::abs((build_Bk(2, N) * g5)(g_index(N, 3)) - std::sqrt(20.0)) < 1e-14);

    const oracle::Mat a = oracle::annihilation(N);
    for (int k = 1; k <= 3; ++k) {
        const oracle::Mat ref = oracle::kron(oracle::proj_e(), oracle::power(a, k).adjoint()) +
                                oracle::kron(oracle::proj_g(), oracle::power(a, k));
        CHECK((build_Bk(k, N) - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("intertwining residual on the interior")
{
    CHECK(intertwining_residual(params(2, 0.0, 0.0, 0.1), 128, 4) < 1e-10);
    CHECK(intertwining_residual(params(1, 0.5, 0.0, 0.1), 128, 2) < 1e-10);
    CHECK(intertwining_residual(params(3, 0.5, 0.2, 0.0), 64, 6) < 1e-12);

    SUBCASE("general F, G, f")
    {
        auto p = params(2, 0.0, 0.3, 0.1);
        p.F = DiagonalFn::polynomial({0.05, 0.01});
        p.G = DiagonalFn::polynomial({0.0, 0.02, 0.003});
        p.f = DiagonalFn::parity(1.0);
        CHECK(intertwining_residual(p, 40, 4) < 1e-10);
        CHECK(hermiticity_residual(build_H(p, 40)) < 1e-12);
        CHECK(hermiticity_residual(build_H0(p, 40)) < 1e-12);
    }
    SUBCASE("full truncated space")
    {
        auto p = params(2, 0.5, 0.0, 0.1);
        JointMatrix diff = build_Bk(2, 20) * rotating_source(p, 20) - build_H(p, 20) * build_Bk(2, 20);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
        p.F = DiagonalFn::polynomial({0.05, 0.01});
        p.G = DiagonalFn::polynomial({0.0, 0.02, 0.003});
        diff = build_Bk(2, 20) * rotating_source(p, 20) - build_H(p, 20) * build_Bk(2, 20);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS(intertwining_residual(params(2, 0.0, 0.0, 0.1), 20, 1));
    CHECK_THROWS(intertwining_residual(params(2, 0.0, 0.0, 0.1), 20, 19));
}

TEST_CASE("constants of motion")
{
    const int N = 12;
    const auto c = constant_of_motion(Motion::C, 2, N);
    CHECK(c(e_index(0), e_index(0)).real() == doctest::Approx(-1.0));
    const auto c0 = constant_of_motion(Motion::C0, 1, N);
    CHECK(c0(g_index(N, 3), g_index(N, 3)).real() == doctest::Approx(2.5));

    for (int k = 1; k <= 3; ++k) {
        const auto p = params(k, 0.3, 0.2, 0.1);
        const JointMatrix h = build_H(p, N), h0 = build_H0_shifted_kerr(p, N);
        const JointMatrix cc = constant_of_motion(Motion::C, k, N);
        const JointMatrix cc0 = constant_of_motion(Motion::C0, k, N);
        CHECK(interior_max_abs(h * cc - cc * h, N, N - k) < 1e-12);
        CHECK(interior_max_abs(h0 * cc0 - cc0 * h0, N, N - k) < 1e-12);
    }
}

TEST_CASE("parameter validation")
{
    ModelParams p;
    p.k = 0;
    CHECK_THROWS(p.validate());
    p.k = 1;
    p.g = -0.1;
    CHECK_THROWS(p.validate());
    p.g = 0.1;
    p.F = DiagonalFn::constant(1.0);
    CHECK_FALSE(p.kerr_family());
    CHECK_THROWS(build_H0_shifted_kerr(p, 10));
}
