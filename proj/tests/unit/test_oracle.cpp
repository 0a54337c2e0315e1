#include "crjc/oracle.hpp"
#include "crjc/propagator.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace crjc;

namespace {

QubitFieldState random_state(int cutoff, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    QubitFieldState s(cutoff);
    for (int n = 0; n <= cutoff; ++n) {
        s.e[std::size_t(n)] = cplx(nd(rng), nd(rng));
        s.g[std::size_t(n)] = cplx(nd(rng), nd(rng));
    }
    s *= 1.0 / std::sqrt(s.norm2());
    return s;
}

} // namespace

TEST_CASE("trivial Hamiltonians")
{
    const int N = 6;
    const auto psi = random_state(N, 1);
    const JointMatrix zero = JointMatrix::Zero(2 * (N + 1), 2 * (N + 1));
    CHECK(max_abs_diff(evolve_oracle(zero, psi, 3.0), psi) < 1e-15);

    JointMatrix hz = JointMatrix::Zero(2 * (N + 1), 2 * (N + 1));
    for (int n = 0; n <= N; ++n) {
        hz(e_index(n), e_index(n)) = 0.5;
        hz(g_index(N, n), g_index(N, n)) = -0.5;
    }
    const auto out = evolve_oracle(hz, psi, std::numbers::pi);
    for (int n = 0; n <= N; ++n) {
        CHECK(std::abs(out.e[std::size_t(n)] - cplx(0, -1) * psi.e[std::size_t(n)]) < 1e-14);
        CHECK(std::abs(out.g[std::size_t(n)] - cplx(0, 1) * psi.g[std::size_t(n)]) < 1e-14);
    }
}

TEST_CASE("eigendecomposition propagator")
{
    const int N = 50;
    ModelParams p;
    p.k = 2;
    p.chi = 0.1;
    p.delta = 0.2;
    const JointMatrix h = build_H(p, N);
    const EigenPropagator prop(h);
    CHECK(prop.decomposition_residual() < 1e-9 * h.cwiseAbs().maxCoeff());

    const auto psi = random_state(N, 2);
    const auto a = prop.evolve(psi, 2.5);
    CHECK(std::abs(a.norm2() - 1.0) < 1e-10);
    CHECK(oracle::phase_free_diff(a, oracle::evolve_expm(h, psi, 2.5)) < 1e-9);
    const auto two = prop.evolve(prop.evolve(psi, 1.0), 1.5);
    CHECK(max_abs_diff(two, a) < 1e-9);
    const JointMatrix u = prop.unitary(0.8);
    CHECK((u.adjoint() * u - JointMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() < 1e-10);

    JointMatrix bad = h;
    bad(0, 1) += 1.0;
    CHECK_THROWS_AS(EigenPropagator{bad}, std::invalid_argument);
    CHECK_THROWS(prop.evolve(random_state(N - 1, 3), 1.0));
}

TEST_CASE("phase alignment")
{
    const auto a = random_state(8, 4);
    CHECK(phase_align(a, a).second == 0.0);
    auto b = a;
    b *= std::polar(1.0, 2.1);
    CHECK(phase_align(a, b).second < 1e-12);
    auto c = a;
    c.e[0] += 0.1;
    CHECK(phase_align(a, c).second > 1e-3);
}

TEST_CASE("joint vector layout")
{
    const auto s = random_state(5, 6);
    const auto v = to_joint_vector(s);
    CHECK(v(e_index(2)) == s.e[2]);
    CHECK(v(g_index(5, 3)) == s.g[3]);
    CHECK(from_joint_vector(v) == s);
}

TEST_CASE("oracle matches closed form for the fidelity parameters")
{
    const int N = 128;
    ModelParams p;
    p.k = 1;
    p.chi = 0.5;
    p.g = 0.1;
    const auto c = parse_initial_spec("excited-coherent(3.1)", N, 1).condition;
    const auto psi = c.state();
    const EigenPropagator prop(build_H(p, N));
    for (double t : {1.0, 12.5, 30.0})
        CHECK(phase_align(prop.evolve(psi, t), propagate_counter(psi, t, p).value).second < 1e-8);
}
