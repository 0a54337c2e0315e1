#include "crjc/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace crjc {

namespace {

double detuning_term(long m, const ModelParams& p)
{
    const double k = p.k;
    return 0.5 * p.delta + p.chi * (static_cast<double>(m) * k + 0.5 * k * k);
}

void require_closed_form(const ModelParams& p)
{
    p.validate();
    if (!p.kerr_family())
        throw std::invalid_argument(
            "closed-form propagator: only the Kerr/multiphoton family (no F/G/f overrides)");
}

} // namespace

double rabi_frequency(long m, const ModelParams& p)
{
    if (m < -p.k)
        throw std::invalid_argument("rabi_frequency: index below -k");
    const double d = detuning_term(m, p);
    if (m < 0)
        return d;
    const double coupling = p.g * p.g * factorial_ratio(m, p.k);
    return std::sqrt(coupling + d * d);
}

double sin_over_omega(double omega, double t)
{
    const double x = omega * t;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0))));
    }
    return std::sin(x) / omega;
}

EFGTriple efg(long n, double t, const ModelParams& p)
{
    const double omega = rabi_frequency(n, p);
    const double d = detuning_term(n, p);
    const double so = sin_over_omega(omega, t);
    const double phase = -p.chi * t * static_cast<double>(n) * static_cast<double>(n + p.k);
    return EFGTriple{std::polar(1.0, phase), cplx(std::cos(omega * t), d * so),
                     cplx(0.0, -p.g * so)};
}

Tracked<QubitFieldState> BlockPropagator::apply(const QubitFieldState& in) const
{
    if (in.cutoff() != cutoff)
        throw std::invalid_argument("BlockPropagator::apply: cutoff mismatch");
    const int N = cutoff;
    Tracked<QubitFieldState> out{QubitFieldState(N), 0.0};
    auto& e = out.value.e;
    auto& g = out.value.g;
    for (int n = 0; n <= N; ++n) {
        const auto i = static_cast<std::size_t>(n);
        e[i] = diag_e[i] * in.e[i];
        g[i] = diag_g[i] * in.g[i];
    }
    for (int n = 0; n <= N; ++n) {
        const auto lo = static_cast<std::size_t>(n);
        const auto hi = static_cast<std::size_t>(n + k);
        const bool inside = n + k <= N;
        if (picture == Picture::counter_rotating) {
            // pair (|e,n+k>, |g,n>)
            if (inside) {
                e[hi] += e_from_g[lo] * in.g[lo];
                g[lo] += g_from_e[lo] * in.e[hi];
            } else {
                out.leaked += std::norm(e_from_g[lo] * in.g[lo]);
            }
        } else {
            // pair (|e,n>, |g,n+k>)
            if (inside) {
                e[lo] += e_from_g[lo] * in.g[hi];
                g[hi] += g_from_e[lo] * in.e[lo];
            } else {
                out.leaked += std::norm(g_from_e[lo] * in.e[lo]);
            }
        }
    }
    return out;
}

JointMatrix BlockPropagator::dense() const
{
    const int N = cutoff;
    const Eigen::Index dim = 2 * (N + 1);
    JointMatrix u = JointMatrix::Zero(dim, dim);
    for (int n = 0; n <= N; ++n) {
        const auto i = static_cast<std::size_t>(n);
        u(e_index(n), e_index(n)) = diag_e[i];
        u(g_index(N, n), g_index(N, n)) = diag_g[i];
    }
    for (int n = 0; n + k <= N; ++n) {
        const auto i = static_cast<std::size_t>(n);
        if (picture == Picture::counter_rotating) {
            u(e_index(n + k), g_index(N, n)) = e_from_g[i];
            u(g_index(N, n), e_index(n + k)) = g_from_e[i];
        } else {
            u(e_index(n), g_index(N, n + k)) = e_from_g[i];
            u(g_index(N, n + k), e_index(n)) = g_from_e[i];
        }
    }
    return u;
}

namespace {

BlockPropagator make_blocks(const ModelParams& p, int cutoff, double t,
                            BlockPropagator::Picture picture)
{
    require_closed_form(p);
    if (cutoff < 1)
        throw std::invalid_argument("propagator: cutoff must be >= 1");
    const int k = p.k;
    const auto size = static_cast<std::size_t>(cutoff) + 1;
    BlockPropagator b;
    b.picture = picture;
    b.k = k;
    b.cutoff = cutoff;
    b.diag_e.resize(size);
    b.diag_g.resize(size);
    b.e_from_g.resize(size);
    b.g_from_e.resize(size);

    for (int n = 0; n <= cutoff; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const auto here = efg(n, t, p);
        const auto shifted = efg(n - k, t, p);
        const cplx couple = sqrt_factorial_ratio(n, k) * here.E * here.G;
        b.e_from_g[i] = couple;
        b.g_from_e[i] = couple;
        if (picture == BlockPropagator::Picture::counter_rotating) {
            b.diag_e[i] = shifted.E * std::conj(shifted.F);
            b.diag_g[i] = here.E * here.F;
        } else {
            b.diag_e[i] = here.E * std::conj(here.F);
            b.diag_g[i] = shifted.E * shifted.F;
        }
    }
    return b;
}

} // namespace

BlockPropagator counter_propagator(const ModelParams& p, int cutoff, double t)
{
    return make_blocks(p, cutoff, t, BlockPropagator::Picture::counter_rotating);
}

BlockPropagator rotating_propagator(const ModelParams& p, int cutoff, double t)
{
    return make_blocks(p, cutoff, t, BlockPropagator::Picture::rotating);
}

Tracked<QubitFieldState> propagate_counter(const QubitFieldState& state, double t,
                                           const ModelParams& p)
{
    return counter_propagator(p, state.cutoff(), t).apply(state);
}

Tracked<QubitFieldState> propagate_rotating(const QubitFieldState& state, double t,
                                            const ModelParams& p)
{
    return rotating_propagator(p, state.cutoff(), t).apply(state);
}

} // namespace crjc
