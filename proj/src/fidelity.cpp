#include "crjc/fidelity.hpp"

#include "crjc/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace crjc {

namespace {

double clamp_fidelity(double raw2)
{
    if (raw2 > 1.0 + 1e-8)
        throw std::runtime_error("fidelity: <phi|rho|phi> = " + std::to_string(raw2) +
                                 " exceeds 1");
    return std::sqrt(std::clamp(raw2, 0.0, 1.0));
}

} // namespace

double fidelity_pure_vs_state(const FockVector& phi, const FieldDensity& rho)
{
    if (static_cast<int>(phi.cutoff()) != rho.cutoff())
        throw std::invalid_argument("fidelity: cutoff mismatch");
    if (std::abs(phi.norm2() - 1.0) > 1e-8)
        throw std::invalid_argument("fidelity: reference state is not normalised");
    if (rho.hermiticity_residual() > 1e-10)
        throw std::invalid_argument("fidelity: density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-8)
        throw std::invalid_argument("fidelity: density matrix trace " +
                                    std::to_string(rho.trace()) + " differs from 1");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(phi.dim()));
    for (std::size_t n = 0; n < phi.dim(); ++n)
        v(static_cast<Eigen::Index>(n)) = phi[n];
    const cplx inner = v.dot(rho.rho * v);
    return clamp_fidelity(inner.real());
}

double fidelity_closed(const Scenario& sc, double t)
{
    const auto& p = sc.params;
    const auto& ic = sc.initial;
    if (!p.kerr_family())
        throw std::invalid_argument("fidelity_closed: F/G/f overrides not supported");
    if (!ic.separable())
        throw std::invalid_argument(
            "fidelity_closed: initial condition is entangled; the closed form needs a separable "
            "qubit (x) field state (c_n = d_n for all n, or one branch weight zero)");
    const FockVector& c = ic.field();
    const int N = ic.cutoff();
    const int k = p.k;

    cplx h1{}, h2{}, h3{}, h4{};
    for (long n = 0; n <= N; ++n) {
        const auto here = efg(n, t, p);
        const auto shifted = efg(n - k, t, p);
        const cplx cn = c.at_or_zero(n);
        h1 += std::norm(cn) * shifted.E * std::conj(shifted.F);
        h4 += std::norm(cn) * here.E * here.F;
        if (n + k <= N) {
            const cplx cnk = c.at_or_zero(n + k);
            const cplx w = sqrt_factorial_ratio(n, k) * here.G * here.E;
            h2 += std::conj(cn) * cnk * w;
            h3 += std::conj(cnk) * cn * w;
        }
    }
    const double ae2 = std::norm(ic.alpha_e);
    const double ag2 = std::norm(ic.alpha_g);
    const double inner = ae2 * (std::norm(h1) + std::norm(h2)) + ag2 * (std::norm(h3) + std::norm(h4)) +
                         2.0 * std::real(ic.alpha_e * std::conj(ic.alpha_g) *
                                         (h1 * std::conj(h3) + h2 * std::conj(h4)));
    return clamp_fidelity(inner / (ae2 + ag2));
}

FidelitySeries fidelity_series(const Scenario& sc, const std::vector<double>& times)
{
    FidelitySeries out{times, {}};
    out.values.reserve(times.size());
    for (double t : times)
        out.values.push_back(fidelity_closed(sc, t));
    return out;
}

} // namespace crjc
