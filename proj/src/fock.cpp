#include "crjc/fock.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace crjc {

FockVector::FockVector(int cutoff)
{
    if (cutoff < 0)
        throw std::invalid_argument("FockVector: negative cutoff");
    amps_.assign(static_cast<std::size_t>(cutoff) + 1, cplx{});
}

FockVector::FockVector(std::vector<cplx> amps) : amps_(std::move(amps))
{
    if (amps_.empty())
        throw std::invalid_argument("FockVector: empty amplitude list");
}

FockVector::FockVector(std::initializer_list<cplx> amps)
    : FockVector(std::vector<cplx>(amps))
{
}

FockVector FockVector::basis(int cutoff, int n)
{
    if (n < 0 || n > cutoff)
        throw std::out_of_range("FockVector::basis: level " + std::to_string(n) +
                                " outside 0.." + std::to_string(cutoff));
    FockVector v(cutoff);
    v[static_cast<std::size_t>(n)] = 1.0;
    return v;
}

cplx FockVector::at_or_zero(long n) const
{
    if (n < 0 || n >= static_cast<long>(amps_.size()))
        return {};
    return amps_[static_cast<std::size_t>(n)];
}

double FockVector::norm2() const
{
    double s = 0.0;
    for (const auto& a : amps_)
        s += std::norm(a);
    return s;
}

double FockVector::norm() const { return std::sqrt(norm2()); }

bool FockVector::all_finite() const
{
    for (const auto& a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            return false;
    return true;
}

int FockVector::support_top(double floor) const
{
    for (int n = cutoff(); n >= 0; --n)
        if (std::norm(amps_[static_cast<std::size_t>(n)]) > floor)
            return n;
    return 0;
}

FockVector& FockVector::operator*=(cplx s)
{
    for (auto& a : amps_)
        a *= s;
    return *this;
}

void GridSpec::validate() const
{
    if (!(re_min < re_max) || !(im_min < im_max))
        throw std::invalid_argument("GridSpec: empty range");
    if (n_re < 2 || n_im < 2)
        throw std::invalid_argument("GridSpec: at least two samples per axis");
}

double GridSpec::re(int i) const { return re_min + i * d_re(); }
double GridSpec::im(int j) const { return im_min + j * d_im(); }

double factorial_ratio(long n, int k)
{
    if (n < 0 || k < 1)
        throw std::invalid_argument("factorial_ratio: need n >= 0, k >= 1");
    double p = 1.0;
    for (int j = 1; j <= k; ++j) {
        p *= static_cast<double>(n + j);
        if (!std::isfinite(p))
            throw std::overflow_error("factorial_ratio: (n+k)!/n! overflows at n=" +
                                      std::to_string(n) + ", k=" + std::to_string(k));
    }
    return p;
}

double sqrt_factorial_ratio(long n, int k)
{
    if (n < 0 || k < 1)
        throw std::invalid_argument("sqrt_factorial_ratio: need n >= 0, k >= 1");
    double p = 1.0;
    for (int j = 1; j <= k; ++j) {
        p *= std::sqrt(static_cast<double>(n + j));
        if (!std::isfinite(p))
            throw std::overflow_error("sqrt_factorial_ratio: overflow at n=" +
                                      std::to_string(n) + ", k=" + std::to_string(k));
    }
    return p;
}

double assoc_laguerre(int s, int a, double x)
{
    if (s < 0)
        throw std::invalid_argument("assoc_laguerre: negative degree");
    if (a < -s)
        throw std::domain_error("assoc_laguerre: superscript below -degree; "
                                "use the mu symmetry instead");
    if (s == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + a - x;
    for (int j = 1; j < s; ++j) {
        const double next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// conj(alpha)^(n-s) sqrt(s!/n!) for n >= s, accumulated factor by factor
// so neither the power nor the factorials are formed on their own.
cplx mu_prefactor(cplx alpha, int n, int s)
{
    const cplx ab = std::conj(alpha);
    cplx p = 1.0;
    for (int j = s + 1; j <= n; ++j)
        p *= ab / std::sqrt(static_cast<double>(j));
    return p;
}

} // namespace

cplx mu(cplx alpha, int n, int s)
{
    if (n < 0 || s < 0)
        throw std::invalid_argument("mu: negative index");
    if (n < s)
        return std::conj(mu(-alpha, s, n));
    return mu_prefactor(alpha, n, s) * assoc_laguerre(s, n - s, std::norm(alpha));
}

cplx mu_direct(cplx alpha, int n, int s)
{
    if (n < 0 || s < 0)
        throw std::invalid_argument("mu_direct: negative index");
    if (n >= s)
        return mu_prefactor(alpha, n, s) * assoc_laguerre(s, n - s, std::norm(alpha));
    if (alpha == cplx{})
        throw std::domain_error("mu_direct: negative power of a zero argument");
    // conj(alpha)^(n-s) sqrt(s!/n!) with n - s < 0
    const cplx ab = std::conj(alpha);
    cplx p = 1.0;
    for (int j = n + 1; j <= s; ++j)
        p *= std::sqrt(static_cast<double>(j)) / ab;
    return p * assoc_laguerre(s, n - s, std::norm(alpha));
}

CoherentAmplitudes coherent_amplitudes(cplx gamma, int cutoff, int k, double tail_tolerance)
{
    if (cutoff < 1)
        throw std::invalid_argument("coherent_amplitudes: cutoff must be >= 1");
    if (k < 1)
        throw std::invalid_argument("coherent_amplitudes: k must be >= 1");
    CoherentAmplitudes out{FockVector(cutoff), 0.0, false};
    auto& c = out.amps;
    c[0] = std::exp(-0.5 * std::norm(gamma));
    for (int n = 1; n <= cutoff; ++n)
        c[static_cast<std::size_t>(n)] =
            c[static_cast<std::size_t>(n - 1)] * gamma / std::sqrt(static_cast<double>(n));

    double top = 0.0;
    for (int n = std::max(0, cutoff - 2 * k + 1); n <= cutoff; ++n)
        top += std::norm(c[static_cast<std::size_t>(n)]);
    const double missing = std::max(0.0, 1.0 - c.norm2());
    out.tail_mass = top + missing;
    out.tail_warning = out.tail_mass > tail_tolerance;
    return out;
}

Tracked<FockVector> apply_raise_k(const FockVector& v, int k)
{
    if (k < 1)
        throw std::invalid_argument("apply_raise_k: k must be >= 1");
    const int N = v.cutoff();
    Tracked<FockVector> out{FockVector(N), 0.0};
    for (int n = 0; n <= N; ++n) {
        const cplx x = sqrt_factorial_ratio(n, k) * v[static_cast<std::size_t>(n)];
        if (n + k <= N)
            out.value[static_cast<std::size_t>(n + k)] = x;
        else
            out.leaked += std::norm(x);
    }
    return out;
}

Tracked<FockVector> apply_lower_k(const FockVector& v, int k)
{
    if (k < 1)
        throw std::invalid_argument("apply_lower_k: k must be >= 1");
    const int N = v.cutoff();
    Tracked<FockVector> out{FockVector(N), 0.0};
    for (int n = 0; n + k <= N; ++n)
        out.value[static_cast<std::size_t>(n)] =
            sqrt_factorial_ratio(n, k) * v[static_cast<std::size_t>(n + k)];
    return out;
}

} // namespace crjc
