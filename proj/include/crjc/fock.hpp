#pragma once

// Truncated Fock-space primitives: amplitude vectors, k-photon ladder
// actions, factorial ratios, associated Laguerre polynomials and the
// displaced-number kernel mu(alpha, n, s).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace crjc {

using cplx = std::complex<double>;

/// Amplitudes of a single-mode field state on the levels n = 0..cutoff.
class FockVector
{
public:
    FockVector() = default;
    explicit FockVector(int cutoff);
    explicit FockVector(std::vector<cplx> amps);
    FockVector(std::initializer_list<cplx> amps);

    static FockVector basis(int cutoff, int n);

    int cutoff() const { return static_cast<int>(amps_.size()) - 1; }
    std::size_t dim() const { return amps_.size(); }

    cplx operator[](std::size_t n) const { return amps_[n]; }
    cplx& operator[](std::size_t n) { return amps_[n]; }

    /// Amplitude at n, or zero when n lies outside 0..cutoff.
    cplx at_or_zero(long n) const;

    std::span<const cplx> amps() const { return amps_; }
    std::span<cplx> amps() { return amps_; }

    double norm2() const;
    double norm() const;
    bool all_finite() const;

    /// Largest index whose amplitude is non-negligible (|c|^2 > floor).
    int support_top(double floor = 1e-32) const;

    FockVector& operator*=(cplx s);
    friend FockVector operator*(cplx s, FockVector v) { return v *= s; }

    friend bool operator==(const FockVector&, const FockVector&) = default;

private:
    std::vector<cplx> amps_;
};

/// Value plus the squared amplitude pushed past the cutoff by the operation.
template <typename T>
struct Tracked
{
    T value;
    double leaked = 0.0;
};

/// Rectangular sampling window in the complex phase-space plane.
struct GridSpec
{
    double re_min = -1.0;
    double re_max = 1.0;
    double im_min = -1.0;
    double im_max = 1.0;
    int n_re = 2;
    int n_im = 2;

    void validate() const;
    double re(int i) const;
    double im(int j) const;
    double d_re() const { return (re_max - re_min) / (n_re - 1); }
    double d_im() const { return (im_max - im_min) / (n_im - 1); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// (n+k)!/n! as a running product. Throws std::overflow_error when the
/// product leaves the double range.
double factorial_ratio(long n, int k);

/// sqrt((n+k)!/n!) as a product of square roots.
double sqrt_factorial_ratio(long n, int k);

/// Generalised Laguerre polynomial L_s^a(x) by the three-term recurrence in
/// the degree. Requires s >= 0 and a >= -s.
double assoc_laguerre(int s, int a, double x);

/// mu(alpha, n, s) = conj(alpha)^(n-s) sqrt(s!/n!) L_s^(n-s)(|alpha|^2).
/// For n < s the value is taken from conj(mu(-alpha, s, n)).
cplx mu(cplx alpha, int n, int s);

/// The same kernel evaluated from its defining expression for every (n, s),
/// including negative Laguerre superscripts. Requires alpha != 0 when n < s.
cplx mu_direct(cplx alpha, int n, int s);

struct CoherentAmplitudes
{
    FockVector amps;
    /// Mass on the top 2k retained levels plus the mass beyond the cutoff.
    double tail_mass = 0.0;
    /// Set when tail_mass exceeds the requested tolerance.
    bool tail_warning = false;
};

/// Coherent state exp(-|gamma|^2/2) gamma^n / sqrt(n!) for n = 0..cutoff.
CoherentAmplitudes coherent_amplitudes(cplx gamma, int cutoff, int k = 1,
                                       double tail_tolerance = 1e-12);

/// (a^dagger)^k: out[n+k] = sqrt((n+k)!/n!) v[n]; mass past the cutoff is
/// reported as leaked.
Tracked<FockVector> apply_raise_k(const FockVector& v, int k);

/// a^k: out[n] = sqrt((n+k)!/n!) v[n+k].
Tracked<FockVector> apply_lower_k(const FockVector& v, int k);

} // namespace crjc
