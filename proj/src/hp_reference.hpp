#pragma once

// 50-digit reference values for the special-function self-checks. Shared by
// the verify suite and the test binaries; nothing in the library proper
// depends on it.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>

namespace crjc::reference {

using hp = boost::multiprecision::cpp_bin_float_50;

/// Explicit sum  sum_j (-1)^j C(s+a, s-j) x^j / j!, valid for a >= -s.
inline hp laguerre(int s, int a, const hp& x)
{
    hp sum = 0;
    for (int j = 0; j <= s; ++j) {
        const int top = s + a, bot = s - j;
        if (bot > top)
            continue;
        hp term = 1;
        for (int i = 1; i <= bot; ++i)
            term = term * (top - bot + i) / i;
        for (int i = 1; i <= j; ++i)
            term = term * x / i;
        sum += j % 2 ? -term : term;
    }
    return sum;
}

/// conj(alpha)^(n-s) sqrt(s!/n!) L_s^(n-s)(|alpha|^2) evaluated as written,
/// including n < s (negative superscript, alpha != 0).
inline std::complex<double> mu(std::complex<double> alpha, int n, int s)
{
    const hp re = alpha.real(), im = -alpha.imag();
    const hp x = re * re + im * im;
    hp br = re, bi = im;
    int e = n - s;
    if (e < 0) {
        br = re / x;
        bi = -im / x;
        e = -e;
    }
    hp pr = 1, pi = 0;
    for (int i = 0; i < e; ++i) {
        const hp nr = pr * br - pi * bi;
        pi = pr * bi + pi * br;
        pr = nr;
    }
    hp f = 1;
    if (n >= s)
        for (int j = s + 1; j <= n; ++j)
            f /= j;
    else
        for (int j = n + 1; j <= s; ++j)
            f *= j;
    const hp scale = sqrt(f) * laguerre(s, n - s, x);
    return {static_cast<double>(pr * scale), static_cast<double>(pi * scale)};
}

} // namespace crjc::reference
