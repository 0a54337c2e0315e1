#pragma once

// Dense joint qubit-field Hamiltonians, the k-photon intertwiner B^k and the
// excitation-like constants of motion. Basis ordering: |e,0..N> then |g,0..N>.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace crjc {

using JointMatrix = Eigen::MatrixXcd;

/// A real function of the photon number, n -> value. Supports polynomials
/// in n and a scaled parity (-1)^n. Defined for negative n as well, since
/// the partner Hamiltonians evaluate shifted arguments n -/+ k.
class DiagonalFn
{
public:
    enum class Kind { polynomial, parity };

    static DiagonalFn polynomial(std::vector<double> coeffs);
    static DiagonalFn parity(double scale = 1.0);
    static DiagonalFn constant(double c) { return polynomial({c}); }
    static DiagonalFn identity() { return polynomial({0.0, 1.0}); }

    /// Parses "poly(c0, c1, ...)" or "parity(scale)".
    static DiagonalFn parse(const std::string& text);
    std::string to_string() const;

    double operator()(long n) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    friend bool operator==(const DiagonalFn&, const DiagonalFn&) = default;

private:
    DiagonalFn(Kind kind, std::vector<double> coeffs) : kind_(kind), coeffs_(std::move(coeffs)) {}

    Kind kind_ = Kind::polynomial;
    std::vector<double> coeffs_;
};

/// Physical parameters in units of the cavity frequency.
///
/// Without F/G/f overrides the model is the Kerr/multiphoton family
/// (F = 0, G = chi n^2, f = 1), which is the family with closed-form
/// propagators.
struct ModelParams
{
    double delta = 0.0;
    double g = 0.1;
    double chi = 0.0;
    int k = 1;
    std::optional<DiagonalFn> F;
    std::optional<DiagonalFn> G;
    std::optional<DiagonalFn> f;

    void validate() const;
    bool kerr_family() const { return !F && !G && !f; }

    double F_at(long n) const;
    double G_at(long n) const;
    double f_at(long n) const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

inline Eigen::Index e_index(int n) { return n; }
inline Eigen::Index g_index(int cutoff, int n) { return cutoff + 1 + n; }

/// Rotating Hamiltonian H0 = (delta/2 + F) sz + G + g[a^k f s+ + f (a^dag)^k s-].
JointMatrix build_H0(const ModelParams& params, int cutoff);

/// Rotating Kerr Hamiltonian with shifted diagonals: e-branch delta/2 +
/// chi (n+k)^2, g-branch -delta/2 + chi (n-k)^2. Its closed-form propagator
/// is the rotating block propagator.
JointMatrix build_H0_shifted_kerr(const ModelParams& params, int cutoff);

/// Counter-rotating partner of the rotating source Hamiltonian (see
/// rotating_source). For the Kerr family this is
/// delta/2 sz + chi n^2 + g[a^k s- + (a^dag)^k s+].
JointMatrix build_H(const ModelParams& params, int cutoff);

/// The rotating Hamiltonian build_H is intertwined with: the shifted Kerr
/// form for the Kerr family, otherwise build_H0.
JointMatrix rotating_source(const ModelParams& params, int cutoff);

/// B^k = diag((a^dag)^k, a^k).
JointMatrix build_Bk(int k, int cutoff);

/// Largest |B^k H0 - H B^k| entry over rows and columns with Fock index
/// <= cutoff - guard - k.
double intertwining_residual(const ModelParams& params, int cutoff, int guard);

enum class Motion { C0, C };

/// C0 = n + k sz/2 (rotating) or C = n - k sz/2 (counter-rotating).
JointMatrix constant_of_motion(Motion which, int k, int cutoff);

/// Largest |M - M^dag| entry.
double hermiticity_residual(const JointMatrix& m);

/// Largest entry magnitude over rows and columns with Fock index <= limit
/// in both branches.
double interior_max_abs(const JointMatrix& m, int cutoff, int limit);

} // namespace crjc
