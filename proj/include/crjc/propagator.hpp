#pragma once

// Closed-form time evolution of the Kerr/multiphoton family in both
// pictures. Each propagator is a set of four weight vectors acting on the
// invariant two-level blocks, so applying it costs O(N).

#include "crjc/model.hpp"
#include "crjc/states.hpp"

#include <vector>

namespace crjc {

/// E_n, F_n, G_n at one Fock index and time.
struct EFGTriple
{
    cplx E;
    cplx F;
    cplx G;
};

/// Generalised Rabi frequency. For m >= 0 the positive root of
/// g^2 (m+k)!/m! + [delta/2 + chi(mk + k^2/2)]^2; for m < 0 the coupling
/// term is absent and the signed detuning delta/2 + chi(mk + k^2/2) is
/// returned.
double rabi_frequency(long m, const ModelParams& params);

/// sin(omega t)/omega, continued to t at omega = 0. Uses a Taylor series
/// when |omega t| < 1e-4.
double sin_over_omega(double omega, double t);

/// E_n = exp(-i chi t n(n+k)), F_n = cos(W t) + i d sin(W t)/W,
/// G_n = -i g sin(W t)/W, with d = delta/2 + chi(nk + k^2/2), W = Omega_n.
/// Valid for n >= -k.
EFGTriple efg(long n, double t, const ModelParams& params);

/// Four-block propagator. Diagonal weights act in place; coupling weights
/// connect the pair (|e,n>, |g,n+k>) for the rotating picture or
/// (|e,n+k>, |g,n>) for the counter-rotating one, indexed by the lower
/// Fock number n of the pair.
struct BlockPropagator
{
    enum class Picture { rotating, counter_rotating };

    Picture picture = Picture::counter_rotating;
    int k = 1;
    int cutoff = 0;
    std::vector<cplx> diag_e;    ///< length N+1
    std::vector<cplx> diag_g;    ///< length N+1
    std::vector<cplx> e_from_g;  ///< length N+1, index = lower Fock number
    std::vector<cplx> g_from_e;  ///< length N+1, index = lower Fock number

    /// Both output branches are computed from the unmodified input.
    Tracked<QubitFieldState> apply(const QubitFieldState& state) const;

    /// Dense form on the truncated joint space (couplings past the cutoff
    /// are omitted).
    JointMatrix dense() const;
};

/// Propagator of build_H (Kerr family), up to the global phase
/// exp(-i chi t k^2/2).
BlockPropagator counter_propagator(const ModelParams& params, int cutoff, double t);

/// Propagator of build_H0_shifted_kerr, up to the same global phase.
BlockPropagator rotating_propagator(const ModelParams& params, int cutoff, double t);

Tracked<QubitFieldState> propagate_counter(const QubitFieldState& state, double t,
                                           const ModelParams& params);
Tracked<QubitFieldState> propagate_rotating(const QubitFieldState& state, double t,
                                            const ModelParams& params);

} // namespace crjc
