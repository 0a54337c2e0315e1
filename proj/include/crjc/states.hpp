#pragma once

// Joint qubit-field states, the B^k map between the rotating and
// counter-rotating pictures, and initial-state construction.

#include "crjc/fock.hpp"

#include <string>
#include <vector>

namespace crjc {

/// Joint state as the excited-branch and ground-branch field amplitudes.
struct QubitFieldState
{
    FockVector e;
    FockVector g;

    QubitFieldState() = default;
    QubitFieldState(FockVector e_comp, FockVector g_comp);
    explicit QubitFieldState(int cutoff) : e(cutoff), g(cutoff) {}

    int cutoff() const { return e.cutoff(); }
    double norm2() const { return e.norm2() + g.norm2(); }

    QubitFieldState& operator*=(cplx s);

    friend bool operator==(const QubitFieldState&, const QubitFieldState&) = default;
};

/// alpha_e |e> (x) sum c_n |n> + alpha_g |g> (x) sum d_n |n>, divided by
/// N_eg = sqrt(|alpha_e|^2 + |alpha_g|^2). The closed-form observables read
/// the weights and field amplitudes separately, so they are kept here.
struct InitialCondition
{
    cplx alpha_e = 1.0;
    cplx alpha_g = 0.0;
    FockVector c;
    FockVector d;

    int cutoff() const { return c.cutoff(); }
    double weight_norm() const;
    QubitFieldState state() const;

    /// c == d (up to tol) or one of the weights vanishes.
    bool separable(double tol = 1e-12) const;
    /// The field factor of a separable condition.
    const FockVector& field() const;
};

/// Normalised joint state with e = (alpha_e/N_eg) c and g = (alpha_g/N_eg) d.
/// c and d must be unit vectors (1e-8) on the same cutoff.
QubitFieldState build_initial(cplx alpha_e, cplx alpha_g, const FockVector& c,
                              const FockVector& d);

/// Validated InitialCondition; same preconditions as build_initial.
InitialCondition make_initial(cplx alpha_e, cplx alpha_g, FockVector c, FockVector d);

/// Parses one of
///   excited-coherent(gamma)
///   ground-coherent(gamma)
///   superposition(alpha_e, alpha_g, gamma_e, gamma_g)
///   fock(e|g, n)
/// Complex arguments accept "x", "x+yi", "x-yi" or "yi".
struct ParsedInitial
{
    InitialCondition condition;
    /// Tail mass of the coherent amplitudes (zero for Fock states).
    double tail_mass = 0.0;
    bool tail_warning = false;
};
ParsedInitial parse_initial_spec(const std::string& spec, int cutoff, int k,
                                 double tail_tolerance = 1e-12);

cplx parse_complex(const std::string& text);

/// Applies (a^dag)^k to the excited branch and a^k to the ground branch.
/// No renormalisation.
Tracked<QubitFieldState> susy_map(const QubitFieldState& state, int k);

struct Preimage
{
    QubitFieldState value;
    double leaked = 0.0;   ///< g-branch mass raised past the cutoff
    double dropped = 0.0;  ///< e-branch mass on n < k, which has no preimage
};

/// e: a^k (n-k)!/n!, g: (a^dag)^k n!/(n+k)!. Inverse of susy_map on states
/// whose excited branch has no support below k.
Preimage rotating_preimage(const QubitFieldState& state, int k);

/// Singular values of the 2 x (N+1) coefficient matrix, descending.
std::vector<double> schmidt_coefficients(const QubitFieldState& state);

} // namespace crjc
