#pragma once

// Cavity-field reduced density matrix and Wigner function, both from the
// closed-form r-series and from an independent displaced-parity oracle.
//
// Normalisation: W = (1/pi) sum_s (-1)^s <s|D^dag rho D|s>, so a coherent
// state peaks at 1/pi and the phase-space integral of W is 1/2.

#include "crjc/scenario.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace crjc {

struct FieldDensity
{
    Eigen::MatrixXcd rho;

    int cutoff() const { return static_cast<int>(rho.rows()) - 1; }
    double trace() const { return rho.trace().real(); }
    double purity() const { return (rho * rho).trace().real(); }
    double hermiticity_residual() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;
};

/// Partial trace over the qubit: e e^dag + g g^dag.
FieldDensity reduced_density(const QubitFieldState& state);

struct WignerGrid
{
    GridSpec spec;
    Eigen::MatrixXd values;  ///< n_im rows x n_re columns; row j is im(j)
    /// Set by the oracle when |alpha|^2 + <n> comes within 20% of the cutoff.
    bool cutoff_warning = false;

    double at(int i_re, int j_im) const { return values(j_im, i_re); }
    /// Riemann sum of W over the grid.
    double integral() const;
    /// Bilinear interpolation; throws outside the grid.
    double interpolate(double re, double im) const;
    double max_abs_diff(const WignerGrid& other) const;
};

/// How the closed-form evaluator obtains mu(alpha, n, s).
enum class MuRoute {
    table,     ///< batched diagonal recurrences (default)
    symmetry,  ///< pointwise mu(), using conj(mu(-alpha, s, n)) for n < s
    direct,    ///< pointwise mu_direct(), negative Laguerre superscripts
};

/// Upper bound on the number-state index s that contributes at |alpha| for
/// a field supported on n <= support.
int wigner_series_limit(int support, double abs_alpha);

/// Wigner function of the evolved field from the r1..r4 series.
WignerGrid wigner_closed(const Scenario& sc, double t, const GridSpec& grid,
                         MuRoute route = MuRoute::table);

/// Displaced-parity evaluation from rho. The displacement is the matrix
/// exponential of alpha a^dag - conj(alpha) a on an enlarged truncated
/// space, obtained from one eigendecomposition of the quadrature
/// i(a^dag - a).
WignerGrid wigner_oracle(const FieldDensity& rho, const GridSpec& grid);

/// Number of contiguous arcs on |alpha| = radius (720 samples) where W
/// exceeds threshold * (max of W on the circle).
int count_lobes(const WignerGrid& grid, double radius, double threshold = 0.5);

/// "re,im,W" rows, 17 significant digits.
void write_wigner_csv(std::ostream& os, const WignerGrid& grid);

/// ASCII graymap (P2, maxval 255). gray = round(255 (W - wmin)/(wmax - wmin));
/// the first image row is im_max. The header records the grid and the map.
void write_wigner_pgm(std::ostream& os, const WignerGrid& grid);

} // namespace crjc
