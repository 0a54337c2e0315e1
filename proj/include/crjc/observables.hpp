#pragma once

// Expectation values of qubit-diagonal operators diag(p(n), q(n)) for the
// counter-rotating evolution, evaluated from the E/F/G series without
// forming the evolved state.

#include "crjc/scenario.hpp"

#include <functional>
#include <optional>
#include <span>

namespace crjc {

struct DiagonalObservable
{
    std::function<double(long)> p;  ///< excited-branch weight
    std::function<double(long)> q;  ///< ground-branch weight

    static DiagonalObservable sigma_z();
    static DiagonalObservable n_power(int j);
    /// n - (k/2) sigma_z
    static DiagonalObservable excitation_c(int k);
};

double expect_diagonal_closed(const Scenario& sc, double t, const DiagonalObservable& obs);

/// <state| O |state> on an explicit joint state.
double expect_diagonal_direct(const QubitFieldState& state, const DiagonalObservable& obs);

double atomic_inversion(const Scenario& sc, double t);
double expect_n_power(const Scenario& sc, double t, int j);

/// (<n^2> - <n>^2)/<n> - 1; empty when <n> <= 1e-9.
std::optional<double> mandel_q(const Scenario& sc, double t);
std::optional<double> mandel_q_from_moments(double n1, double n2);

struct LocalMin
{
    double t;
    double value;
};

/// Earliest interior sample strictly below both neighbours.
std::optional<LocalMin> first_local_min(std::span<const double> times,
                                        std::span<const double> values);

} // namespace crjc
