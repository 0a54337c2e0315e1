#pragma once

// Fidelity of the evolved cavity field with its initial pure state, using
// the square-root convention F = sqrt(<phi|rho|phi>).

#include "crjc/phase_space.hpp"
#include "crjc/scenario.hpp"

#include <vector>

namespace crjc {

struct FidelitySeries
{
    std::vector<double> times;
    std::vector<double> values;
};

/// sqrt(<phi|rho|phi>). Rejects rho that is not Hermitian (1e-10) or whose
/// trace is off by more than 1e-8, and raw values above 1 + 1e-8.
double fidelity_pure_vs_state(const FockVector& phi, const FieldDensity& rho);

/// Closed form for separable initial conditions (c = d, or a single branch).
/// Throws std::invalid_argument for entangled initial conditions.
double fidelity_closed(const Scenario& sc, double t);

FidelitySeries fidelity_series(const Scenario& sc, const std::vector<double>& times);

} // namespace crjc
