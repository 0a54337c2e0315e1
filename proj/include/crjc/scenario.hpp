#pragma once

#include "crjc/model.hpp"
#include "crjc/states.hpp"

namespace crjc {

/// Model parameters together with an initial condition in weight/amplitude
/// form; the input of every closed-form observable.
struct Scenario
{
    ModelParams params;
    InitialCondition initial;

    int cutoff() const { return initial.cutoff(); }
};

} // namespace crjc
