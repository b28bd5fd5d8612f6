#pragma once

#include <functional>
#include <string>
#include <utility>

#include "pdem/interval.hpp"
#include "pdem/mass.hpp"

namespace pdem {

/// H = -d/dx (1/M) d/dx + V_eff on an open x-interval.
struct PDEMProblem {
    MassProfile profile;
    std::function<double(double)> veff;
    Interval domain;
    /// E = energy_scale * eps for problems built from a reference potential.
    double energy_scale = 1.0;
    std::string description;
};

}  // namespace pdem
