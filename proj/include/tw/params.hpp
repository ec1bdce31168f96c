// Physical parameters shared by every module.
#pragma once

#include "tw/grid.hpp"

namespace tw {

// Crossing parameter of the rational R-matrices.
inline constexpr cplx eta{0.0, 1.0};

// Coupling J (energy units), magnetic field h (energy units), inverse
// temperature beta (1/energy).  The antiferromagnetic regime has J > 0.
struct ModelParams {
    double J = 1.0;
    double h = 0.0;
    double beta = 1.0;

    void validate() const {
        if (!(beta > 0.0)) throw NumericsError("ModelParams: beta must be > 0");
    }
};

}  // namespace tw
