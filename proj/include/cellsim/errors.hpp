// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace cellsim {

// Invalid parameter file or parameter value. Message carries file:line where known.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A nonlinear solve failed to converge; message carries residual diagnostics.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plant integration cannot continue (step-rejection cascade, starved kinetics, ...).
struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cellsim
