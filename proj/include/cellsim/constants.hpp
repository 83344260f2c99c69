// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace cellsim {

inline constexpr double kFaraday = 96485.33212;        // C/mol
inline constexpr double kGasConstant = 8.31446261815;  // J/(mol K)
inline constexpr double kZeroCelsius = 273.15;         // K

inline constexpr double celsius_to_kelvin(double c) { return c + kZeroCelsius; }
inline constexpr double kelvin_to_celsius(double k) { return k - kZeroCelsius; }

}  // namespace cellsim
