// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace cellsim {

// Piecewise-linear lookup table. Abscissae must be strictly increasing;
// evaluation clamps to the end values outside the tabulated range.
class Table1D {
 public:
  Table1D() = default;
  Table1D(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  // Slope of the interpolant at x (one-sided constant 0 outside the range).
  double slope(double x) const;

  bool empty() const { return x_.empty(); }
  std::size_t size() const { return x_.size(); }
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& ordinates() const { return y_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace cellsim
