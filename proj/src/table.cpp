// SPDX-License-Identifier: Apache-2.0
#include "cellsim/table.hpp"

#include <algorithm>

#include "cellsim/errors.hpp"

namespace cellsim {

Table1D::Table1D(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw ConfigError("table: column lengths differ");
  if (x_.size() < 2) throw ConfigError("table: needs at least two rows");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1]))
      throw ConfigError("table: abscissae must be strictly increasing");
  }
}

std::size_t Table1D::segment(double x) const {
  // Index i of the segment [x_i, x_{i+1}] used for interpolation.
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double Table1D::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  std::size_t i = segment(x);
  double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return y_[i] + w * (y_[i + 1] - y_[i]);
}

double Table1D::slope(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  std::size_t i = segment(x);
  return (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
}

}  // namespace cellsim
