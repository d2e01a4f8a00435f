// src/grid.cpp

#include "beq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beq/errors.hpp"

namespace beq {

Grid::Grid(double half_width, std::size_t n_points) : half_width_(half_width), n_(n_points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw InputError("grid half width must be positive");
  if (n_points < 16) throw InputError("grid needs at least 16 points");
  h_ = 2.0 * half_width / static_cast<double>(n_points - 1);
  half_spacing_ = half_width / static_cast<double>(n_points - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

Grid Grid::scaled(double factor) const {
  if (!(factor > 0.0)) throw InputError("grid scale factor must be positive");
  return Grid(half_width_ * factor, n_);
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InputError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                     std::to_string(grid_.size()) + " nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("field contains a non-finite value");
  }
}

Field Field::zeros(const Grid& grid) { return Field(grid, std::vector<double>(grid.size(), 0.0)); }

Field Field::from_function(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.node(i));
  return Field(grid, std::move(v));
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw InputError(std::string(where) + ": grid mismatch");
}

}  // namespace beq
