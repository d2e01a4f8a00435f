// include/beq/grid.hpp
//
// Uniform discretization of the truncated line [-L, L] and real fields
// sampled on it.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace beq {

class Grid {
 public:
  /// N >= 16 nodes on [-L, L]; spacing h = 2L/(N-1).
  Grid(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_; }
  double spacing() const { return h_; }

  /// Node i. Nodes are exactly antisymmetric: node(N-1-i) == -node(i).
  double node(std::size_t i) const {
    return (2.0 * static_cast<double>(i) - static_cast<double>(n_ - 1)) * half_spacing_;
  }
  std::vector<double> nodes() const;

  /// Same node count, every coordinate multiplied by `factor` > 0.
  Grid scaled(double factor) const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  double half_width_;
  std::size_t n_;
  double h_;
  double half_spacing_;
};

class Field {
 public:
  /// Throws InputError if sizes differ or any value is non-finite.
  Field(Grid grid, std::vector<double> values);

  static Field zeros(const Grid& grid);
  static Field from_function(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Throws InputError when the two grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace beq
