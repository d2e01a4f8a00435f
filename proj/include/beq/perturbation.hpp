// include/beq/perturbation.hpp
//
// Initial perturbation families g(x) added to the exact profile at t = 0.
// Every shape is rescaled so that ||g||_{H^s} (alpha symbol) equals the
// requested amplitude.

#pragma once

#include <cstdint>
#include <string_view>

#include "beq/grid.hpp"

namespace beq {

enum class Shape { Gaussian, SineWindow, RandomSmooth };

Shape parse_shape(std::string_view name);
std::string_view shape_name(Shape shape);

struct PerturbationSpec {
  Shape shape = Shape::Gaussian;
  double amplitude = 1e-3;  ///< H^s size sigma
  double center = 0.0;
  double width = 1.0;
  double wavenumber = 2.0;  ///< sine-window carrier; random-smooth cutoff
  std::uint64_t seed = 1;
};

/// Counter-based generator: the i-th draw for `seed` is independent of how
/// many other draws were made. Returns a value in [-1, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

/// Unscaled profile on the grid.
Field perturbation_shape(const Grid& grid, const PerturbationSpec& spec);

/// Profile rescaled to ||g||_{H^s} = spec.amplitude with symbol length alpha.
/// Throws InputError for amplitude <= 0, width <= 0 or a vanishing profile.
Field make_perturbation(const Grid& grid, const PerturbationSpec& spec, double s, double alpha);

}  // namespace beq
