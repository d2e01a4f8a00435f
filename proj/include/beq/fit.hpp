// include/beq/fit.hpp

#pragma once

#include <span>

namespace beq {

/// Ordinary least-squares slope of y against x. Requires >= 2 distinct x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace beq
