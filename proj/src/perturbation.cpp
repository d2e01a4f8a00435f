// src/perturbation.cpp

#include "beq/perturbation.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "beq/errors.hpp"
#include "beq/spectral.hpp"

namespace beq {

Shape parse_shape(std::string_view name) {
  if (name == "gaussian") return Shape::Gaussian;
  if (name == "sine-window") return Shape::SineWindow;
  if (name == "random-smooth") return Shape::RandomSmooth;
  throw InputError("unknown perturbation shape '" + std::string(name) + "'");
}

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::Gaussian: return "gaussian";
    case Shape::SineWindow: return "sine-window";
    case Shape::RandomSmooth: return "random-smooth";
  }
  return "unknown";
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 finalizer applied to a seed/counter mix
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + (counter + 1) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
}

namespace {

std::vector<double> random_smooth(const Grid& grid, const PerturbationSpec& spec) {
  const std::size_t n = grid.size();
  std::vector<double> noise(n);
  for (std::size_t i = 0; i < n; ++i) noise[i] = counter_uniform(spec.seed, i);
  // Low-pass: keep |xi| <= wavenumber, then window to the support.
  PaddedSpectrum spectrum(noise, grid.spacing());
  auto& c = spectrum.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (spectrum.wavenumber(k) > spec.wavenumber) c[k] = 0.0;
  }
  std::vector<double> smooth = spectrum.inverse();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (grid.node(i) - spec.center) / spec.width;
    smooth[i] *= std::exp(-z * z);
  }
  return smooth;
}

}  // namespace

Field perturbation_shape(const Grid& grid, const PerturbationSpec& spec) {
  if (!(spec.width > 0.0)) throw InputError("perturbation width must be positive");
  if (!(spec.wavenumber > 0.0)) throw InputError("perturbation wavenumber must be positive");
  switch (spec.shape) {
    case Shape::Gaussian:
      return Field::from_function(grid, [&](double x) {
        const double z = (x - spec.center) / spec.width;
        return std::exp(-z * z);
      });
    case Shape::SineWindow:
      return Field::from_function(grid, [&](double x) {
        const double z = (x - spec.center) / spec.width;
        return std::sin(spec.wavenumber * (x - spec.center)) * std::exp(-z * z * z * z);
      });
    case Shape::RandomSmooth:
      return Field(grid, random_smooth(grid, spec));
  }
  throw InputError("unknown perturbation shape");
}

Field make_perturbation(const Grid& grid, const PerturbationSpec& spec, double s, double alpha) {
  if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
    throw InputError("perturbation amplitude sigma must be positive");
  }
  const Field raw = perturbation_shape(grid, spec);
  const double norm = spectral_sobolev_norm(raw.values(), grid.spacing(), s, alpha);
  if (!(norm > 0.0)) throw InputError("perturbation profile vanishes on the grid");
  std::vector<double> g = raw.vector();
  const double scale = spec.amplitude / norm;
  for (double& v : g) v *= scale;
  return Field(grid, std::move(g));
}

}  // namespace beq
