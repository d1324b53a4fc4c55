#pragma once

// Density grids |<x,y|state>|^2 and their CSV / PGM / JSON serializations.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cs2d/schrodinger.hpp"
#include "cs2d/su2.hpp"
#include "json.hpp"

namespace cs2d {

struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  int nx = 2;
  int ny = 2;

  /// Throws ValidationError on inverted ranges or fewer than 2 points per axis.
  void validate() const;
  [[nodiscard]] double dx() const { return (x_max - x_min) / (nx - 1); }
  [[nodiscard]] double dy() const { return (y_max - y_min) / (ny - 1); }
  [[nodiscard]] double x(int i) const { return x_min + i * dx(); }
  [[nodiscard]] double y(int j) const { return y_min + j * dy(); }

  static GridSpec symmetric(double half_width, int n);
};

/// Values are stored row-major with rows indexed by y: value(i, j) sits at
/// j * nx + i. The peak is the first maximum met in that storage order, i.e.
/// lowest j, then lowest i.
struct DensityGrid {
  GridSpec spec;
  std::vector<double> values;
  double mass = 0.0;
  int peak_i = 0;
  int peak_j = 0;
  double max_value = 0.0;

  [[nodiscard]] double value(int i, int j) const {
    return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) +
                  static_cast<std::size_t>(i)];
  }
  [[nodiscard]] double peak_x() const { return spec.x(peak_i); }
  [[nodiscard]] double peak_y() const { return spec.y(peak_j); }
};

/// Rows are split across `threads` workers; every cell is computed the same
/// way regardless of the split, so the output does not depend on it.
DensityGrid render(const SU2State& state, const GridSpec& spec, int threads = 1);
DensityGrid render(const SchrodingerState& state, const GridSpec& spec, int threads = 1);

/// Symmetric grid of half-width 1.2 (sqrt(2 E_cap) + 3), 201 x 201, where
/// E_cap is the largest n + m + 1 over occupied modes (|c|^2 >= 1e-14).
GridSpec default_grid(const SU2State& state);
GridSpec default_grid(const SchrodingerState& state);
GridSpec default_grid_for(const CoeffVector& coeffs);

/// ny rows (y ascending) of nx values (x ascending), 17 significant digits.
void write_csv(std::ostream& os, const DensityGrid& grid);

/// Binary P5, maxval 65535, first row is y_max; values scaled by 65535 / max.
void write_pgm(std::ostream& os, const DensityGrid& grid);

/// 65535 / max_value (0 for an all-zero grid).
double pgm_scale(const DensityGrid& grid);

/// Grid spec, mass, peak and scale factor. Callers add state parameters.
nlohmann::json grid_metadata(const DensityGrid& grid);

}  // namespace cs2d
