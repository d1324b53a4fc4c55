#include "cs2d/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <thread>

#include "cs2d/compensated_sum.hpp"
#include "cs2d/errors.hpp"

namespace cs2d {

namespace {

struct Term {
  ModeIndex2D mode;
  Complex amplitude;
};

using CellFn = std::function<double(int i, int j)>;

void fill_rows(DensityGrid& grid, const CellFn& cell, int threads) {
  const int nx = grid.spec.nx;
  const int ny = grid.spec.ny;
  grid.values.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0.0);
  const auto work = [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < nx; ++i) {
        grid.values[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                    static_cast<std::size_t>(i)] = cell(i, j);
      }
    }
  };
  threads = std::clamp(threads, 1, ny);
  if (threads == 1) {
    work(0, ny);
    return;
  }
  std::vector<std::jthread> pool;
  const int chunk = (ny + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int j0 = t * chunk;
    const int j1 = std::min(ny, j0 + chunk);
    if (j0 < j1) pool.emplace_back(work, j0, j1);
  }
}

void finalize(DensityGrid& grid) {
  const auto& s = grid.spec;
  double mass = 0.0;
  grid.max_value = -1.0;
  for (int j = 0; j < s.ny; ++j) {
    const double wy = (j == 0 || j == s.ny - 1) ? 0.5 : 1.0;
    for (int i = 0; i < s.nx; ++i) {
      const double wx = (i == 0 || i == s.nx - 1) ? 0.5 : 1.0;
      const double v = grid.value(i, j);
      mass += wx * wy * v;
      if (v > grid.max_value) {
        grid.max_value = v;
        grid.peak_i = i;
        grid.peak_j = j;
      }
    }
  }
  grid.mass = mass * s.dx() * s.dy();
}

// |sum_k c_k psi_{n_k}(x) psi_{m_k}(y)|^2 on the grid using per-axis tables.
DensityGrid render_terms(const std::vector<Term>& terms, const GridSpec& spec, int threads) {
  spec.validate();
  int top_n = 0;
  int top_m = 0;
  for (const auto& t : terms) {
    top_n = std::max(top_n, t.mode.n);
    top_m = std::max(top_m, t.mode.m);
  }
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(spec.nx));
  std::vector<std::vector<double>> ys(static_cast<std::size_t>(spec.ny));
  for (int i = 0; i < spec.nx; ++i) xs[static_cast<std::size_t>(i)] = hermite_psi_table(top_n, spec.x(i));
  for (int j = 0; j < spec.ny; ++j) ys[static_cast<std::size_t>(j)] = hermite_psi_table(top_m, spec.y(j));

  DensityGrid grid;
  grid.spec = spec;
  fill_rows(
      grid,
      [&](int i, int j) {
        const auto& px = xs[static_cast<std::size_t>(i)];
        const auto& py = ys[static_cast<std::size_t>(j)];
        CompensatedSum sum;
        for (const auto& t : terms) {
          sum.add(t.amplitude * (px[static_cast<std::size_t>(t.mode.n)] *
                                 py[static_cast<std::size_t>(t.mode.m)]));
        }
        return std::norm(sum.value());
      },
      threads);
  finalize(grid);
  return grid;
}

void append_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max)) {
    throw NonFiniteError("grid bounds must be finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) throw ValidationError("grid range is inverted or empty");
  if (nx < 2 || ny < 2) throw ValidationError("grid needs at least 2 points per axis");
}

GridSpec GridSpec::symmetric(double half_width, int n) {
  return {-half_width, half_width, -half_width, half_width, n, n};
}

DensityGrid render(const SU2State& state, const GridSpec& spec, int threads) {
  std::vector<Term> terms;
  for (const auto& [idx, c] : su2_coefficients(state)) terms.push_back({idx, c});
  return render_terms(terms, spec, threads);
}

DensityGrid render(const SchrodingerState& state, const GridSpec& spec, int threads) {
  if (!state.ratio().is_isotropic()) {
    std::vector<Term> terms;
    for (const auto& t : schrodinger_terms(state)) terms.push_back({t.mode, t.amplitude});
    return render_terms(terms, spec, threads);
  }
  spec.validate();
  DensityGrid grid;
  grid.spec = spec;
  fill_rows(
      grid,
      [&](int i, int j) { return std::norm(schrodinger_wavefunction(state, spec.x(i), spec.y(j))); },
      threads);
  finalize(grid);
  return grid;
}

GridSpec default_grid_for(const CoeffVector& coeffs) {
  int e_cap = 1;
  for (const auto& [idx, c] : coeffs) {
    if (std::norm(c) >= 1e-14) e_cap = std::max(e_cap, idx.energy());
  }
  return GridSpec::symmetric(1.2 * (std::sqrt(2.0 * e_cap) + 3.0), 201);
}

GridSpec default_grid(const SU2State& state) { return default_grid_for(su2_coefficients(state)); }

GridSpec default_grid(const SchrodingerState& state) {
  return default_grid_for(schrodinger_coefficients(state));
}

void write_csv(std::ostream& os, const DensityGrid& grid) {
  std::string line;
  for (int j = 0; j < grid.spec.ny; ++j) {
    line.clear();
    for (int i = 0; i < grid.spec.nx; ++i) {
      if (i != 0) line.push_back(',');
      append_double(line, grid.value(i, j));
    }
    line.push_back('\n');
    os << line;
  }
}

double pgm_scale(const DensityGrid& grid) {
  return grid.max_value > 0.0 ? 65535.0 / grid.max_value : 0.0;
}

void write_pgm(std::ostream& os, const DensityGrid& grid) {
  os << "P5\n" << grid.spec.nx << ' ' << grid.spec.ny << "\n65535\n";
  const double scale = pgm_scale(grid);
  std::string row(static_cast<std::size_t>(grid.spec.nx) * 2, '\0');
  for (int j = grid.spec.ny - 1; j >= 0; --j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      const double v = std::clamp(std::round(grid.value(i, j) * scale), 0.0, 65535.0);
      const auto word = static_cast<unsigned>(v);
      row[static_cast<std::size_t>(2 * i)] = static_cast<char>((word >> 8) & 0xFF);
      row[static_cast<std::size_t>(2 * i + 1)] = static_cast<char>(word & 0xFF);
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

nlohmann::json grid_metadata(const DensityGrid& grid) {
  const auto& s = grid.spec;
  return {{"grid",
           {{"x_min", s.x_min},
            {"x_max", s.x_max},
            {"y_min", s.y_min},
            {"y_max", s.y_max},
            {"nx", s.nx},
            {"ny", s.ny}}},
          {"mass", grid.mass},
          {"peak", {{"i", grid.peak_i}, {"j", grid.peak_j}, {"x", grid.peak_x()}, {"y", grid.peak_y()}}},
          {"max_value", grid.max_value},
          {"scale", pgm_scale(grid)}};
}

}  // namespace cs2d
