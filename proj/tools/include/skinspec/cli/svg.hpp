#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "skinspec/io.hpp"

namespace skinspec::cli {

struct Segment {
  double x0, y0, x1, y1;
};

/// Level-set segments of a scalar field sampled on a regular grid
/// (values[iy * nx + ix] at (xs[ix], ys[iy])), by marching squares with
/// linear interpolation along cell edges. Saddle cells are resolved with the
/// cell-centre average.
std::vector<Segment> marching_squares(std::span<const double> values, std::span<const double> xs,
                                      std::span<const double> ys, double level);

/// G region (filled cells coloured by winding sign) with sigma_det points.
/// Inputs are the region.csv and sigma_det.csv tables.
std::string render_region_svg(const io::CsvTable& region, const io::CsvTable& sigma_det);

/// epsilon contours of sigma_min (one colour per level) with eigenvalue dots.
/// Contours are drawn on log10(sigma_min) so the levels are spaced evenly.
std::string render_pseudospectrum_svg(const io::CsvTable& sigma_min, const io::CsvTable& eigenvalues,
                                      std::span<const double> epsilons);

/// |x_j| against site for every mode; zero modes drawn in gray.
std::string render_modes_svg(const io::CsvTable& modes);

}  // namespace skinspec::cli
