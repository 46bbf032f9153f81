#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "ilprior/numerics/density.hpp"

namespace ilprior {

/// "center,mass" header then one row per bin.
void write_density_csv(std::ostream& out, const Density1D& density);
/// resolution rows of resolution comma-separated masses, w0 by row; no header.
void write_grid_csv(std::ostream& out, const DensityGrid2D& grid);

/// Inverse of write_density_csv. Bounds are recovered from the (uniformly
/// spaced) centers. Throws LoadError naming the line on malformed input.
Density1D read_density_csv(const std::filesystem::path& path);
/// Inverse of write_grid_csv; the matrix must be square.
DensityGrid2D read_grid_csv(const std::filesystem::path& path);

/// Normalized histogram of `samples` on the density's bins with the density
/// drawn as a curve on top.
std::string svg_histogram(const Density1D& density, std::span<const double> samples, const std::string& title,
                          const std::string& x_label);

/// Heatmap of a (w0, w1) grid, w0 on the x axis, w1 on the y axis.
std::string svg_heatmap(const DensityGrid2D& grid, const std::string& title);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// Writes text to a file, replacing it. Throws Error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ilprior
