#pragma once

#include <filesystem>
#include <optional>

#include "vpp/grid.hpp"

namespace vpp {

/// Legacy VTK (STRUCTURED_POINTS, ASCII) dump of a state, sampled at cell
/// centers: arrays u, v (face averages), p and div. See docs/formats.md.
/// Throws IoError when the file cannot be written.
void write_fields_vtk(const std::filesystem::path& path, const VelocityField& v, const ScalarCellField& p, int step,
                      double t);

struct CellData {
    VelocityField velocity;               ///< interpolated to interior faces
    std::optional<ScalarCellField> pressure;
};

/// Reads a file in the same format. The lattice must match the grid; arrays
/// u and v are required, p is optional and other arrays are ignored.
/// Interior faces take the mean of their two cells, boundary faces are zero.
/// Throws IoError on unreadable files and std::invalid_argument on
/// malformed content.
CellData read_fields_vtk(const std::filesystem::path& path, const Grid& grid);

}  // namespace vpp
