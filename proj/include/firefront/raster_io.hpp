#pragma once

#include <filesystem>

#include "firefront/grid.hpp"

namespace firefront {

// ESRI ASCII grid. Header: ncols, nrows, xllcorner, yllcorner, cellsize,
// NODATA_value (one per line, keys case-insensitive); then nrows lines of
// ncols values ordered north to south. Square cells only.
ScalarField read_ascii_grid(const std::filesystem::path& path);
void write_ascii_grid(const std::filesystem::path& path, const ScalarField& field,
                      double nodata = -9999.0);

}  // namespace firefront
