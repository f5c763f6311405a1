#include "firefront/raster_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "firefront/errors.hpp"

namespace firefront {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& msg) {
  throw ValidationError(path.string() + ": " + msg);
}

}  // namespace

ScalarField read_ascii_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open raster");

  const char* expected[6] = {"ncols", "nrows",    "xllcorner",
                             "yllcorner", "cellsize", "nodata_value"};
  double header[6];
  for (int k = 0; k < 6; ++k) {
    std::string key;
    if (!(in >> key >> header[k])) fail(path, "truncated header");
    if (lower(key) != expected[k]) {
      fail(path, "expected header key '" + std::string(expected[k]) + "', got '" + key + "'");
    }
  }
  const int nx = static_cast<int>(header[0]);
  const int ny = static_cast<int>(header[1]);
  if (nx != header[0] || ny != header[1] || nx < 1 || ny < 1) {
    fail(path, "ncols/nrows must be positive integers");
  }
  const double cellsize = header[4];
  if (!(cellsize > 0.0)) fail(path, "cellsize must be positive");
  const double nodata = header[5];

  GridSpec grid{nx, ny, header[2], header[3], cellsize, cellsize};
  ScalarField field(grid);
  for (int row = 0; row < ny; ++row) {
    const int j = ny - 1 - row;  // file rows run north to south
    for (int i = 0; i < nx; ++i) {
      double v;
      if (!(in >> v)) fail(path, "truncated data section");
      if (v == nodata) fail(path, "nodata cells are not supported");
      field(i, j) = v;
    }
  }
  std::string extra;
  if (in >> extra) fail(path, "trailing data after " + std::to_string(nx * ny) + " values");
  return field;
}

void write_ascii_grid(const std::filesystem::path& path, const ScalarField& field,
                      double nodata) {
  const GridSpec& g = field.grid();
  g.validate();
  if (std::abs(g.dx - g.dy) > 1e-12 * std::max(g.dx, g.dy)) {
    throw ValidationError("ascii rasters require square cells (dx == dy)");
  }
  std::ostringstream out;
  out.precision(17);
  out << "ncols " << g.nx << "\n"
      << "nrows " << g.ny << "\n"
      << "xllcorner " << g.x0 << "\n"
      << "yllcorner " << g.y0 << "\n"
      << "cellsize " << g.dx << "\n"
      << "NODATA_value " << nodata << "\n";
  for (int row = 0; row < g.ny; ++row) {
    const int j = g.ny - 1 - row;
    for (int i = 0; i < g.nx; ++i) {
      if (i) out << ' ';
      out << field(i, j);
    }
    out << '\n';
  }
  std::ofstream f(path);
  if (!f) throw ValidationError(path.string() + ": cannot open for writing");
  f << out.str();
  if (!f) throw ValidationError(path.string() + ": write failed");
}

}  // namespace firefront
