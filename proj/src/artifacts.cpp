#include "firefront/artifacts.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "firefront/errors.hpp"
#include "firefront/raster_io.hpp"

namespace firefront {

namespace {

std::string snapshot_name(const char* stem, int k, const char* ext) {
  std::ostringstream s;
  s << stem << '_';
  s.width(4);
  s.fill('0');
  s << k << ext;
  return s.str();
}

}  // namespace

void write_run_artifacts(const std::filesystem::path& out_dir, const FrontSeries& series) {
  if (series.empty()) throw ValidationError("refusing to write an empty front series");
  const auto fronts = out_dir / "fronts";
  const auto contours = out_dir / "contours";
  std::filesystem::create_directories(fronts);
  std::filesystem::create_directories(contours);

  std::ostringstream times;
  times.precision(17);
  times << "index,time,filename\n";
  for (int k = 0; k < series.size(); ++k) {
    const std::string name = snapshot_name("front", k, ".asc");
    write_ascii_grid(fronts / name, sign_raster(series.field(k)));
    times << k << ',' << series.time(k) << ',' << name << '\n';

    std::ostringstream csv;
    csv.precision(17);
    csv << "polyline,closed,x,y\n";
    const auto lines = extract_zero_contour(series.field(k));
    for (std::size_t li = 0; li < lines.size(); ++li) {
      for (const Point& pt : lines[li].points) {
        csv << li << ',' << (lines[li].closed ? 1 : 0) << ',' << pt.x << ',' << pt.y << '\n';
      }
    }
    std::ofstream cf(contours / snapshot_name("contour", k, ".csv"));
    if (!cf) throw ValidationError("cannot write contour csv");
    cf << csv.str();
  }
  std::ofstream tf(fronts / "times.csv");
  if (!tf) throw ValidationError("cannot write times.csv");
  tf << times.str();
}

FrontSeries load_measured_series(const std::filesystem::path& dir, const GridSpec& expected) {
  const auto index_path = dir / "times.csv";
  std::ifstream in(index_path);
  if (!in) {
    // Accept the artifacts layout directly (dir may be a run output root).
    const auto nested = dir / "fronts" / "times.csv";
    if (std::filesystem::exists(nested)) {
      return load_measured_series(dir / "fronts", expected);
    }
    throw ValidationError(index_path.string() + ": cannot open measurement index");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(index_path.string() + ": empty index");
  }
  FrontSeries out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string idx, time_s, name;
    if (!std::getline(ss, idx, ',') || !std::getline(ss, time_s, ',') ||
        !std::getline(ss, name, ',')) {
      throw ValidationError(index_path.string() + ":" + std::to_string(lineno) +
                            ": expected index,time,filename");
    }
    if (!name.empty() && name.back() == '\r') name.pop_back();
    char* end = nullptr;
    const double t = std::strtod(time_s.c_str(), &end);
    if (end == time_s.c_str()) {
      throw ValidationError(index_path.string() + ":" + std::to_string(lineno) +
                            ": bad time value '" + time_s + "'");
    }
    const ScalarField raw = read_ascii_grid(dir / name);
    const GridSpec& g = raw.grid();
    const bool match = g.nx == expected.nx && g.ny == expected.ny &&
                       std::abs(g.x0 - expected.x0) <= 1e-6 &&
                       std::abs(g.y0 - expected.y0) <= 1e-6 &&
                       std::abs(g.dx - expected.dx) <= 1e-9 &&
                       std::abs(g.dy - expected.dy) <= 1e-9;
    if (!match) {
      throw ValidationError(dir.string() + "/" + name +
                            ": raster grid does not match the scenario grid");
    }
    ScalarField signs(expected);
    for (int k = 0; k < signs.size(); ++k) signs[k] = raw[k] > 0.0 ? 1.0 : -1.0;
    out.push(t, std::move(signs));
  }
  if (out.empty()) throw ValidationError(index_path.string() + ": no snapshots listed");
  return out;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,J,mesh,evaluations,n,eps_a,eps_b,a_a,a_b,alpha,beta_a,beta_b\n";
  for (const TraceRow& row : trace) {
    out << row.iteration << ',' << row.fval << ',' << row.mesh << ',' << row.evaluations;
    for (double v : row.point) out << ',' << v;
    out << '\n';
  }
  std::ofstream f(path);
  if (!f) throw ValidationError(path.string() + ": cannot open for writing");
  f << out.str();
}

nlohmann::json estimation_report_json(const EstimationReport& report) {
  nlohmann::json j;
  j["type"] = "estimation";
  j["param_names"] = {"n", "eps_a", "eps_b", "a_a", "a_b", "alpha", "beta_a", "beta_b"};
  j["p_hat"] = report.p_hat.to_array();
  j["J"] = report.J;
  j["r"] = report.r;
  if (report.e) j["e"] = *report.e;
  else j["e"] = nullptr;
  nlohmann::json sims = nlohmann::json::array();
  for (const auto& s : report.similarity) {
    sims.push_back({{"time", s.time},
                    {"ssi", s.scores.ssi},
                    {"jsc", s.scores.jsc},
                    {"ks", s.scores.ks}});
  }
  j["similarity"] = sims;
  j["stop"] = to_string(report.stop);
  j["iterations"] = report.iterations;
  j["evaluations"] = report.evaluations;
  j["wall_seconds"] = report.wall_seconds;
  j["seed"] = report.seed;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream f(path);
  if (!f) throw ValidationError(path.string() + ": cannot open for writing");
  f << j.dump(2) << '\n';
}

}  // namespace firefront
