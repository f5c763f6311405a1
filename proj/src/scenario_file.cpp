#include "firefront/scenario_file.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "firefront/errors.hpp"
#include "firefront/raster_io.hpp"

namespace firefront {

namespace {

struct Value {
  enum class Kind { number, string, boolean, array } kind;
  double num = 0.0;
  std::string str;
  bool flag = false;
  std::vector<double> arr;
  int line = 0;
};

using Section = std::map<std::string, Value>;

[[noreturn]] void fail(const std::string& src, int line, const std::string& msg) {
  throw ValidationError(src + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Cuts an unquoted # comment.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"') quoted = !quoted;
    else if (s[k] == '#' && !quoted) return s.substr(0, k);
  }
  return s;
}

double parse_number(const std::string& src, int line, const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') fail(src, line, "not a number: '" + tok + "'");
  return v;
}

Value parse_value(const std::string& src, int line, const std::string& raw) {
  Value v;
  v.line = line;
  if (raw.empty()) fail(src, line, "missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') fail(src, line, "unterminated string");
    v.kind = Value::Kind::string;
    v.str = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']') fail(src, line, "unterminated array");
    v.kind = Value::Kind::array;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(src, line, "empty array element");
      v.arr.push_back(parse_number(src, line, item));
    }
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = Value::Kind::boolean;
    v.flag = raw == "true";
    return v;
  }
  v.kind = Value::Kind::number;
  v.num = parse_number(src, line, raw);
  return v;
}

class SectionReader {
 public:
  SectionReader(const std::string& src, const std::string& name, const Section* sec)
      : src_(src), name_(name), sec_(sec) {}

  bool present() const { return sec_ != nullptr; }

  const Value* find(const std::string& key) const {
    if (!sec_) return nullptr;
    const auto it = sec_->find(key);
    if (it == sec_->end()) return nullptr;
    used_.push_back(key);
    return &it->second;
  }

  double number(const std::string& key, double fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::number) {
      fail(src_, v->line, "[" + name_ + "] " + key + " must be a number");
    }
    return v->num;
  }

  std::optional<double> number_opt(const std::string& key) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (v->kind != Value::Kind::number) {
      fail(src_, v->line, "[" + name_ + "] " + key + " must be a number");
    }
    return v->num;
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::string) {
      fail(src_, v->line, "[" + name_ + "] " + key + " must be a quoted string");
    }
    return v->str;
  }

  bool flag(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::boolean) {
      fail(src_, v->line, "[" + name_ + "] " + key + " must be true or false");
    }
    return v->flag;
  }

  std::optional<std::vector<double>> array_opt(const std::string& key,
                                               std::size_t size) const {
    const Value* v = find(key);
    if (!v) return std::nullopt;
    if (v->kind != Value::Kind::array) {
      fail(src_, v->line, "[" + name_ + "] " + key + " must be an array");
    }
    if (v->arr.size() != size) {
      fail(src_, v->line, "[" + name_ + "] " + key + " must have " + std::to_string(size) +
                              " entries, got " + std::to_string(v->arr.size()));
    }
    return v->arr;
  }

  void finish() const {
    if (!sec_) return;
    for (const auto& [key, val] : *sec_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
        fail(src_, val.line, "unknown key '" + key + "' in [" + name_ + "]");
      }
    }
  }

 private:
  const std::string& src_;
  std::string name_;
  const Section* sec_;
  mutable std::vector<std::string> used_;
};

std::array<double, 8> to_array8(const std::vector<double>& v) {
  std::array<double, 8> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

}  // namespace

ScenarioSpec parse_scenario_text(const std::string& text, const std::string& src) {
  static const std::vector<std::string> known_sections = {
      "grid",  "elevation", "fuel",      "wind",   "front",       "time",
      "truth", "bounds",    "optimizer", "solver", "measurements"};

  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  std::string current;
  std::istringstream in(text);
  std::string rawline;
  int lineno = 0;
  while (std::getline(in, rawline)) {
    ++lineno;
    const std::string line = trim(strip_comment(rawline));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(src, lineno, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (std::find(known_sections.begin(), known_sections.end(), name) ==
          known_sections.end()) {
        fail(src, lineno, "unknown section [" + name + "]");
      }
      current = name;
      sections[current];
      section_lines[current] = lineno;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(src, lineno, "expected key = value");
    if (current.empty()) fail(src, lineno, "key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) fail(src, lineno, "empty key");
    const std::string val = trim(line.substr(eq + 1));
    if (sections[current].count(key)) fail(src, lineno, "duplicate key '" + key + "'");
    sections[current][key] = parse_value(src, lineno, val);
  }

  auto section = [&](const std::string& name) -> const Section* {
    const auto it = sections.find(name);
    return it == sections.end() ? nullptr : &it->second;
  };

  ScenarioSpec spec;

  {
    SectionReader r(src, "grid", section("grid"));
    spec.grid.nx = static_cast<int>(r.number("nx", spec.grid.nx));
    spec.grid.ny = static_cast<int>(r.number("ny", spec.grid.ny));
    spec.grid.x0 = r.number("x0", spec.grid.x0);
    spec.grid.y0 = r.number("y0", spec.grid.y0);
    spec.grid.dx = r.number("dx", spec.grid.dx);
    spec.grid.dy = r.number("dy", spec.grid.dy);
    r.finish();
  }
  {
    SectionReader r(src, "elevation", section("elevation"));
    spec.elevation.mode = r.str("mode", spec.elevation.mode);
    if (const auto c = r.array_opt("center", 2)) {
      spec.elevation.cx = (*c)[0];
      spec.elevation.cy = (*c)[1];
    }
    spec.elevation.height = r.number("height", spec.elevation.height);
    spec.elevation.width = r.number("width", spec.elevation.width);
    spec.elevation.path = r.str("path", spec.elevation.path);
    r.finish();
  }
  {
    SectionReader r(src, "fuel", section("fuel"));
    spec.fuel.mode = r.str("mode", spec.fuel.mode);
    spec.fuel.label = r.str("label", spec.fuel.label);
    if (const auto l = r.array_opt("line", 3)) spec.fuel.line = {(*l)[0], (*l)[1], (*l)[2]};
    spec.fuel.path = r.str("path", spec.fuel.path);
    r.finish();
  }
  {
    SectionReader r(src, "wind", section("wind"));
    spec.wind.ux = r.number("ux", spec.wind.ux);
    spec.wind.uy = r.number("uy", spec.wind.uy);
    spec.wind.speed = r.number_opt("speed");
    spec.wind.direction_deg = r.number_opt("direction_deg");
    spec.wind.units = r.str("units", spec.wind.units);
    r.finish();
  }
  {
    SectionReader r(src, "front", section("front"));
    spec.front.mode = r.str("mode", spec.front.mode);
    if (const auto c = r.array_opt("center", 2)) {
      spec.front.cx = (*c)[0];
      spec.front.cy = (*c)[1];
    }
    spec.front.radius = r.number("radius", spec.front.radius);
    spec.front.path = r.str("path", spec.front.path);
    r.finish();
  }
  {
    SectionReader r(src, "time", section("time"));
    spec.time.t0 = r.number("t0", spec.time.t0);
    spec.time.tf = r.number("tf", spec.time.tf);
    spec.time.dt = r.number("dt", spec.time.dt);
    r.finish();
  }
  {
    SectionReader r(src, "truth", section("truth"));
    if (const auto p = r.array_opt("p", 8)) spec.truth = to_array8(*p);
    r.finish();
    if (r.present() && !spec.truth) {
      fail(src, section_lines.at("truth"), "[truth] requires key p = [8 values]");
    }
  }
  {
    SectionReader r(src, "bounds", section("bounds"));
    if (const auto p = r.array_opt("p_min", 8)) spec.p_min = to_array8(*p);
    if (const auto p = r.array_opt("p_max", 8)) spec.p_max = to_array8(*p);
    r.finish();
  }
  {
    SectionReader r(src, "optimizer", section("optimizer"));
    spec.optimizer.mesh_init = r.number("mesh_init", spec.optimizer.mesh_init);
    spec.optimizer.expand = r.number("expand", spec.optimizer.expand);
    spec.optimizer.contract = r.number("contract", spec.optimizer.contract);
    spec.optimizer.tol = r.number("tol", spec.optimizer.tol);
    spec.optimizer.max_iter = static_cast<int>(r.number("max_iter", spec.optimizer.max_iter));
    spec.optimizer.seed =
        static_cast<std::uint64_t>(r.number("seed", static_cast<double>(spec.optimizer.seed)));
    spec.optimizer.parallel_poll = r.flag("parallel_poll", spec.optimizer.parallel_poll);
    if (const auto v = r.number_opt("max_evals")) {
      spec.optimizer.max_evals = static_cast<long long>(*v);
    }
    spec.optimizer.budget_seconds = r.number_opt("budget_seconds");
    r.finish();
  }
  {
    SectionReader r(src, "solver", section("solver"));
    spec.solver.cfl = r.number("cfl", spec.solver.cfl);
    spec.solver.reinit_period =
        static_cast<int>(r.number("reinit_period", spec.solver.reinit_period));
    r.finish();
  }
  {
    SectionReader r(src, "measurements", section("measurements"));
    spec.measurements.mode = r.str("mode", spec.measurements.mode);
    spec.measurements.path = r.str("path", spec.measurements.path);
    r.finish();
  }

  return spec;
}

ScenarioSpec load_scenario_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path.string());
}

namespace {

void emit(std::ostringstream& out, const char* key, double v) {
  out.precision(17);
  out << key << " = " << v << "\n";
}

void emit_array(std::ostringstream& out, const char* key, std::span<const double> v) {
  out.precision(17);
  out << key << " = [";
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << v[k];
  out << "]\n";
}

}  // namespace

std::string serialize_scenario_spec(const ScenarioSpec& s) {
  std::ostringstream out;
  out << "[grid]\n";
  out << "nx = " << s.grid.nx << "\n";
  out << "ny = " << s.grid.ny << "\n";
  emit(out, "x0", s.grid.x0);
  emit(out, "y0", s.grid.y0);
  emit(out, "dx", s.grid.dx);
  emit(out, "dy", s.grid.dy);

  out << "\n[elevation]\n";
  out << "mode = \"" << s.elevation.mode << "\"\n";
  if (s.elevation.mode == "hill" || s.elevation.mode == "valley") {
    const double c[2] = {s.elevation.cx, s.elevation.cy};
    emit_array(out, "center", c);
    emit(out, "height", s.elevation.height);
    emit(out, "width", s.elevation.width);
  }
  if (!s.elevation.path.empty()) out << "path = \"" << s.elevation.path << "\"\n";

  out << "\n[fuel]\n";
  out << "mode = \"" << s.fuel.mode << "\"\n";
  if (s.fuel.mode == "uniform") out << "label = \"" << s.fuel.label << "\"\n";
  if (s.fuel.mode == "split") emit_array(out, "line", s.fuel.line);
  if (!s.fuel.path.empty()) out << "path = \"" << s.fuel.path << "\"\n";

  out << "\n[wind]\n";
  if (s.wind.speed && s.wind.direction_deg) {
    emit(out, "speed", *s.wind.speed);
    emit(out, "direction_deg", *s.wind.direction_deg);
  } else {
    emit(out, "ux", s.wind.ux);
    emit(out, "uy", s.wind.uy);
  }
  out << "units = \"" << s.wind.units << "\"\n";

  out << "\n[front]\n";
  out << "mode = \"" << s.front.mode << "\"\n";
  if (s.front.mode == "circle") {
    const double c[2] = {s.front.cx, s.front.cy};
    emit_array(out, "center", c);
    emit(out, "radius", s.front.radius);
  }
  if (!s.front.path.empty()) out << "path = \"" << s.front.path << "\"\n";

  out << "\n[time]\n";
  emit(out, "t0", s.time.t0);
  emit(out, "tf", s.time.tf);
  emit(out, "dt", s.time.dt);

  if (s.truth) {
    out << "\n[truth]\n";
    emit_array(out, "p", *s.truth);
  }

  out << "\n[bounds]\n";
  emit_array(out, "p_min", s.p_min);
  emit_array(out, "p_max", s.p_max);

  out << "\n[optimizer]\n";
  emit(out, "mesh_init", s.optimizer.mesh_init);
  emit(out, "expand", s.optimizer.expand);
  emit(out, "contract", s.optimizer.contract);
  emit(out, "tol", s.optimizer.tol);
  out << "max_iter = " << s.optimizer.max_iter << "\n";
  out << "seed = " << s.optimizer.seed << "\n";
  out << "parallel_poll = " << (s.optimizer.parallel_poll ? "true" : "false") << "\n";
  if (s.optimizer.max_evals) out << "max_evals = " << *s.optimizer.max_evals << "\n";
  if (s.optimizer.budget_seconds) emit(out, "budget_seconds", *s.optimizer.budget_seconds);

  out << "\n[solver]\n";
  emit(out, "cfl", s.solver.cfl);
  out << "reinit_period = " << s.solver.reinit_period << "\n";

  out << "\n[measurements]\n";
  out << "mode = \"" << s.measurements.mode << "\"\n";
  if (!s.measurements.path.empty()) out << "path = \"" << s.measurements.path << "\"\n";

  return out.str();
}

namespace {

ScalarField resolve_elevation(const ScenarioSpec& spec, const GridSpec& grid,
                              const std::filesystem::path& base) {
  const auto& e = spec.elevation;
  if (e.mode == "flat") return ScalarField(grid, 0.0);
  if (e.mode == "hill" || e.mode == "valley") {
    if (!(e.width > 0.0)) throw ValidationError("[elevation] width must be > 0");
    if (!(e.height >= 0.0)) throw ValidationError("[elevation] height must be >= 0");
    const double sgn = e.mode == "hill" ? 1.0 : -1.0;
    ScalarField z(grid);
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double rx = grid.cell_x(i) - e.cx;
        const double ry = grid.cell_y(j) - e.cy;
        z(i, j) = sgn * e.height * std::exp(-(rx * rx + ry * ry) / (e.width * e.width));
      }
    }
    return z;
  }
  if (e.mode == "raster") {
    if (e.path.empty()) throw ValidationError("[elevation] raster mode requires path");
    ScalarField z = read_ascii_grid(base / e.path);
    if (!(z.grid() == grid)) {
      throw ValidationError("[elevation] raster grid does not match [grid]");
    }
    return z;
  }
  throw ValidationError("[elevation] unknown mode '" + e.mode + "'");
}

FuelMap resolve_fuel(const ScenarioSpec& spec, const GridSpec& grid,
                     const std::filesystem::path& base) {
  const auto& f = spec.fuel;
  if (f.mode == "uniform") {
    if (f.label != "A" && f.label != "B") {
      throw ValidationError("[fuel] label must be \"A\" or \"B\"");
    }
    return FuelMap(grid, f.label == "A" ? 0 : 1);
  }
  if (f.mode == "split") {
    if (f.line[0] == 0.0 && f.line[1] == 0.0) {
      throw ValidationError("[fuel] split line must have a nonzero normal");
    }
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(grid.cells()));
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double side =
            f.line[0] * grid.cell_x(i) + f.line[1] * grid.cell_y(j) + f.line[2];
        labels[static_cast<std::size_t>(grid.index(i, j))] = side >= 0.0 ? 0 : 1;
      }
    }
    return FuelMap(grid, std::move(labels));
  }
  if (f.mode == "raster") {
    if (f.path.empty()) throw ValidationError("[fuel] raster mode requires path");
    const ScalarField raw = read_ascii_grid(base / f.path);
    if (!(raw.grid() == grid)) {
      throw ValidationError("[fuel] raster grid does not match [grid]");
    }
    std::vector<std::uint8_t> labels(raw.values().size());
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const double v = raw.values()[k];
      if (v != 0.0 && v != 1.0) {
        throw ValidationError("[fuel] raster values must be 0 (fuel A) or 1 (fuel B)");
      }
      labels[k] = v == 0.0 ? 0 : 1;
    }
    return FuelMap(grid, std::move(labels));
  }
  throw ValidationError("[fuel] unknown mode '" + f.mode + "'");
}

Wind resolve_wind(const ScenarioSpec& spec) {
  const auto& w = spec.wind;
  double ux = w.ux;
  double uy = w.uy;
  if (w.speed || w.direction_deg) {
    if (!w.speed || !w.direction_deg) {
      throw ValidationError("[wind] speed and direction_deg must be given together");
    }
    const double rad = *w.direction_deg * std::numbers::pi / 180.0;
    ux = *w.speed * std::sin(rad);
    uy = *w.speed * std::cos(rad);
  }
  double scale = 1.0;
  if (w.units == "mph") {
    scale = 0.44704;  // to m/s
  } else if (w.units != "mps") {
    throw ValidationError("[wind] units must be \"mps\" or \"mph\"");
  }
  return Wind{ux * scale, uy * scale};
}

ScalarField resolve_front(const ScenarioSpec& spec, const GridSpec& grid,
                          const std::filesystem::path& base) {
  const auto& fr = spec.front;
  if (fr.mode == "circle") {
    return signed_distance_from_circle(grid, fr.cx, fr.cy, fr.radius);
  }
  if (fr.mode == "mask") {
    if (fr.path.empty()) throw ValidationError("[front] mask mode requires path");
    const ScalarField raw = read_ascii_grid(base / fr.path);
    if (!(raw.grid() == grid)) {
      throw ValidationError("[front] mask grid does not match [grid]");
    }
    std::vector<std::uint8_t> mask(raw.values().size());
    for (std::size_t k = 0; k < mask.size(); ++k) {
      mask[k] = raw.values()[k] > 0.0 ? 1 : 0;
    }
    return signed_distance_from_mask(grid, mask);
  }
  throw ValidationError("[front] unknown mode '" + fr.mode + "'");
}

}  // namespace

ScenarioBundle build_scenario(const ScenarioSpec& spec,
                              const std::filesystem::path& base_dir) {
  GridSpec grid{spec.grid.nx, spec.grid.ny, spec.grid.x0,
                spec.grid.y0, spec.grid.dx, spec.grid.dy};
  grid.validate();

  ScenarioBundle bundle;
  bundle.scenario.grid = grid;
  bundle.scenario.elevation = resolve_elevation(spec, grid, base_dir);
  bundle.scenario.fuel = resolve_fuel(spec, grid, base_dir);
  bundle.scenario.wind = resolve_wind(spec);
  bundle.scenario.initial_phi = resolve_front(spec, grid, base_dir);
  bundle.scenario.t0 = spec.time.t0;
  bundle.scenario.tf = spec.time.tf;
  bundle.scenario.dt = spec.time.dt;
  if (spec.truth) {
    bundle.scenario.truth = ParamVector::from_array(*spec.truth);
  }

  bundle.search.p_min.assign(spec.p_min.begin(), spec.p_min.end());
  bundle.search.p_max.assign(spec.p_max.begin(), spec.p_max.end());
  bundle.search.mesh_init = spec.optimizer.mesh_init;
  bundle.search.expand = spec.optimizer.expand;
  bundle.search.contract = spec.optimizer.contract;
  bundle.search.tol = spec.optimizer.tol;
  bundle.search.max_iter = spec.optimizer.max_iter;
  bundle.search.seed = spec.optimizer.seed;
  bundle.search.parallel_poll = spec.optimizer.parallel_poll;
  bundle.search.max_evals = spec.optimizer.max_evals;
  bundle.search.budget_seconds = spec.optimizer.budget_seconds;
  bundle.search.validate();

  bundle.solver.cfl = spec.solver.cfl;
  bundle.solver.reinit_period = spec.solver.reinit_period;

  if (spec.measurements.mode == "synthetic") {
    bundle.measurements.kind = MeasurementSource::Kind::synthetic;
  } else if (spec.measurements.mode == "dir") {
    if (spec.measurements.path.empty()) {
      throw ValidationError("[measurements] dir mode requires path");
    }
    bundle.measurements.kind = MeasurementSource::Kind::directory;
    bundle.measurements.dir = base_dir / spec.measurements.path;
  } else {
    throw ValidationError("[measurements] unknown mode '" + spec.measurements.mode + "'");
  }

  bundle.scenario.validate();
  bundle.solver.snapshot_times = bundle.scenario.default_snapshot_times();
  bundle.solver.validate(bundle.scenario.t0, bundle.scenario.tf);
  return bundle;
}

ScenarioBundle load_scenario_file(const std::filesystem::path& path) {
  const ScenarioSpec spec = load_scenario_spec(path);
  return build_scenario(spec, path.parent_path());
}

}  // namespace firefront
