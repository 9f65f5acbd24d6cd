//
//  sdot: Knothe-to-Brenier continuation for semi-discrete optimal transport
//
//  Copyright 2026 The sdot Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
//

#include "sdot/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "sdot/errors.hpp"

namespace sdot::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("malformed number '" + s + "'");
  return v;
}

std::vector<Point> parse_points(const nlohmann::json& j, const char* key) {
  if (!j.is_array()) throw ConfigError(std::string(key) + " must be an array of [x1, x2] pairs");
  std::vector<Point> pts;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw ConfigError(std::string(key) + " entries must be [x1, x2] number pairs");
    }
    pts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return pts;
}

std::vector<std::string> read_rows(std::istream& is, std::vector<std::string>& header) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty CSV input");
  header = split(line);
  std::vector<std::string> rows;
  while (std::getline(is, line)) {
    if (!line.empty()) rows.push_back(line);
  }
  return rows;
}

}  // namespace

ProblemConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ProblemConfig c;
  try {
    if (j.contains("omega")) c.omega = ConvexPolygon::from_vertices(parse_points(j["omega"], "omega"));
    if (j.contains("atoms")) c.atoms = parse_points(j["atoms"], "atoms");
    if (j.contains("n_atoms")) c.n_atoms = j["n_atoms"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("schedule")) {
      const auto& s = j["schedule"];
      if (s.contains("kind")) {
        const auto kind = s["kind"].get<std::string>();
        if (kind == "standard") {
          c.schedule.kind = ScheduleKind::standard;
        } else if (kind == "full_sweep") {
          c.schedule.kind = ScheduleKind::full_sweep;
        } else {
          throw ConfigError("schedule.kind must be 'standard' or 'full_sweep', got '" + kind + "'");
        }
      }
      if (s.contains("steps")) c.schedule.steps = s["steps"].get<std::size_t>();
    }
    if (j.contains("project_every")) c.project_every = j["project_every"].get<std::size_t>();
    if (j.contains("snapshots")) c.snapshots = j["snapshots"].get<std::size_t>();
    if (j.contains("eps")) c.eps = j["eps"].get<double>();
    if (j.contains("grid")) c.grid = j["grid"].get<std::size_t>();
    if (j.contains("gap_min")) c.gap_min = j["gap_min"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field has the wrong type: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("omega: ") + e.what());
  }
  if (c.schedule.steps == 0) throw ConfigError("schedule.steps must be positive");
  if (c.atoms.empty() && c.n_atoms == 0) throw ConfigError("n_atoms must be positive");
  if (c.eps < 0.0) throw ConfigError("eps must be non-negative");
  if (c.grid < 3) throw ConfigError("grid needs at least three points");
  return c;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

std::vector<Point> generate_atoms(const ConvexPolygon& omega, std::size_t n, std::uint64_t seed,
                                  bool distinct_first, double gap_min) {
  const double gap = gap_min > 0.0 ? gap_min : default_gap(omega);
  double lo1 = std::numeric_limits<double>::infinity();
  double hi1 = -lo1;
  for (const auto& v : omega.vertices()) {
    lo1 = std::min(lo1, v.x1);
    hi1 = std::max(hi1, v.x1);
  }
  const auto [lo2, hi2] = vertical_extent(omega);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u1(lo1, hi1);
  std::uniform_real_distribution<double> u2(lo2, hi2);

  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t attempts = 0; pts.size() < n; ++attempts) {
    if (attempts > 1000000) throw ConfigError("could not place atoms satisfying the gap constraints");
    const Point p{u1(rng), u2(rng)};
    if (!contains(omega, p)) continue;
    const bool clash = std::any_of(pts.begin(), pts.end(), [&](Point q) {
      return std::abs(q.x2 - p.x2) < gap || (distinct_first && std::abs(q.x1 - p.x1) < gap);
    });
    if (!clash) pts.push_back(p);
  }
  return pts;
}

Atoms resolve_atoms(const ProblemConfig& config) {
  const bool first = config.schedule.kind == ScheduleKind::full_sweep;
  std::vector<Point> pts = config.atoms;
  if (pts.empty()) pts = generate_atoms(config.omega, config.n_atoms, config.seed, first, config.gap_min);
  try {
    return make_atoms(std::move(pts), config.omega, {config.gap_min, first});
  } catch (const DegenerateAtoms& e) {
    throw ConfigError(std::string("invalid atoms: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid atoms: ") + e.what());
  }
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_percent(double fraction) {
  char buf[32];
  double pct = std::round(100.0 * fraction * 100.0) / 100.0;
  if (pct == 0.0) pct = 0.0;  // no "-0.00%"
  std::snprintf(buf, sizeof buf, "%.2f%%", pct);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const std::size_t n = traj.samples.empty() ? 0 : traj.samples.front().areas.size();
  os << "step,frame,eps,weight_ratio";
  for (std::size_t i = 1; i <= n; ++i) os << ",p_" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",area_" << i;
  os << ",z1,z2,min_eig\n";
  for (const Sample& s : traj.samples) {
    os << s.step << ',' << to_string(s.frame) << ',' << format_real(s.eps) << ','
       << format_real(s.weight_ratio);
    for (Eigen::Index i = 0; i < s.prices.size(); ++i) os << ',' << format_real(s.prices[i]);
    for (double a : s.areas) os << ',' << format_real(a);
    os << ',' << format_real(s.correlation.x1) << ',' << format_real(s.correlation.x2) << ','
       << format_real(s.min_eig) << '\n';
  }
}

std::vector<Sample> read_trajectory_csv(std::istream& is) {
  std::vector<std::string> header;
  const auto rows = read_rows(is, header);
  if (header.size() < 7) throw std::runtime_error("trajectory CSV header is too short");
  const std::size_t n = (header.size() - 7) / 2;
  std::vector<Sample> out;
  for (const auto& row : rows) {
    const auto f = split(row);
    if (f.size() != header.size()) throw std::runtime_error("trajectory CSV row has wrong arity");
    Sample s;
    s.step = static_cast<std::size_t>(std::stoull(f[0]));
    s.frame = f[1] == "reflected" ? Frame::reflected : Frame::direct;
    s.eps = parse_real(f[2]);
    s.weight_ratio = parse_real(f[3]);
    s.prices.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) s.prices[static_cast<Eigen::Index>(i)] = parse_real(f[4 + i]);
    for (std::size_t i = 0; i < n; ++i) s.areas.push_back(parse_real(f[4 + n + i]));
    s.correlation = {parse_real(f[4 + 2 * n]), parse_real(f[5 + 2 * n])};
    s.min_eig = parse_real(f[6 + 2 * n]);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<AreaError> relative_area_errors(const std::vector<double>& areas, double target) {
  std::vector<AreaError> out;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    out.push_back({i + 1, areas[i], (areas[i] - target) / target});
  }
  return out;
}

void write_errors_csv(std::ostream& os, const std::vector<AreaError>& errors) {
  os << "atom,area,relative_error,relative_error_pct\n";
  for (const auto& e : errors) {
    os << e.atom << ',' << format_real(e.area) << ',' << format_real(e.relative_error) << ','
       << format_percent(e.relative_error) << '\n';
  }
}

std::vector<AreaError> read_errors_csv(std::istream& is) {
  std::vector<std::string> header;
  std::vector<AreaError> out;
  for (const auto& row : read_rows(is, header)) {
    const auto f = split(row);
    if (f.size() != 4) throw std::runtime_error("errors CSV row has wrong arity");
    out.push_back({static_cast<std::size_t>(std::stoull(f[0])), parse_real(f[1]), parse_real(f[2])});
  }
  return out;
}

void write_correlation_csv(std::ostream& os, const std::vector<CorrelationRow>& rows) {
  os << "source,eps,weight_ratio,z1,z2\n";
  for (const auto& r : rows) {
    os << r.source << ',' << format_real(r.eps) << ',' << format_real(r.weight_ratio) << ','
       << format_real(r.z.x1) << ',' << format_real(r.z.x2) << '\n';
  }
}

std::vector<CorrelationRow> read_correlation_csv(std::istream& is) {
  std::vector<std::string> header;
  std::vector<CorrelationRow> out;
  for (const auto& row : read_rows(is, header)) {
    const auto f = split(row);
    if (f.size() != 5) throw std::runtime_error("correlation CSV row has wrong arity");
    out.push_back({f[0], parse_real(f[1]), parse_real(f[2]), {parse_real(f[3]), parse_real(f[4])}});
  }
  return out;
}

SvgViewport SvgViewport::fit(const ConvexPolygon& omega) {
  double lo1 = std::numeric_limits<double>::infinity();
  double hi1 = -lo1;
  for (const auto& v : omega.vertices()) {
    lo1 = std::min(lo1, v.x1);
    hi1 = std::max(hi1, v.x1);
  }
  const auto [lo2, hi2] = vertical_extent(omega);
  const double extent = std::max(hi1 - lo1, hi2 - lo2);
  return {lo1, lo2, kSize / extent};
}

Point SvgViewport::to_view(Point x) const {
  return {(x.x1 - min1) * scale, kSize - (x.x2 - min2) * scale};
}

Point SvgViewport::from_view(Point v) const {
  return {min1 + v.x1 / scale, min2 + (kSize - v.x2) / scale};
}

void write_svg(std::ostream& os, const std::vector<ConvexPolygon>& cells, const Atoms& atoms,
               const ConvexPolygon& omega, const std::string& title) {
  const SvgViewport view = SvgViewport::fit(omega);
  char buf[64];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
        "viewBox=\"0 0 800 800\">\n";
  if (!title.empty()) os << "<title>" << title << "</title>\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    // Golden-angle hue spacing keeps neighbouring indices distinguishable.
    const int hue = static_cast<int>(std::fmod(137.508 * static_cast<double>(i), 360.0));
    os << "<polygon id=\"cell-" << i + 1 << "\" fill=\"hsl(" << hue
       << ",60%,75%)\" stroke=\"black\" stroke-width=\"1\" points=\"";
    const auto& verts = cells[i].vertices();
    for (std::size_t k = 0; k < verts.size(); ++k) {
      const Point v = view.to_view(verts[k]);
      std::snprintf(buf, sizeof buf, "%s%.6f,%.6f", k == 0 ? "" : " ", v.x1, v.x2);
      os << buf;
    }
    os << "\"/>\n";
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Point v = view.to_view(atoms[i]);
    std::snprintf(buf, sizeof buf, "cx=\"%.6f\" cy=\"%.6f\"", v.x1, v.x2);
    os << "<circle id=\"atom-" << i + 1 << "\" " << buf << " r=\"5\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace sdot::io
