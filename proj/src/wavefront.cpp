#include "microlab/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "microlab/fourier.hpp"

namespace microlab {

namespace {

void validate_probe(const Grid& g, const MicrolocalProbe& probe,
                    const DyadicPartition& P) {
  if (P.grid() != g)
    throw std::invalid_argument("probe: partition built on another grid");
  if (probe.width_cells < 8)
    throw std::invalid_argument("probe: window width >= 8 cells");
  if (probe.width_cells > g.n)
    throw std::invalid_argument("probe: window wider than the torus");
  if (probe.j_min < 3) throw std::invalid_argument("probe: j_min >= 3");
  if (probe.j_max > P.top_shell() - 1)
    throw std::invalid_argument("probe: j_max <= top shell - 1");
  if (probe.j_min > probe.j_max)
    throw std::invalid_argument("probe: empty shell range");
  double d = std::hypot(probe.direction[0],
                        g.dim == 2 ? probe.direction[1] : 0.0);
  if (d == 0.0) throw std::invalid_argument("probe: zero direction");
  if (g.dim == 1 && probe.direction[0] == 0.0)
    throw std::invalid_argument("probe: 1D direction is +-1");
}

// u, recentered by its window-weighted mean, times the smooth window
// centered at `center` with support diameter `width_cells` grid cells.
// Removing the weighted mean takes out the `const * window` term whose
// spectral tail scales with the local background level; without it a loud
// smooth background on one side of a front masks the jump earlier than a
// quiet one and skews the detected singular interval sideways.
SampledField apply_window(const SampledField& u, const double center[2],
                          int width_cells, double sharpness) {
  const Grid& g = u.grid();
  double radius = 0.5 * width_cells * g.spacing();
  std::vector<double> chi(g.size());
  double mass = 0.0;
  std::complex<double> mean(0.0, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double d;
    if (g.dim == 1) {
      d = torus_distance(u.coord(i, 0), center[0]);
    } else {
      double d0 = torus_distance(u.coord(i, 0), center[0]);
      double d1 = torus_distance(u.coord(i, 1), center[1]);
      d = std::hypot(d0, d1);
    }
    double c = DyadicPartition::profile_value(d / radius, sharpness);
    chi[i] = c;
    mass += c;
    mean += c * u.at(i);
  }
  if (mass > 0.0) mean /= mass;
  std::vector<std::complex<double>> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    w[i] = chi[i] == 0.0 ? 0.0 : chi[i] * (u.at(i) - mean);
  return SampledField(g, std::move(w), u.is_real() && mean.imag() == 0.0);
}

std::vector<double> cone_energies(const Spectrum& spec,
                                  const MicrolocalProbe& probe,
                                  const DyadicPartition& P) {
  const Grid& g = spec.grid();
  int count = probe.j_max - probe.j_min + 1;
  std::vector<double> acc(count, 0.0);
  double cos_aperture = std::cos(probe.aperture_deg * kTwoPi / 360.0);
  double dnorm = std::hypot(probe.direction[0],
                            g.dim == 2 ? probe.direction[1] : 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    int xi[2];
    spec.freq_of(i, xi);
    double rho = std::hypot(double(xi[0]), double(xi[1]));
    if (rho == 0.0) continue;
    if (g.dim == 1) {
      if (xi[0] * probe.direction[0] <= 0.0) continue;
    } else {
      double dot = (xi[0] * probe.direction[0] + xi[1] * probe.direction[1]) /
                   (rho * dnorm);
      if (dot < cos_aperture) continue;
    }
    double a2 = std::norm(spec.coeff()[i]);
    if (a2 == 0.0) continue;
    for (int j = probe.j_min; j <= probe.j_max; ++j) {
      double w = P.shell(j, i);
      acc[j - probe.j_min] += w * w * a2;
    }
  }
  double scale = std::pow(kTwoPi, -g.dim);
  for (double& e : acc) e = std::sqrt(scale * e);
  return acc;
}

ProbeVerdict classify_from_energies(const std::vector<double>& energies,
                                    int j_min, int dim, double floor,
                                    double s, double margin) {
  ProbeVerdict v;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    if (energies[k] > floor) {
      v.shells.push_back(j_min + int(k));
      v.log2_energy.push_back(std::log2(energies[k]));
    }
  }
  v.shells_used = int(v.shells.size());
  if (v.shells_used < 4) {
    v.verdict = WfClass::indeterminate;
    return v;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < v.shells_used; ++k) {
    double x = v.shells[k], y = v.log2_energy[k];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope =
      (v.shells_used * sxy - sx * sy) / (v.shells_used * sxx - sx * sx);
  v.s_star = -slope;
  v.sigma_star = v.s_star + 0.5 * dim;
  v.verdict = v.s_star < s - margin ? WfClass::singular : WfClass::regular;
  return v;
}

}  // namespace

std::vector<double> microlocal_energies(const SampledField& u,
                                        const MicrolocalProbe& probe,
                                        const DyadicPartition& P) {
  validate_probe(u.grid(), probe, P);
  SampledField w = apply_window(u, probe.center, probe.width_cells,
                                probe.window_sharpness);
  return cone_energies(forward_transform(w), probe, P);
}

ProbeVerdict wf_classify(const SampledField& u, double s,
                         const MicrolocalProbe& probe,
                         const DyadicPartition& P) {
  std::vector<double> energies = microlocal_energies(u, probe, P);
  double floor = 1e-13 * quadrature_l2(u);
  return classify_from_energies(energies, probe.j_min, u.grid().dim, floor, s,
                                probe.margin);
}

std::size_t WavefrontEstimate::singular_count() const {
  std::size_t c = 0;
  for (const auto& e : entries)
    if (e.verdict == WfClass::singular) ++c;
  return c;
}

std::size_t WavefrontEstimate::indeterminate_count() const {
  std::size_t c = 0;
  for (const auto& e : entries)
    if (e.verdict == WfClass::indeterminate) ++c;
  return c;
}

WavefrontEstimate wf_scan(const SampledField& u, double s,
                          const ProbeLatticeSpec& spec,
                          const DyadicPartition& P) {
  const Grid& g = u.grid();
  MicrolocalProbe probe;
  // Default window: n/32 cells but never narrower than 128 (the window's
  // own spectral lobe spans ~n/width lattice frequencies and must sit well
  // below the fitted shells), capped at a quarter of the torus on small
  // grids.
  probe.width_cells =
      spec.width_cells > 0
          ? spec.width_cells
          : std::min(std::max(g.n / 32, 128), std::max(g.n / 4, 8));
  probe.j_max = spec.j_max > 0 ? spec.j_max : P.top_shell() - 1;
  probe.j_min = spec.j_min > 0 ? spec.j_min : std::max(3, probe.j_max - 3);
  probe.aperture_deg = spec.aperture_deg;
  probe.window_sharpness = spec.window_sharpness;
  probe.margin = spec.margin;
  if (spec.stride < 1 || spec.stride > probe.width_cells / 2)
    throw std::invalid_argument("wf_scan: stride in [1, width/2]");
  validate_probe(g, probe, P);

  double floor = 1e-13 * quadrature_l2(u);

  WavefrontEstimate est;
  est.order_s = s;
  est.margin = probe.margin;
  est.stride = spec.stride;
  est.width_cells = probe.width_cells;
  est.j_min = probe.j_min;
  est.j_max = probe.j_max;

  std::vector<std::array<double, 2>> directions;
  if (g.dim == 1) {
    directions.push_back({1.0, 0.0});
    directions.push_back({-1.0, 0.0});
  } else {
    for (int a = 0; a < 8; ++a) {
      double th = kTwoPi * a / 8.0;
      directions.push_back({std::cos(th), std::sin(th)});
    }
  }

  auto scan_center = [&](const double center[2]) {
    probe.center[0] = center[0];
    probe.center[1] = center[1];
    SampledField w = apply_window(u, probe.center, probe.width_cells,
                                  probe.window_sharpness);
    Spectrum sw = forward_transform(w);
    for (const auto& dir : directions) {
      probe.direction[0] = dir[0];
      probe.direction[1] = dir[1];
      std::vector<double> energies = cone_energies(sw, probe, P);
      ProbeVerdict v = classify_from_energies(energies, probe.j_min, g.dim,
                                              floor, s, probe.margin);
      WavefrontEntry e;
      e.x0[0] = center[0];
      e.x0[1] = center[1];
      e.omega[0] = dir[0];
      e.omega[1] = dir[1];
      e.s_star = v.s_star;
      e.sigma_star = v.sigma_star;
      e.verdict = v.verdict;
      e.shells_used = v.shells_used;
      est.entries.push_back(e);
    }
  };

  if (g.dim == 1) {
    for (int c = 0; c < g.n; c += spec.stride) {
      double center[2] = {c * g.spacing(), 0.0};
      scan_center(center);
    }
  } else {
    for (int c0 = 0; c0 < g.n; c0 += spec.stride)
      for (int c1 = 0; c1 < g.n; c1 += spec.stride) {
        double center[2] = {c0 * g.spacing(), c1 * g.spacing()};
        scan_center(center);
      }
  }
  return est;
}

std::vector<SingularCluster> singular_clusters(const WavefrontEstimate& est,
                                               const Grid& g, int gap_cells) {
  if (g.dim != 1)
    throw std::invalid_argument("singular_clusters: 1D scans only");
  // Pool the singular centers of both directions, in cell units.
  std::vector<double> cells;
  for (const auto& e : est.entries)
    if (e.verdict == WfClass::singular) cells.push_back(e.x0[0] / g.spacing());
  if (cells.empty()) return {};
  std::sort(cells.begin(), cells.end());

  // Split the sorted circle of hits at gaps wider than gap_cells.
  std::vector<std::vector<double>> groups;
  groups.push_back({cells[0]});
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i] - cells[i - 1] > gap_cells) groups.emplace_back();
    groups.back().push_back(cells[i]);
  }
  // Wrap-around: the last group may connect to the first through 0.
  if (groups.size() > 1) {
    double wrap_gap = cells.front() + g.n - cells.back();
    if (wrap_gap <= gap_cells) {
      for (double c : groups.front()) groups.back().push_back(c + g.n);
      groups.erase(groups.begin());
    }
  }

  std::vector<SingularCluster> out;
  for (const auto& grp : groups) {
    SingularCluster c;
    c.hits = int(grp.size());
    double sum = 0.0;
    for (double v : grp) sum += v;
    double mean = sum / grp.size();
    double lo = *std::min_element(grp.begin(), grp.end());
    double hi = *std::max_element(grp.begin(), grp.end());
    c.extent_cells = hi - lo;
    double cell = std::fmod(mean, double(g.n));
    if (cell < 0) cell += g.n;
    c.centroid = cell * g.spacing();
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const SingularCluster& a, const SingularCluster& b) {
              return a.centroid < b.centroid;
            });
  return out;
}

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
const char* class_name(WfClass c) {
  switch (c) {
    case WfClass::regular: return "regular";
    case WfClass::singular: return "singular";
    default: return "indeterminate";
  }
}
}  // namespace

std::string wavefront_json(const WavefrontEstimate& est) {
  std::string out = "{\n";
  out += "  \"order_s\": " + fmt(est.order_s) + ",\n";
  out += "  \"margin\": " + fmt(est.margin) + ",\n";
  out += "  \"stride\": " + std::to_string(est.stride) + ",\n";
  out += "  \"width_cells\": " + std::to_string(est.width_cells) + ",\n";
  out += "  \"shell_range\": [" + std::to_string(est.j_min) + ", " +
         std::to_string(est.j_max) + "],\n";
  out += "  \"entries\": [";
  for (std::size_t i = 0; i < est.entries.size(); ++i) {
    const auto& e = est.entries[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"x0\": " + fmt(e.x0[0]);
    out += ", \"x1\": " + fmt(e.x0[1]);
    out += ", \"omega\": [" + fmt(e.omega[0]) + ", " + fmt(e.omega[1]) + "]";
    out += ", \"s_star\": " + fmt(e.s_star);
    out += ", \"sigma_star\": " + fmt(e.sigma_star);
    out += std::string(", \"classified\": \"") + class_name(e.verdict) + "\"";
    out += ", \"shells\": " + std::to_string(e.shells_used) + "}";
  }
  out += est.entries.empty() ? "],\n" : "\n  ],\n";
  out += "  \"singular\": " + std::to_string(est.singular_count()) + ",\n";
  out += "  \"indeterminate\": " + std::to_string(est.indeterminate_count()) +
         "\n}\n";
  return out;
}

std::string wavefront_svg(const WavefrontEstimate& est, const Grid& g) {
  if (g.dim != 1)
    throw std::invalid_argument("wavefront_svg: 1D scans only");
  const int width = 800, row = 40, pad = 20;
  int height = 2 * row + 3 * pad;
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      std::to_string(width) + "\" height=\"" + std::to_string(height) +
      "\" viewBox=\"0 0 " + std::to_string(width) + " " +
      std::to_string(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& e : est.entries) {
    double x = e.x0[0] / kTwoPi * (width - 2 * pad) + pad;
    int y = e.omega[0] > 0 ? pad : pad * 2 + row;
    double cell_w = double(est.stride) / g.n * (width - 2 * pad);
    std::string fill = "#ffffff";
    if (e.verdict == WfClass::singular) {
      fill = "#d62728";
    } else if (e.verdict == WfClass::regular) {
      // Darker = rougher: map s* in [0, 4] to a gray ramp.
      double t = std::clamp(e.s_star / 4.0, 0.0, 1.0);
      int level = int(std::lround(140 + 100 * t));
      char buf[16];
      std::snprintf(buf, sizeof buf, "#%02x%02x%02x", level, level, level);
      fill = buf;
    }
    svg += "<rect x=\"" + fmt(x) + "\" y=\"" + std::to_string(y) +
           "\" width=\"" + fmt(cell_w) + "\" height=\"" + std::to_string(row) +
           "\" fill=\"" + fill + "\"/>\n";
  }
  svg += "<text x=\"4\" y=\"" + std::to_string(pad + row / 2) +
         "\" font-size=\"10\">+</text>\n";
  svg += "<text x=\"4\" y=\"" + std::to_string(2 * pad + row + row / 2) +
         "\" font-size=\"10\">-</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace microlab
