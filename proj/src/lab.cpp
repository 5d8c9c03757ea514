#include "microlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "microlab/flow.hpp"
#include "microlab/fourier.hpp"

namespace microlab {

namespace {

using njson = nlohmann::ordered_json;

double wrap_angle(double x) {
  double w = std::fmod(x, kTwoPi);
  return w < 0.0 ? w + kTwoPi : w;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

SynthKind parse_synth_kind(const std::string& s) {
  if (s == "lacunary") return SynthKind::lacunary;
  if (s == "piecewise_polynomial" || s == "spline")
    return SynthKind::piecewise_polynomial;
  if (s == "mollified_noise" || s == "noise") return SynthKind::mollified_noise;
  throw std::invalid_argument("scenario: unknown coefficient kind '" + s + "'");
}

const char* synth_kind_name(SynthKind k) {
  switch (k) {
    case SynthKind::lacunary: return "lacunary";
    case SynthKind::piecewise_polynomial: return "piecewise_polynomial";
    default: return "mollified_noise";
  }
}

WaveInitSpec::Kind parse_init_kind(const std::string& s) {
  if (s == "step") return WaveInitSpec::Kind::step;
  if (s == "cusp") return WaveInitSpec::Kind::cusp;
  if (s == "smooth") return WaveInitSpec::Kind::smooth;
  throw std::invalid_argument("scenario: unknown init type '" + s + "'");
}

const char* init_kind_name(WaveInitSpec::Kind k) {
  switch (k) {
    case WaveInitSpec::Kind::step: return "step";
    case WaveInitSpec::Kind::cusp: return "cusp";
    default: return "smooth";
  }
}

njson scenario_json(const WaveScenario& sc) {
  njson j;
  j["grid"] = {{"n", sc.n}};
  j["coeff"] = {{"kind", synth_kind_name(sc.coeff.kind)},
                {"r", sc.coeff.r},
                {"seed", sc.coeff.seed},
                {"a_min", sc.coeff.a_min},
                {"amplitude", sc.coeff.amplitude}};
  j["init"] = {{"type", init_kind_name(sc.init.kind)},
               {"gamma", sc.init.gamma},
               {"x0", sc.init.x0}};
  j["time"] = {{"T", sc.T}, {"dt", sc.dt}, {"cfl_fraction", sc.cfl_fraction}};
  j["probe"] = {{"h", sc.probe.width_cells},
                {"stride", sc.probe.stride},
                {"jmin", sc.probe.j_min},
                {"jmax", sc.probe.j_max},
                {"margin", sc.probe.margin}};
  j["query"] = {{"s", sc.query_s}};
  j["snapshots"] = sc.snapshots;
  j["thresholds"] = {{"mismatch_cells", sc.mismatch_tol_cells},
                     {"confinement_cells", sc.confinement_tol_cells}};
  return j;
}

}  // namespace

WaveScenario scenario_from_json(const std::string& text) {
  njson j = njson::parse(text);
  WaveScenario sc;
  if (j.contains("grid")) sc.n = j["grid"].value("n", sc.n);
  if (j.contains("coeff")) {
    const auto& c = j["coeff"];
    if (c.contains("kind"))
      sc.coeff.kind = parse_synth_kind(c["kind"].get<std::string>());
    sc.coeff.r = c.value("r", sc.coeff.r);
    sc.coeff.seed = c.value("seed", sc.coeff.seed);
    sc.coeff.a_min = c.value("a_min", sc.coeff.a_min);
    sc.coeff.amplitude = c.value("amplitude", sc.coeff.amplitude);
  }
  if (j.contains("init")) {
    const auto& c = j["init"];
    if (c.contains("type"))
      sc.init.kind = parse_init_kind(c["type"].get<std::string>());
    sc.init.gamma = c.value("gamma", sc.init.gamma);
    sc.init.x0 = c.value("x0", sc.init.x0);
  }
  if (j.contains("time")) {
    const auto& c = j["time"];
    sc.T = c.value("T", sc.T);
    sc.dt = c.value("dt", sc.dt);
    sc.cfl_fraction = c.value("cfl_fraction", sc.cfl_fraction);
  }
  if (j.contains("probe")) {
    const auto& c = j["probe"];
    sc.probe.width_cells = c.value("h", sc.probe.width_cells);
    sc.probe.stride = c.value("stride", sc.probe.stride);
    sc.probe.j_min = c.value("jmin", sc.probe.j_min);
    sc.probe.j_max = c.value("jmax", sc.probe.j_max);
    sc.probe.margin = c.value("margin", sc.probe.margin);
  }
  if (j.contains("query")) sc.query_s = j["query"].value("s", sc.query_s);
  if (j.contains("snapshots")) sc.snapshots = j["snapshots"].get<int>();
  if (j.contains("thresholds")) {
    const auto& c = j["thresholds"];
    sc.mismatch_tol_cells = c.value("mismatch_cells", sc.mismatch_tol_cells);
    sc.confinement_tol_cells =
        c.value("confinement_cells", sc.confinement_tol_cells);
  }
  return sc;
}

std::string scenario_to_json(const WaveScenario& sc) {
  return scenario_json(sc).dump(2) + "\n";
}

WaveInputs build_inputs(const WaveScenario& sc) {
  if (sc.T <= 0.0) throw std::invalid_argument("scenario: T > 0");
  if (sc.snapshots < 1) throw std::invalid_argument("scenario: snapshots >= 1");
  if (sc.coeff.a_min <= 0.0)
    throw std::invalid_argument("scenario: a_min > 0");
  if (sc.coeff.amplitude < 0.0)
    throw std::invalid_argument("scenario: amplitude >= 0");
  if (sc.cfl_fraction <= 0.0 || sc.cfl_fraction > 0.5)
    throw std::invalid_argument("scenario: cfl_fraction in (0, 0.5]");

  WaveInputs in;
  in.g = Grid::make(1, sc.n);
  const Grid& g = in.g;

  std::vector<std::complex<double>> av(g.size(), sc.coeff.a_min);
  if (sc.coeff.amplitude > 0.0) {
    DyadicPartition P = DyadicPartition::build(g);
    RegularityBudget budget;
    budget.r = sc.coeff.r;
    budget.scale = 1.0;
    budget.seed = sc.coeff.seed;
    budget.kind = sc.coeff.kind;
    SampledField rough = synthesize_regular(g, budget, P);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double v = rough.at(i).real();
      av[i] = sc.coeff.a_min + sc.coeff.amplitude * v * v;
    }
  }
  in.a = SampledField(g, std::move(av), true);

  std::vector<std::complex<double>> u0(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double y = wrap_angle(g.spacing() * double(i) - sc.init.x0);
    switch (sc.init.kind) {
      case WaveInitSpec::Kind::step:
        // Half-open convention: the sample on the jump takes the upper
        // value, which keeps the discrete spectrum on the 1/|xi| line all
        // the way to the Nyquist shell.
        u0[i] = (3.141592653589793 - y) / kTwoPi;
        break;
      case WaveInitSpec::Kind::cusp:
        if (sc.init.gamma <= 0.0)
          throw std::invalid_argument("scenario: cusp exponent > 0");
        u0[i] = std::pow(std::fabs(2.0 * std::sin(0.5 * y)), sc.init.gamma);
        break;
      case WaveInitSpec::Kind::smooth: {
        double d = torus_distance(g.spacing() * double(i), sc.init.x0);
        u0[i] = DyadicPartition::profile_value(d / 1.5, 4.0);
        break;
      }
    }
  }
  in.u0 = SampledField(g, std::move(u0), true);
  in.v0 = SampledField::zeros(g);
  in.v0.set_real_tag(true);

  double a_max = 0.0;
  for (const auto& v : in.a.values()) a_max = std::max(a_max, v.real());
  double stability = 0.5 * g.spacing() / std::sqrt(a_max);
  double target = sc.dt > 0.0
                      ? sc.dt
                      : sc.cfl_fraction * g.spacing() / std::sqrt(a_max);
  if (target > stability * (1.0 + 1e-12))
    throw std::invalid_argument(
        "scenario: CFL violation, dt must be <= 0.5 spacing / sqrt(max a)");
  // Round the step count up to a multiple of the snapshot count so every
  // snapshot time is hit exactly; the actual dt only shrinks.
  long per = std::lround(std::ceil(sc.T / target / sc.snapshots));
  in.steps = int(per * sc.snapshots);
  in.dt = sc.T / in.steps;
  in.tau = sc.query_s - sc.coeff.r;
  return in;
}

std::vector<WaveSnapshot> wave_solve(const WaveInputs& in, int snapshots) {
  const Grid& g = in.g;
  if (snapshots < 1 || in.steps % snapshots != 0)
    throw std::invalid_argument("wave_solve: steps must divide into snapshots");
  double a_max = 0.0;
  for (const auto& v : in.a.values()) {
    if (v.real() <= 0.0)
      throw std::invalid_argument("wave_solve: coefficient must be positive");
    a_max = std::max(a_max, v.real());
  }
  if (in.dt > 0.5 * g.spacing() / std::sqrt(a_max) * (1.0 + 1e-12))
    throw std::invalid_argument("wave_solve: CFL violation");

  const double dt = in.dt;
  auto apply_l = [&](const SampledField& u) {
    SampledField ux = spectral_derivative(u, {1, 0});
    std::vector<std::complex<double>> flux(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      flux[i] = in.a.at(i) * ux.at(i);
    SampledField f(g, std::move(flux), u.is_real() && in.a.is_real());
    return spectral_derivative(f, {1, 0});
  };
  auto energy_of = [&](const SampledField& u, const SampledField& ut) {
    SampledField ux = spectral_derivative(u, {1, 0});
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      e += std::norm(ut.at(i)) + in.a.at(i).real() * std::norm(ux.at(i));
    return 0.5 * g.spacing() * e;
  };
  auto check_finite = [&](const SampledField& u, int step) {
    for (const auto& v : u.values())
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::runtime_error("wave_solve: non-finite value at step " +
                                 std::to_string(step) + " (t = " +
                                 fmt(step * dt) + ")");
  };

  std::vector<WaveSnapshot> out;
  out.push_back({0.0, in.u0, in.v0, energy_of(in.u0, in.v0)});

  int per = in.steps / snapshots;
  SampledField u_prev = in.u0;
  SampledField lu = apply_l(in.u0);
  std::vector<std::complex<double>> first(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    first[i] = in.u0.at(i) + dt * in.v0.at(i) + 0.5 * dt * dt * lu.at(i);
  SampledField u_cur(g, std::move(first), in.u0.is_real());

  for (int n = 1; n <= in.steps; ++n) {
    SampledField lun = apply_l(u_cur);
    std::vector<std::complex<double>> next(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      next[i] = 2.0 * u_cur.at(i) - u_prev.at(i) + dt * dt * lun.at(i);
    SampledField u_next(g, std::move(next), u_cur.is_real());
    if (!std::isfinite(u_next.at(0).real())) check_finite(u_next, n + 1);
    if (n % per == 0) {
      // Snapshot of u^n with the centered velocity (u^{n+1} - u^{n-1}) / 2dt.
      std::vector<std::complex<double>> vel(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        vel[i] = (u_next.at(i) - u_prev.at(i)) / (2.0 * dt);
      SampledField ut(g, std::move(vel), u_cur.is_real());
      check_finite(u_cur, n);
      out.push_back({n * dt, u_cur, ut, 0.0});
      out.back().energy = energy_of(u_cur, ut);
    }
    u_prev = std::move(u_cur);
    u_cur = std::move(u_next);
  }
  return out;
}

std::vector<WaveSnapshot> wave_solve(const WaveScenario& sc) {
  return wave_solve(build_inputs(sc), sc.snapshots);
}

PropagationReport experiment_propagation(const WaveScenario& sc) {
  return experiment_propagation(sc, build_inputs(sc));
}

PropagationReport experiment_propagation(const WaveScenario& sc,
                                         const WaveInputs& in) {
  const Grid& g = in.g;
  std::vector<WaveSnapshot> snaps = wave_solve(in, sc.snapshots);
  DyadicPartition P = DyadicPartition::build(g);
  auto ray_p = ray_trace_wave(in.a, sc.init.x0, +1, sc.T);
  auto ray_m = ray_trace_wave(in.a, sc.init.x0, -1, sc.T);
  auto ray_at = [](const std::vector<std::pair<double, double>>& r, double t) {
    if (t <= r.front().first) return r.front().second;
    if (t >= r.back().first) return r.back().second;
    std::size_t k = 1;
    while (r[k].first < t) ++k;
    double u = (t - r[k - 1].first) / (r[k].first - r[k - 1].first);
    return r[k - 1].second + u * (r[k].second - r[k - 1].second);
  };

  PropagationReport rep;
  rep.scenario = sc;
  rep.dt = in.dt;
  rep.steps = in.steps;
  rep.tau = in.tau;
  // The query order s sits in the propagation window for the source Pu; the
  // conclusion bounds the wavefront of u one order higher, so the scans run
  // at s + 1.  Scanning u at s itself would classify the step solution
  // regular everywhere and the experiment would pass vacuously.
  rep.wf_order = sc.query_s + 1.0;

  long total_entries = 0, total_indet = 0;
  double e0 = snaps.front().energy;
  for (const WaveSnapshot& snap : snaps) {
    WavefrontEstimate est = wf_scan(snap.u, rep.wf_order, sc.probe, P);
    SnapshotRecord r;
    r.t = snap.t;
    r.energy = snap.energy;
    r.ray_plus = wrap_angle(ray_at(ray_p, snap.t));
    r.ray_minus = wrap_angle(ray_at(ray_m, snap.t));
    r.entries = int(est.entries.size());
    r.singular = int(est.singular_count());
    r.indeterminate = int(est.indeterminate_count());
    total_entries += r.entries;
    total_indet += r.indeterminate;
    for (const auto& e : est.entries)
      if (e.verdict == WfClass::singular) {
        r.singular_centers.push_back(e.x0[0]);
        double cells = std::min(torus_distance(e.x0[0], r.ray_plus),
                                torus_distance(e.x0[0], r.ray_minus)) /
                       g.spacing();
        // A singular window localizes only up to its own support, so the
        // confinement distance is measured from the window edge.
        double edge = std::max(0.0, cells - 0.5 * est.width_cells);
        if (edge > sc.confinement_tol_cells) ++rep.confinement_violations;
      }

    for (const SingularCluster& c :
         singular_clusters(est, g, 2 * est.stride)) {
      ClusterRecord cr;
      cr.t = snap.t;
      cr.centroid = c.centroid;
      cr.extent_cells = c.extent_cells;
      cr.hits = c.hits;
      // Two fronts closer than one window merge into a single over-wide
      // cluster whose centroid is meaningless; flag it instead of scoring.
      cr.resolved = c.extent_cells <= est.width_cells + 8.0 * est.stride;
      cr.mismatch_cells = std::min(torus_distance(c.centroid, r.ray_plus),
                                   torus_distance(c.centroid, r.ray_minus)) /
                          g.spacing();
      if (cr.resolved)
        rep.max_mismatch_cells =
            std::max(rep.max_mismatch_cells, cr.mismatch_cells);
      else
        ++rep.unresolved_clusters;
      r.clusters.push_back(cr);
    }
    if (e0 > 0.0)
      rep.max_energy_drift = std::max(rep.max_energy_drift,
                                      std::fabs(snap.energy - e0) / e0);
    rep.snapshots.push_back(std::move(r));
  }

  rep.indeterminate_rate =
      total_entries ? double(total_indet) / double(total_entries) : 0.0;
  if (rep.indeterminate_rate > 0.2)
    throw std::runtime_error(
        "experiment_propagation: indeterminate probe rate " +
        fmt(rep.indeterminate_rate) +
        " exceeds 0.2; widen the window or lower the shell range");

  rep.mismatch_pass = rep.max_mismatch_cells <= sc.mismatch_tol_cells;
  rep.confinement_pass = rep.confinement_violations == 0;
  return rep;
}

std::string report_json(const PropagationReport& rep) {
  njson j;
  j["schema"] = rep.schema;
  j["config"] = scenario_json(rep.scenario);
  j["dt"] = rep.dt;
  j["steps"] = rep.steps;
  j["tau"] = rep.tau;
  j["u_apriori_order"] = rep.tau + 2.0;
  j["wf_order"] = rep.wf_order;
  j["max_mismatch_cells"] = rep.max_mismatch_cells;
  j["unresolved_clusters"] = rep.unresolved_clusters;
  j["confinement_violations"] = rep.confinement_violations;
  j["max_energy_drift"] = rep.max_energy_drift;
  j["indeterminate_rate"] = rep.indeterminate_rate;
  j["mismatch_pass"] = rep.mismatch_pass;
  j["confinement_pass"] = rep.confinement_pass;
  j["passed"] = rep.passed();
  j["snapshots"] = njson::array();
  for (const auto& s : rep.snapshots) {
    njson js;
    js["t"] = s.t;
    js["energy"] = s.energy;
    js["ray_plus"] = s.ray_plus;
    js["ray_minus"] = s.ray_minus;
    js["entries"] = s.entries;
    js["singular"] = s.singular;
    js["indeterminate"] = s.indeterminate;
    js["singular_centers"] = s.singular_centers;
    js["clusters"] = njson::array();
    for (const auto& c : s.clusters) {
      js["clusters"].push_back({{"centroid", c.centroid},
                                {"extent_cells", c.extent_cells},
                                {"hits", c.hits},
                                {"resolved", c.resolved},
                                {"mismatch_cells", c.mismatch_cells}});
    }
    j["snapshots"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

std::string report_csv(const PropagationReport& rep) {
  std::string out =
      "t,ray_plus,ray_minus,energy,singular,indeterminate,clusters,"
      "centroids\n";
  for (const auto& s : rep.snapshots) {
    out += fmt(s.t) + "," + fmt(s.ray_plus) + "," + fmt(s.ray_minus) + "," +
           fmt(s.energy) + "," + std::to_string(s.singular) + "," +
           std::to_string(s.indeterminate) + "," +
           std::to_string(s.clusters.size()) + ",";
    for (std::size_t i = 0; i < s.clusters.size(); ++i)
      out += (i ? ";" : "") + fmt(s.clusters[i].centroid);
    out += "\n";
  }
  return out;
}

std::string report_svg(const PropagationReport& rep) {
  const double W = 860, H = 520, L = 50, R = 20, T = 20, B = 40;
  double pw = W - L - R, ph = H - T - B;
  double t_max = rep.scenario.T > 0 ? rep.scenario.T : 1.0;
  auto px = [&](double x) { return L + x / kTwoPi * pw; };
  auto py = [&](double t) { return T + t / t_max * ph; };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" "
      "height=\"520\" viewBox=\"0 0 860 520\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fmt(L) + "\" y=\"" + fmt(T) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";

  // Ray world-lines, split where they wrap around the seam.
  auto polyline = [&](bool plus, const char* color) {
    std::string pts;
    double last = -1.0;
    for (const auto& s : rep.snapshots) {
      double x = plus ? s.ray_plus : s.ray_minus;
      if (last >= 0.0 && std::fabs(x - last) > 3.141592653589793) {
        if (!pts.empty())
          svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                 "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        pts.clear();
      }
      pts += fmt(px(x)) + "," + fmt(py(s.t)) + " ";
      last = x;
    }
    if (!pts.empty())
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  };
  polyline(true, "#1f77b4");
  polyline(false, "#2ca02c");

  for (const auto& s : rep.snapshots) {
    for (double c : s.singular_centers)
      svg += "<circle cx=\"" + fmt(px(c)) + "\" cy=\"" + fmt(py(s.t)) +
             "\" r=\"2\" fill=\"#d62728\" fill-opacity=\"0.5\"/>\n";
    for (const auto& c : s.clusters)
      svg += "<rect x=\"" + fmt(px(c.centroid) - 3) + "\" y=\"" +
             fmt(py(c.t) - 3) + "\" width=\"6\" height=\"6\" fill=\"none\"" +
             " stroke=\"" + (c.resolved ? "#000000" : "#ff7f0e") +
             "\" stroke-width=\"1\"/>\n";
  }
  svg += "<text x=\"" + fmt(L) + "\" y=\"" + fmt(H - 12) +
         "\" font-size=\"12\">x over [0, 2pi); rays blue/green, singular "
         "probes red, cluster centroids boxed</text>\n";
  svg += "</svg>\n";
  return svg;
}

void emit_report(const PropagationReport& rep, const std::string& out_dir,
                 double runtime_seconds) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& body) {
    fs::path p = fs::path(out_dir) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("emit_report: cannot open " + p.string());
    f << body;
    if (!f) throw std::runtime_error("emit_report: write failed: " + p.string());
  };
  write("report.json", report_json(rep));
  write("timeseries.csv", report_csv(rep));
  write("spacetime.svg", report_svg(rep));
  njson meta;
  meta["schema"] = rep.schema;
  meta["runtime_seconds"] = runtime_seconds;
  write("run_meta.json", meta.dump(2) + "\n");
}

}  // namespace microlab
